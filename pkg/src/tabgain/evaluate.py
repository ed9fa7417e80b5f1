"""Stratified k-fold cross-validation, confusion-matrix metrics, ROC/AUC,
and the cross-validated model evaluator.

Headline metrics are computed on the pooled out-of-fold score vector; per-fold
values with mean and sample standard deviation are reported alongside. Both
positive-class orientations are reported, since accuracy-style metrics depend
on which target value counts as positive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    LengthMismatchError,
    MissingCellsError,
    SchemaMismatchError,
    SingleClassLabelsError,
    TooFewInstancesError,
)
from .models import DISPLAY_NAMES, predict_scores, train_model
from .preprocess import apply_minmax, fit_minmax

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignment: np.ndarray  # row index -> fold id in 0..k-1
    seed: int


def stratified_folds(labels, k, seed):
    """Deal each class's shuffled rows round-robin into k folds.

    The deal position continues across classes, so fold sizes and per-fold
    class counts both differ by at most one. Deterministic given the seed:
    classes are visited in sorted order, each shuffled by the seeded RNG.
    """
    labels = np.asarray(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    n = labels.shape[0]
    assignment = np.full(n, -1, dtype=np.int64)
    rng = np.random.default_rng(seed)
    cursor = 0
    for cls in np.unique(labels):
        idx = np.nonzero(labels == cls)[0]
        if idx.shape[0] < k:
            raise TooFewInstancesError(
                f"class {cls!r} has {idx.shape[0]} rows, fewer than k={k}"
            )
        perm = rng.permutation(idx)
        assignment[perm] = (cursor + np.arange(perm.shape[0])) % k
        cursor = (cursor + perm.shape[0]) % k
    return FoldPlan(k, assignment, seed)


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn


def confusion(scores, labels, positive, threshold):
    """Count the four outcomes under the score >= threshold labeling rule."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape[0] != labels.shape[0]:
        raise LengthMismatchError(
            f"{scores.shape[0]} scores vs {labels.shape[0]} labels"
        )
    predicted = scores >= threshold
    actual = labels == positive
    tp = int(np.sum(predicted & actual))
    fp = int(np.sum(predicted & ~actual))
    fn = int(np.sum(~predicted & actual))
    tn = int(np.sum(~predicted & ~actual))
    return ConfusionMatrix(tp, fp, tn, fn)


@dataclass(frozen=True)
class MetricSet:
    precision: float
    recall: float
    f1: float
    accuracy: float
    degenerate: tuple  # names of metrics whose denominator was zero


def metrics(conf):
    """Precision, recall, F1 and accuracy; 0/0 becomes 0.0 and is flagged."""
    flags = []

    def ratio(num, den, name):
        if den == 0:
            flags.append(name)
            return 0.0
        return num / den

    precision = ratio(conf.tp, conf.tp + conf.fp, "precision")
    recall = ratio(conf.tp, conf.tp + conf.fn, "recall")
    f1 = ratio(2.0 * precision * recall, precision + recall, "f1")
    accuracy = ratio(conf.tp + conf.tn, conf.total, "accuracy")
    return MetricSet(precision, recall, f1, accuracy, tuple(flags))


@dataclass(frozen=True)
class RocCurve:
    points: tuple  # (false-positive rate, true-positive rate), both nondecreasing


def roc_auc(scores, labels, positive):
    """ROC curve and trapezoidal AUC with half-credit for score ties.

    Sweeping thresholds over the distinct scores in descending order gives one
    curve point per tie group; the trapezoid over a group awards tied pairs
    half credit, so the area equals (concordant + 0.5 * tied) / (P * N).
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape[0] != labels.shape[0]:
        raise LengthMismatchError(
            f"{scores.shape[0]} scores vs {labels.shape[0]} labels"
        )
    actual = labels == positive
    n = scores.shape[0]
    p = int(actual.sum())
    q = n - p
    if p == 0 or q == 0:
        raise SingleClassLabelsError("AUC needs both classes among the labels")
    order = np.argsort(-scores, kind="stable")
    aa = actual[order]
    ss = scores[order]
    ends = np.append(np.nonzero(np.diff(ss))[0] + 1, n)  # tie-group ends
    ctp = np.cumsum(aa)[ends - 1]
    cfp = ends - ctp
    tp_prev = np.concatenate(([0], ctp[:-1]))
    fp_prev = np.concatenate(([0], cfp[:-1]))
    area2 = int(np.sum((cfp - fp_prev) * (ctp + tp_prev)))
    points = [(0.0, 0.0)]
    points.extend((fp / q, tp / p) for fp, tp in zip(cfp, ctp))
    return RocCurve(tuple(points)), area2 / (2.0 * p * q)


@dataclass(frozen=True)
class OrientedMetrics:
    """Pooled metrics for one choice of positive class."""

    positive: str
    auc: float
    precision: float
    recall: float
    f1: float
    accuracy: float
    tp: int
    fp: int
    tn: int
    fn: int
    degenerate: tuple


@dataclass(frozen=True)
class ModelReport:
    algorithm: str
    display_name: str
    pooled: OrientedMetrics
    pooled_flipped: OrientedMetrics
    per_fold: tuple  # dicts with keys fold, auc, precision, recall, f1, accuracy
    fold_mean: dict
    fold_sd: dict


@dataclass(frozen=True)
class EvalReport:
    models: tuple
    k: int
    seed: int
    positive: str
    negative: str
    n_rows: int
    threshold: float


def _oriented(scores, y, positive_name, threshold):
    conf = confusion(scores, y, 1, threshold)
    mset = metrics(conf)
    _, auc = roc_auc(scores, y, 1)
    return OrientedMetrics(
        positive_name,
        auc,
        mset.precision,
        mset.recall,
        mset.f1,
        mset.accuracy,
        conf.tp,
        conf.fp,
        conf.tn,
        conf.fn,
        mset.degenerate,
    )


FOLD_METRICS = ("auc", "precision", "recall", "f1", "accuracy")


def evaluate_cv(table, specs, k, seed, positive, threshold=DEFAULT_THRESHOLD):
    """Cross-validate each spec on the table and assemble an EvalReport.

    Per fold: min-max normalization is fitted on the training rows only and
    applied to both sides, the model is trained on the training side, and the
    held-out rows are scored. Pooled out-of-fold scores give the headline
    metrics; per-fold metrics are reported with mean and sample sd.
    """
    target = table.require_target()
    tcol = table.column(target)
    if tcol.missing.any():
        raise MissingCellsError(f"target {target!r} has missing cells")
    if positive not in tcol.categories:
        raise SchemaMismatchError(
            f"positive class {positive!r} is not a value of target {target!r}"
        )
    pos_code = tcol.categories.index(positive)
    others = [c for c in tcol.categories if c != positive]
    negative = others[0] if others else f"not-{positive}"
    y_all = (tcol.codes == pos_code).astype(np.uint8)

    plan = stratified_folds(tcol.codes, k, seed)
    n = table.n_rows
    reports = []
    for spec in specs:
        pooled = np.empty(n, dtype=np.float64)
        per_fold = []
        for fold in range(k):
            test_mask = plan.assignment == fold
            train_idx = np.nonzero(~test_mask)[0]
            test_idx = np.nonzero(test_mask)[0]
            train_t = table.take(train_idx)
            test_t = table.take(test_idx)
            nmap = fit_minmax(train_t)
            model = train_model(apply_minmax(train_t, nmap), spec, positive)
            fold_scores = predict_scores(model, apply_minmax(test_t, nmap))
            pooled[test_idx] = fold_scores
            y_fold = y_all[test_idx]
            conf = confusion(fold_scores, y_fold, 1, threshold)
            mset = metrics(conf)
            _, auc = roc_auc(fold_scores, y_fold, 1)
            per_fold.append(
                {
                    "fold": fold,
                    "auc": auc,
                    "precision": mset.precision,
                    "recall": mset.recall,
                    "f1": mset.f1,
                    "accuracy": mset.accuracy,
                }
            )
        fold_mean = {}
        fold_sd = {}
        for key in FOLD_METRICS:
            values = np.array([row[key] for row in per_fold])
            fold_mean[key] = float(values.mean())
            fold_sd[key] = float(values.std(ddof=1))
        reports.append(
            ModelReport(
                spec.algorithm,
                DISPLAY_NAMES[spec.algorithm],
                _oriented(pooled, y_all, positive, threshold),
                _oriented(1.0 - pooled, 1 - y_all, negative, threshold),
                tuple(per_fold),
                fold_mean,
                fold_sd,
            )
        )
    return EvalReport(tuple(reports), k, seed, positive, negative, n, threshold)
