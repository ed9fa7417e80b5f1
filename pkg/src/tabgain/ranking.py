"""Entropy, information gain, and information-gain feature ranking.

Scores are in bits (log base 2). Numeric features are discretized with
equal-frequency bins before gain is computed; categorical features are used
as-is. Rankings order features by descending gain with ties broken by schema
column order.
"""

from dataclasses import dataclass
from math import log2

import numpy as np

from .errors import EmptyCountsError, MissingCellsError, NumericAttributeError
from .evaluate import stratified_folds
from .preprocess import apply_discretizer, fit_discretizer
from .table import CATEGORICAL

DEFAULT_BINS = 10


def entropy(counts):
    """Entropy in bits of a class-count vector, with 0*log2(0) = 0."""
    total = 0
    for c in counts:
        if c < 0:
            raise ValueError("class counts must be nonnegative")
        total += c
    if total == 0:
        raise EmptyCountsError("entropy of an empty count vector is undefined")
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * log2(p)
    return h


def _categorical_codes(table, name):
    col = table.column_schema(name)
    if col.kind != CATEGORICAL:
        raise NumericAttributeError(
            f"column {name!r} is numeric; discretize it before computing gain"
        )
    data = table.column(name)
    if data.missing.any():
        raise MissingCellsError(f"column {name!r} has missing cells")
    return data.codes, len(data.categories)


def conditional_entropy(table, attr, target):
    """Weighted entropy of the target within each category of attr."""
    a_codes, a_n = _categorical_codes(table, attr)
    t_codes, t_n = _categorical_codes(table, target)
    n = table.n_rows
    joint = np.bincount(a_codes * t_n + t_codes, minlength=a_n * t_n)
    joint = joint.reshape(a_n, t_n)
    h = 0.0
    for v in range(a_n):
        row = joint[v]
        n_v = int(row.sum())
        if n_v > 0:
            h += (n_v / n) * entropy([int(c) for c in row])
    return h


def information_gain(table, attr, target):
    """Reduction in target entropy from partitioning by attr, clamped to >= 0."""
    t_codes, t_n = _categorical_codes(table, target)
    counts = np.bincount(t_codes, minlength=t_n)
    g = entropy([int(c) for c in counts]) - conditional_entropy(table, attr, target)
    return g if g > 0.0 else 0.0


@dataclass(frozen=True)
class RankEntry:
    rank: int  # 1-based, no gaps
    feature: str
    score_bits: float


@dataclass(frozen=True)
class FeatureRanking:
    entries: tuple

    @property
    def ordered_features(self):
        return [e.feature for e in self.entries]


def _to_ranking(names, scores):
    # stable sort keeps schema order among exact ties
    order = sorted(range(len(names)), key=lambda i: -scores[i])
    entries = tuple(
        RankEntry(rank + 1, names[i], scores[i]) for rank, i in enumerate(order)
    )
    return FeatureRanking(entries)


def rank_features(table, bins=DEFAULT_BINS):
    """Rank all feature columns by information gain against the target.

    Numeric features are discretized (equal-frequency, fitted on this table)
    first. The table must have no missing cells.
    """
    target = table.require_target()
    disc = apply_discretizer(table, fit_discretizer(table, bins))
    names = disc.feature_names
    scores = [information_gain(disc, name, target) for name in names]
    return _to_ranking(names, scores)


def cross_validated_ranking(table, k, seed, bins=DEFAULT_BINS):
    """Rank features by mean information gain over k stratified training folds.

    Each fold's score is computed on the other k-1 folds' rows (the training
    side), with discretization refitted per fold; the final score is the
    arithmetic mean accumulated in fold order.
    """
    target = table.require_target()
    data = table.column(target)
    if data.missing.any():
        raise MissingCellsError(f"column {target!r} has missing cells")
    plan = stratified_folds(data.codes, k, seed)
    names = table.feature_names
    totals = [0.0] * len(names)
    for fold in range(k):
        train_rows = np.nonzero(plan.assignment != fold)[0]
        ranking = rank_features(table.take(train_rows), bins)
        by_name = {e.feature: e.score_bits for e in ranking.entries}
        for i, name in enumerate(names):
            totals[i] += by_name[name]
    means = [t / k for t in totals]
    return _to_ranking(names, means)
