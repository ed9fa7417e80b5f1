"""Hybrid naive Bayes: Gaussian numeric likelihoods, Laplace-smoothed
categorical likelihoods, unsmoothed class priors, log-space scoring.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyTableError, SingleClassTrainingError
from .table import NUMERIC

VAR_FLOOR = 1e-9


@dataclass(frozen=True)
class NaiveBayesParams:
    prior_counts: tuple  # (negative rows, positive rows)
    numeric: dict  # name -> {"mean": [m0, m1], "var": [v0, v1]}
    categorical: dict  # name -> 2 x K count matrix (list of two lists)


def fit_nb(columns, names, kinds, n_cats, labels):
    """Estimate priors and per-class likelihood parameters."""
    n = labels.shape[0]
    if n == 0:
        raise EmptyTableError("cannot train naive Bayes on zero rows")
    n1 = int(labels.sum())
    n0 = n - n1
    if n0 == 0 or n1 == 0:
        raise SingleClassTrainingError(
            "naive Bayes needs both classes in the training data"
        )
    masks = (labels == 0, labels == 1)
    numeric = {}
    categorical = {}
    for name, kind in zip(names, kinds):
        if kind == NUMERIC:
            means = []
            variances = []
            for mask in masks:
                vals = columns[name][mask]
                means.append(float(vals.mean()))
                variances.append(max(float(vals.var()), VAR_FLOOR))
            numeric[name] = {"mean": means, "var": variances}
        else:
            k = n_cats[name]
            counts = [
                np.bincount(columns[name][mask], minlength=k).tolist()
                for mask in masks
            ]
            categorical[name] = counts
    return NaiveBayesParams((n0, n1), numeric, categorical)


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def score_nb(params, columns, names, kinds, n_rows):
    """Positive-class posterior per row, computed in log space.

    A categorical code of -1 (category unseen in training) takes the smoothed
    zero-count likelihood 1 / (n_c + K), so no posterior ever collapses to 0.
    """
    n0, n1 = params.prior_counts
    total = n0 + n1
    log_like = [
        np.full(n_rows, np.log(n0 / total)),
        np.full(n_rows, np.log(n1 / total)),
    ]
    for name, kind in zip(names, kinds):
        arr = columns[name]
        if kind == NUMERIC:
            stats = params.numeric[name]
            for c in (0, 1):
                mean = stats["mean"][c]
                var = stats["var"][c]
                log_like[c] += -0.5 * np.log(2.0 * np.pi * var) - (arr - mean) ** 2 / (
                    2.0 * var
                )
        else:
            counts = params.categorical[name]
            k = len(counts[0])
            for c in (0, 1):
                n_c = (n0, n1)[c]
                table = np.log(
                    (np.asarray(counts[c], dtype=np.float64) + 1.0) / (n_c + k)
                )
                unseen = np.log(1.0 / (n_c + k))
                ll = np.full(n_rows, unseen)
                valid = arr >= 0
                ll[valid] = table[arr[valid]]
                log_like[c] += ll
    return _sigmoid(log_like[1] - log_like[0])
