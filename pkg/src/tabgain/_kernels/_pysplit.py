"""Pure-Python split-search kernels.

Fallback used when the compiled extension is unavailable. Every arithmetic
step mirrors _fast.pyx operation for operation (same operand order, same
libm log2), so the two backends produce bitwise-identical splits.
"""

from math import log2

import numpy as np


def binary_entropy(n0, n1):
    """Entropy in bits of a two-class count pair, with 0*log2(0) = 0."""
    n = n0 + n1
    h = 0.0
    if n0 > 0.0:
        p = n0 / n
        h -= p * log2(p)
    if n1 > 0.0:
        p = n1 / n
        h -= p * log2(p)
    return h


def best_numeric_split(values, labels):
    """Best information-gain threshold for a sorted numeric column.

    values: float64 array sorted ascending; labels: uint8 0/1 aligned with it.
    Returns (found, gain, threshold); candidate thresholds are midpoints
    between consecutive distinct values, first candidate wins ties.
    """
    n = values.shape[0]
    if n < 2:
        return False, 0.0, 0.0
    change = np.nonzero(values[1:] != values[:-1])[0]
    if change.size == 0:
        return False, 0.0, 0.0
    cum_pos = np.cumsum(labels, dtype=np.int64)
    t1 = float(cum_pos[-1])
    t0 = n - t1
    parent = binary_entropy(t0, t1)
    best_gain = -1.0
    best_thr = 0.0
    for b in change.tolist():  # b = last row of the left block
        l1 = float(cum_pos[b])
        l0 = (b + 1) - l1
        nl = l0 + l1
        nr = n - nl
        w = (nl / n) * binary_entropy(l0, l1) + (nr / n) * binary_entropy(
            t0 - l0, t1 - l1
        )
        g = parent - w
        if g > best_gain:
            best_gain = g
            best_thr = float(values[b]) + 0.5 * (float(values[b + 1]) - float(values[b]))
    return True, (best_gain if best_gain > 0.0 else 0.0), best_thr


def best_categorical_split(codes, n_cats, labels):
    """Information gain of the multiway partition of a categorical column.

    codes: int32 array of category codes in [0, n_cats); labels: uint8 0/1.
    Returns (found, gain); found is False when fewer than two categories
    occur (a single partition cannot split the node).
    """
    n = codes.shape[0]
    counts1 = np.bincount(codes, weights=labels, minlength=n_cats)
    counts_all = np.bincount(codes, minlength=n_cats)
    if int(np.count_nonzero(counts_all)) < 2:
        return False, 0.0
    t1 = float(labels.sum())
    t0 = n - t1
    parent = binary_entropy(t0, t1)
    w = 0.0
    for v in range(n_cats):  # fixed ascending order, matches the C loop
        nv = float(counts_all[v])
        if nv > 0.0:
            c1 = float(counts1[v])
            w += (nv / n) * binary_entropy(nv - c1, c1)
    g = parent - w
    return True, (g if g > 0.0 else 0.0)
