# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled split-search kernels.

Arithmetic mirrors _pysplit.py operation for operation (same operand order,
same libm log2, no fused multiply-add), so results are bitwise identical to
the pure-Python fallback.
"""

from libc.math cimport log2

import numpy as np


cdef inline double _h2(double n0, double n1) noexcept:
    cdef double n = n0 + n1
    cdef double h = 0.0
    cdef double p
    if n0 > 0.0:
        p = n0 / n
        h -= p * log2(p)
    if n1 > 0.0:
        p = n1 / n
        h -= p * log2(p)
    return h


def binary_entropy(double n0, double n1):
    """Entropy in bits of a two-class count pair, with 0*log2(0) = 0."""
    return _h2(n0, n1)


def best_numeric_split(double[::1] values, unsigned char[::1] labels):
    """Best information-gain threshold for a sorted numeric column.

    values must be sorted ascending; labels are 0/1 aligned with it.
    Returns (found, gain, threshold); candidate thresholds are midpoints
    between consecutive distinct values, first candidate wins ties.
    """
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return False, 0.0, 0.0
    cdef double dn = n
    cdef double t1 = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if labels[i]:
            t1 += 1.0
    cdef double t0 = dn - t1
    cdef double parent = _h2(t0, t1)
    cdef double best_gain = -1.0
    cdef double best_thr = 0.0
    cdef bint found = False
    cdef double l0 = 0.0
    cdef double l1 = 0.0
    cdef double nl, nr, w, g
    for i in range(1, n):
        if labels[i - 1]:
            l1 += 1.0
        else:
            l0 += 1.0
        if values[i] != values[i - 1]:
            found = True
            nl = l0 + l1
            nr = dn - nl
            w = (nl / dn) * _h2(l0, l1) + (nr / dn) * _h2(t0 - l0, t1 - l1)
            g = parent - w
            if g > best_gain:
                best_gain = g
                best_thr = values[i - 1] + 0.5 * (values[i] - values[i - 1])
    if not found:
        return False, 0.0, 0.0
    return True, (best_gain if best_gain > 0.0 else 0.0), best_thr


def best_categorical_split(int[::1] codes, int n_cats, unsigned char[::1] labels):
    """Information gain of the multiway partition of a categorical column.

    codes are category codes in [0, n_cats). Returns (found, gain); found is
    False when fewer than two categories occur.
    """
    cdef Py_ssize_t n = codes.shape[0]
    cdef double[::1] c0 = np.zeros(n_cats)
    cdef double[::1] c1 = np.zeros(n_cats)
    cdef double t1 = 0.0
    cdef Py_ssize_t i
    cdef int v
    for i in range(n):
        v = codes[i]
        if labels[i]:
            c1[v] += 1.0
            t1 += 1.0
        else:
            c0[v] += 1.0
    cdef double dn = n
    cdef double t0 = dn - t1
    cdef int distinct = 0
    for v in range(n_cats):
        if c0[v] + c1[v] > 0.0:
            distinct += 1
    if distinct < 2:
        return False, 0.0
    cdef double parent = _h2(t0, t1)
    cdef double w = 0.0
    cdef double nv
    for v in range(n_cats):
        nv = c0[v] + c1[v]
        if nv > 0.0:
            w += (nv / dn) * _h2(c0[v], c1[v])
    cdef double g = parent - w
    return True, (g if g > 0.0 else 0.0)
