"""Split-search kernels with a compiled and a pure-Python backend.

The compiled extension is preferred when it imported cleanly; the
TABGAIN_KERNELS environment variable ("compiled" or "python") overrides
that choice at import time, and set_backend() switches it at runtime.
Both backends produce bitwise-identical results.
"""

import os

from . import _pysplit

try:
    from . import _fast
except ImportError:
    _fast = None

HAVE_COMPILED = _fast is not None

_BACKENDS = {"python": _pysplit}
if HAVE_COMPILED:
    _BACKENDS["compiled"] = _fast

_env = os.environ.get("TABGAIN_KERNELS", "").strip().lower()
if _env:
    if _env not in ("compiled", "python"):
        raise ImportError(f"TABGAIN_KERNELS must be 'compiled' or 'python', got {_env!r}")
    if _env not in _BACKENDS:
        raise ImportError("TABGAIN_KERNELS=compiled but the extension did not build")
    _ACTIVE = _BACKENDS[_env]
else:
    _ACTIVE = _BACKENDS["compiled"] if HAVE_COMPILED else _BACKENDS["python"]


def get_backend():
    """Name of the backend serving kernel calls: 'compiled' or 'python'."""
    return "compiled" if _ACTIVE is _fast else "python"


def set_backend(name):
    """Route subsequent kernel calls to the named backend."""
    global _ACTIVE
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name not in _BACKENDS:
        raise ValueError("compiled kernels are not available in this install")
    _ACTIVE = _BACKENDS[name]


def binary_entropy(n0, n1):
    return _ACTIVE.binary_entropy(n0, n1)


def best_numeric_split(values, labels):
    return _ACTIVE.best_numeric_split(values, labels)


def best_categorical_split(codes, n_cats, labels):
    return _ACTIVE.best_categorical_split(codes, n_cats, labels)
