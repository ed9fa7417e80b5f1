"""Shared helpers for building small tables in tests."""

import numpy as np
import pytest

from tabgain.table import (
    CATEGORICAL,
    FEATURE,
    NUMERIC,
    TARGET,
    CategoricalColumn,
    ColumnSchema,
    DataTable,
    NumericColumn,
)


def build_table(target=None, numeric=None, categorical=None, target_name="target"):
    """Assemble a DataTable from plain Python lists.

    numeric: {name: [float or None, ...]}; categorical: {name: [str or None, ...]};
    target: [str, ...] or None for a feature-only table. None cells are missing.
    """
    schema = []
    columns = {}
    for name, vals in (numeric or {}).items():
        missing = np.array([v is None for v in vals], dtype=bool)
        arr = np.array([0.0 if v is None else float(v) for v in vals], dtype=np.float64)
        schema.append(ColumnSchema(name, NUMERIC, FEATURE))
        columns[name] = NumericColumn(arr, missing)
    for name, vals in (categorical or {}).items():
        cats = tuple(sorted({v for v in vals if v is not None}))
        index = {c: i for i, c in enumerate(cats)}
        codes = np.array(
            [-1 if v is None else index[v] for v in vals], dtype=np.int32
        )
        missing = np.array([v is None for v in vals], dtype=bool)
        schema.append(ColumnSchema(name, CATEGORICAL, FEATURE))
        columns[name] = CategoricalColumn(codes, cats, missing)
    if target is not None:
        cats = tuple(sorted(set(target)))
        index = {c: i for i, c in enumerate(cats)}
        codes = np.array([index[v] for v in target], dtype=np.int32)
        schema.append(ColumnSchema(target_name, CATEGORICAL, TARGET))
        columns[target_name] = CategoricalColumn(
            codes, cats, np.zeros(len(target), dtype=bool)
        )
    return DataTable.from_columns(schema, columns)


def random_small_table(rng, max_rows=8, max_attrs=3, max_cats=3):
    """Random all-categorical table for oracle-equivalence sweeps."""
    n = int(rng.integers(1, max_rows + 1))
    d = int(rng.integers(1, max_attrs + 1))
    schema = []
    columns = {}
    letters = "abcdefgh"
    for j in range(d):
        k = int(rng.integers(1, max_cats + 1))
        cats = tuple(letters[:k])
        codes = rng.integers(0, k, size=n).astype(np.int32)
        name = f"f{j}"
        schema.append(ColumnSchema(name, CATEGORICAL, FEATURE))
        columns[name] = CategoricalColumn(codes, cats, np.zeros(n, dtype=bool))
    t_codes = rng.integers(0, 2, size=n).astype(np.int32)
    schema.append(ColumnSchema("target", CATEGORICAL, TARGET))
    columns["target"] = CategoricalColumn(
        t_codes, ("no", "yes"), np.zeros(n, dtype=bool)
    )
    return DataTable.from_columns(schema, columns)


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
