"""Preprocessing: sparse-column dropping, missing-value resolution, min-max
normalization, and equal-frequency discretization of numeric columns.

All functions return new tables; inputs are never mutated.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EmptyTableError, MissingCellsError, UnknownColumnError
from .table import (
    CATEGORICAL,
    NUMERIC,
    TARGET,
    CategoricalColumn,
    ColumnSchema,
    DataTable,
    NumericColumn,
)

DROP_ROWS = "drop_rows"
IMPUTE = "impute"


class DropResult(NamedTuple):
    table: DataTable
    dropped: list  # (column name, missing rate) pairs, schema order


class ResolveResult(NamedTuple):
    table: DataTable
    rows_dropped: int
    cells_imputed: int


def drop_sparse_columns(table, max_missing_rate):
    """Remove feature columns whose missing fraction exceeds the threshold.

    The target column is never dropped. Row count is unchanged. Returns the
    surviving table plus a log of (name, missing_rate) for dropped columns.
    """
    dropped = []
    keep = []
    for col in table.schema:
        if col.role == TARGET or table.n_rows == 0:
            keep.append(col)
            continue
        rate = table.missing_count(col.name) / table.n_rows
        if rate > max_missing_rate:
            dropped.append((col.name, rate))
        else:
            keep.append(col)
    columns = {c.name: table.column(c.name) for c in keep}
    return DropResult(DataTable(tuple(keep), columns, table.n_rows), dropped)


def _impute_column(col, name):
    """Fill a column's missing cells with its median (numeric) or mode."""
    observed = ~col.missing
    if not observed.any():
        raise MissingCellsError(
            f"column {name!r} has no observed values; "
            "drop it with a lower missing-rate threshold instead"
        )
    n_fill = int(col.missing.sum())
    if isinstance(col, NumericColumn):
        fill = float(np.median(col.values[observed]))
        values = col.values.copy()
        values[col.missing] = fill
        return NumericColumn(values, np.zeros(len(values), dtype=bool)), n_fill
    counts = np.bincount(col.codes[observed], minlength=len(col.categories))
    fill = int(np.argmax(counts))  # argmax takes the lowest code on ties
    codes = col.codes.copy()
    codes[col.missing] = fill
    return CategoricalColumn(codes, col.categories, np.zeros(len(codes), dtype=bool)), n_fill


def resolve_missing(table, policy):
    """Produce a table with no missing cells.

    Rows with a missing target are always dropped; labels are never invented.
    drop_rows then removes every row with a missing feature cell; impute fills
    numeric features with the column median and categorical with the mode.
    """
    if policy not in (DROP_ROWS, IMPUTE):
        raise ValueError(f"unknown missing-value policy {policy!r}")

    keep = np.ones(table.n_rows, dtype=bool)
    target = table.target_name
    if target is not None:
        keep &= ~table.column(target).missing
    if policy == DROP_ROWS:
        for name in table.feature_names:
            keep &= ~table.column(name).missing

    rows_dropped = int(table.n_rows - keep.sum())
    trimmed = table.take(np.nonzero(keep)[0]) if rows_dropped else table
    if trimmed.n_rows == 0:
        raise EmptyTableError("missing-value handling dropped every row")

    if policy == DROP_ROWS:
        return ResolveResult(trimmed, rows_dropped, 0)

    cells = 0
    columns = {}
    for col in trimmed.schema:
        data = trimmed.column(col.name)
        if data.missing.any():
            data, n_fill = _impute_column(data, col.name)
            cells += n_fill
        columns[col.name] = data
    return ResolveResult(
        DataTable(trimmed.schema, columns, trimmed.n_rows), rows_dropped, cells
    )


@dataclass(frozen=True)
class NormalizationMap:
    """Observed (min, max) per numeric column, fixed at fit time."""

    bounds: dict  # name -> (min, max)


def fit_minmax(table):
    """Record each numeric column's observed min and max."""
    bounds = {}
    for col in table.schema:
        if col.kind != NUMERIC:
            continue
        data = table.column(col.name)
        observed = data.values[~data.missing]
        if observed.size == 0:
            bounds[col.name] = (0.0, 0.0)
        else:
            bounds[col.name] = (float(observed.min()), float(observed.max()))
    return NormalizationMap(bounds)


def apply_minmax(table, nmap):
    """Rescale numeric columns to [0,1]; out-of-range values are clamped.

    Constant columns (min = max at fit time) map to 0.0.
    """
    columns = {}
    for col in table.schema:
        data = table.column(col.name)
        if col.kind == NUMERIC:
            if col.name not in nmap.bounds:
                raise UnknownColumnError(
                    f"column {col.name!r} was not fitted for normalization"
                )
            lo, hi = nmap.bounds[col.name]
            if hi > lo:
                values = np.clip((data.values - lo) / (hi - lo), 0.0, 1.0)
            else:
                values = np.zeros_like(data.values)
            data = NumericColumn(values, data.missing)
        columns[col.name] = data
    return DataTable(table.schema, columns, table.n_rows)


def invert_minmax(table, nmap):
    """Map normalized numeric columns back to their original scale."""
    columns = {}
    for col in table.schema:
        data = table.column(col.name)
        if col.kind == NUMERIC:
            if col.name not in nmap.bounds:
                raise UnknownColumnError(
                    f"column {col.name!r} was not fitted for normalization"
                )
            lo, hi = nmap.bounds[col.name]
            data = NumericColumn(data.values * (hi - lo) + lo, data.missing)
        columns[col.name] = data
    return DataTable(table.schema, columns, table.n_rows)


@dataclass(frozen=True)
class DiscretizationMap:
    """Strictly increasing bin edges per numeric column."""

    edges: dict  # name -> float64 array; k edges delimit k+1 right-closed bins


def fit_discretizer(table, bins):
    """Equal-frequency bin edges from column quantiles.

    Duplicate quantiles collapse, so a column may end up with fewer effective
    bins than requested; a constant column collapses to a single bin.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    qs = [i / bins for i in range(1, bins)]
    edges = {}
    for col in table.schema:
        if col.kind != NUMERIC:
            continue
        data = table.column(col.name)
        observed = data.values[~data.missing]
        if observed.size == 0 or not qs:
            edges[col.name] = np.empty(0, dtype=np.float64)
        else:
            cuts = np.quantile(observed, qs)
            edges[col.name] = np.unique(cuts)
    return DiscretizationMap(edges)


def apply_discretizer(table, dmap):
    """Replace numeric columns with categorical bin codes.

    A value lands in the first bin whose upper edge is >= the value
    (right-closed intervals). Categorical columns pass through unchanged.
    """
    schema = []
    columns = {}
    for col in table.schema:
        data = table.column(col.name)
        if col.kind != NUMERIC:
            schema.append(col)
            columns[col.name] = data
            continue
        if col.name not in dmap.edges:
            raise UnknownColumnError(
                f"column {col.name!r} was not fitted for discretization"
            )
        cuts = dmap.edges[col.name]
        codes = np.searchsorted(cuts, data.values, side="left").astype(np.int32)
        codes[data.missing] = -1
        categories = tuple(f"b{i}" for i in range(len(cuts) + 1))
        schema.append(ColumnSchema(col.name, CATEGORICAL, col.role))
        columns[col.name] = CategoricalColumn(codes, categories, data.missing)
    return DataTable(tuple(schema), columns, table.n_rows)
