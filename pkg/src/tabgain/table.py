"""Typed tabular data model plus CSV and schema-file ingestion.

A DataTable stores numeric columns as float64 arrays and categorical columns
as integer code arrays with a per-column category list, together with a
missingness mask per column. Tables are immutable after construction; every
transformation returns a new table.
"""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateHeaderError,
    EmptyTableError,
    MissingColumnError,
    SchemaError,
    UnknownColumnError,
    UnparsableCellError,
)

NUMERIC = "numeric"
CATEGORICAL = "categorical"
FEATURE = "feature"
TARGET = "target"

KINDS = (NUMERIC, CATEGORICAL)
ROLES = (FEATURE, TARGET)

DEFAULT_MISSING_SENTINELS = ("", "NA")


@dataclass(frozen=True)
class ColumnSchema:
    """Declared name, kind (numeric/categorical) and role (feature/target)."""

    name: str
    kind: str
    role: str


def validate_schema(schema, require_target=True):
    """Check schema-level invariants, raising SchemaError on violation."""
    if not schema:
        raise SchemaError("schema declares no columns")
    seen = set()
    targets = []
    for col in schema:
        if col.kind not in KINDS:
            raise SchemaError(f"column {col.name!r}: unknown kind {col.kind!r}")
        if col.role not in ROLES:
            raise SchemaError(f"column {col.name!r}: unknown role {col.role!r}")
        if col.name in seen:
            raise SchemaError(f"duplicate column name {col.name!r}")
        seen.add(col.name)
        if col.role == TARGET:
            targets.append(col)
    if len(targets) > 1:
        names = ", ".join(repr(t.name) for t in targets)
        raise SchemaError(f"multiple target columns: {names}")
    if targets and targets[0].kind != CATEGORICAL:
        raise SchemaError(f"target column {targets[0].name!r} must be categorical")
    if require_target and not targets:
        raise SchemaError("schema declares no target column")


@dataclass(frozen=True)
class NumericColumn:
    values: np.ndarray  # float64; entries under the mask are undefined
    missing: np.ndarray  # bool


@dataclass(frozen=True)
class CategoricalColumn:
    codes: np.ndarray  # int32; -1 under the mask
    categories: tuple  # code -> category string
    missing: np.ndarray  # bool


class DataTable:
    """Immutable typed table; construct via load_csv or from_columns."""

    def __init__(self, schema, columns, n_rows):
        schema = tuple(schema)
        validate_schema(schema, require_target=False)
        for col in schema:
            data = columns.get(col.name)
            if data is None:
                raise MissingColumnError(f"no data for schema column {col.name!r}")
            if col.kind == NUMERIC and not isinstance(data, NumericColumn):
                raise SchemaError(f"column {col.name!r}: expected numeric data")
            if col.kind == CATEGORICAL and not isinstance(data, CategoricalColumn):
                raise SchemaError(f"column {col.name!r}: expected categorical data")
            arrays = (
                (data.values, data.missing)
                if isinstance(data, NumericColumn)
                else (data.codes, data.missing)
            )
            for arr in arrays:
                if arr.shape != (n_rows,):
                    raise SchemaError(
                        f"column {col.name!r}: length {arr.shape[0]} != n_rows {n_rows}"
                    )
        self.schema = schema
        self.n_rows = n_rows
        self._columns = dict(columns)

    @classmethod
    def from_columns(cls, schema, columns):
        """Build a table from a name -> NumericColumn/CategoricalColumn map."""
        first = next(iter(columns.values()))
        n = first.missing.shape[0]
        return cls(schema, columns, n)

    # schema helpers ---------------------------------------------------------

    def column_schema(self, name):
        for col in self.schema:
            if col.name == name:
                return col
        raise UnknownColumnError(f"no column named {name!r}")

    def column(self, name):
        try:
            return self._columns[name]
        except KeyError:
            raise UnknownColumnError(f"no column named {name!r}") from None

    @property
    def feature_names(self):
        return [c.name for c in self.schema if c.role == FEATURE]

    @property
    def target_name(self):
        for col in self.schema:
            if col.role == TARGET:
                return col.name
        return None

    def require_target(self):
        name = self.target_name
        if name is None:
            raise SchemaError("table has no target column")
        return name

    # row selection ----------------------------------------------------------

    def take(self, indices):
        """New table holding the given rows (categories and codes preserved)."""
        indices = np.asarray(indices)
        columns = {}
        for col in self.schema:
            data = self._columns[col.name]
            if isinstance(data, NumericColumn):
                columns[col.name] = NumericColumn(
                    data.values[indices], data.missing[indices]
                )
            else:
                columns[col.name] = CategoricalColumn(
                    data.codes[indices], data.categories, data.missing[indices]
                )
        return DataTable(self.schema, columns, int(len(indices)))

    def equals(self, other):
        """Exact equality of schema, categories, masks and cell values."""
        if self.schema != other.schema or self.n_rows != other.n_rows:
            return False
        for col in self.schema:
            a = self._columns[col.name]
            b = other._columns[col.name]
            if not np.array_equal(a.missing, b.missing):
                return False
            if isinstance(a, NumericColumn):
                keep = ~a.missing
                if not np.array_equal(a.values[keep], b.values[keep]):
                    return False
            else:
                if a.categories != b.categories:
                    return False
                if not np.array_equal(a.codes, b.codes):
                    return False
        return True

    def missing_count(self, name):
        return int(self.column(name).missing.sum())


def _parse_columns(schema, header, rows, sentinels):
    """Parse string rows into per-column arrays under the declared kinds."""
    n = len(rows)
    index = {name: header.index(name) for name in (c.name for c in schema)}
    columns = {}
    for col in schema:
        j = index[col.name]
        missing = np.zeros(n, dtype=bool)
        if col.kind == NUMERIC:
            values = np.zeros(n, dtype=np.float64)
            for i, row in enumerate(rows):
                token = row[j].strip()
                if token in sentinels:
                    missing[i] = True
                    continue
                try:
                    v = float(token)
                except ValueError:
                    raise UnparsableCellError(
                        i + 1, col.name, row[j], "not a number"
                    ) from None
                if not math.isfinite(v):
                    raise UnparsableCellError(i + 1, col.name, row[j], "not finite")
                values[i] = v
            columns[col.name] = NumericColumn(values, missing)
        else:
            raw = []
            for i, row in enumerate(rows):
                if row[j].strip() in sentinels:
                    missing[i] = True
                    raw.append(None)
                else:
                    raw.append(row[j])
            categories = tuple(sorted({v for v in raw if v is not None}))
            code_of = {v: k for k, v in enumerate(categories)}
            codes = np.fromiter(
                (code_of[v] if v is not None else -1 for v in raw),
                dtype=np.int32,
                count=n,
            )
            columns[col.name] = CategoricalColumn(codes, categories, missing)
    return columns


def load_csv(path, schema, missing_values=DEFAULT_MISSING_SENTINELS):
    """Read an RFC-4180 CSV into a DataTable under the given schema.

    The header must contain exactly the schema's column names, in any order.
    Empty fields and the configured sentinels mark missing cells. Row numbers
    in errors are 1-based over data rows (header excluded).
    """
    validate_schema(schema, require_target=False)
    sentinels = {s.strip() for s in missing_values}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyTableError(f"{path}: file has no header row") from None
        rows = list(reader)

    names = [c.name for c in schema]
    counts = {}
    for h in header:
        counts[h] = counts.get(h, 0) + 1
    for name in names:
        if counts.get(name, 0) > 1:
            raise DuplicateHeaderError(f"column {name!r} appears twice in the header")
        if name not in counts:
            raise MissingColumnError(f"schema column {name!r} missing from the header")
    extras = [h for h in header if h not in set(names)]
    if extras:
        raise SchemaError(f"header column {extras[0]!r} is not in the schema")

    width = len(header)
    for i, row in enumerate(rows):
        if len(row) != width:
            at = header[len(row)] if len(row) < width else header[-1]
            raise UnparsableCellError(
                i + 1, at, "", f"row has {len(row)} fields, expected {width}"
            )

    columns = _parse_columns(schema, header, rows, sentinels)
    table = DataTable(schema, columns, len(rows))

    target = table.target_name
    if target is not None:
        cats = table.column(target).categories
        if len(cats) > 2:
            shown = ", ".join(repr(c) for c in cats)
            raise SchemaError(
                f"target column {target!r} must be binary; found values {shown}"
            )
    return table


def write_csv(table, path):
    """Write a DataTable as CSV; missing cells become empty fields."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([c.name for c in table.schema])
        cols = [table.column(c.name) for c in table.schema]
        for i in range(table.n_rows):
            row = []
            for col in cols:
                if col.missing[i]:
                    row.append("")
                elif isinstance(col, NumericColumn):
                    row.append(repr(float(col.values[i])))
                else:
                    row.append(col.categories[col.codes[i]])
            writer.writerow(row)


def load_schema(path):
    """Read a schema file: a JSON array of {name, kind, role} objects.

    An object with a "columns" key holding that array is also accepted; this
    is the form generated files use so they can carry provenance alongside.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(doc, dict) and isinstance(doc.get("columns"), list):
        doc = doc["columns"]
    if not isinstance(doc, list):
        raise SchemaError(f"{path}: expected a JSON array of column objects")
    schema = []
    for entry in doc:
        if not isinstance(entry, dict) or set(entry) != {"name", "kind", "role"}:
            raise SchemaError(
                f"{path}: each column needs exactly the keys name, kind, role"
            )
        schema.append(ColumnSchema(entry["name"], entry["kind"], entry["role"]))
    schema = tuple(schema)
    validate_schema(schema, require_target=False)
    return schema


def save_schema(schema, path):
    """Write a schema as the JSON array format load_schema reads."""
    doc = [{"name": c.name, "kind": c.kind, "role": c.role} for c in schema]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
