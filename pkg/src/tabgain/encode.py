"""Bridges the typed table and the classifiers' array world.

A TableEncoder is fixed at training time: it records the feature columns,
their kinds, the categorical code spaces, and the positive target class.
Scoring inputs are re-coded against that record, so a category never seen
in training maps to code -1 and each algorithm applies its own fallback.
"""

import hashlib
import json

import numpy as np

from .errors import MissingCellsError, SchemaMismatchError
from .table import CATEGORICAL, NUMERIC

POSITIVE = 1
NEGATIVE = 0


class TableEncoder:
    """Feature/label extraction pinned to a training table's schema."""

    def __init__(self, table, positive):
        target = table.require_target()
        tcol = table.column(target)
        if positive not in tcol.categories:
            raise SchemaMismatchError(
                f"positive class {positive!r} is not a value of target {target!r} "
                f"(values: {', '.join(tcol.categories)})"
            )
        self.target = target
        self.target_categories = tcol.categories
        self.positive = positive
        self.features = []  # (name, kind) in schema order
        self.categories = {}  # name -> training category tuple
        for col in table.schema:
            if col.role != "feature":
                continue
            self.features.append((col.name, col.kind))
            if col.kind == CATEGORICAL:
                self.categories[col.name] = table.column(col.name).categories

    # fingerprint --------------------------------------------------------------

    def fingerprint(self):
        """JSON-safe description of the encoding contract."""
        return {
            "features": [
                {
                    "name": name,
                    "kind": kind,
                    "categories": list(self.categories[name])
                    if kind == CATEGORICAL
                    else None,
                }
                for name, kind in self.features
            ],
            "target": self.target,
            "target_categories": list(self.target_categories),
            "positive": self.positive,
        }

    def fingerprint_hash(self):
        doc = json.dumps(self.fingerprint(), sort_keys=True)
        return hashlib.sha256(doc.encode("utf-8")).hexdigest()[:16]

    @classmethod
    def from_fingerprint(cls, doc):
        enc = cls.__new__(cls)
        enc.target = doc["target"]
        enc.target_categories = tuple(doc["target_categories"])
        enc.positive = doc["positive"]
        enc.features = [(f["name"], f["kind"]) for f in doc["features"]]
        enc.categories = {
            f["name"]: tuple(f["categories"])
            for f in doc["features"]
            if f["kind"] == CATEGORICAL
        }
        return enc

    @property
    def negative_label(self):
        others = [c for c in self.target_categories if c != self.positive]
        return others[0] if others else f"not-{self.positive}"

    # table access ---------------------------------------------------------------

    def check_table(self, table, need_target=False):
        """Verify the table provides every feature with the right kind."""
        for name, kind in self.features:
            try:
                col = table.column_schema(name)
            except Exception:
                raise SchemaMismatchError(f"column {name!r} missing from input") from None
            if col.kind != kind:
                raise SchemaMismatchError(
                    f"column {name!r} is {col.kind}, model expects {kind}"
                )
        if need_target and table.target_name != self.target:
            raise SchemaMismatchError(f"input lacks target column {self.target!r}")

    def labels(self, table):
        """uint8 vector: 1 where the target equals the positive class."""
        tcol = table.column(self.target)
        if tcol.missing.any():
            raise MissingCellsError(f"target {self.target!r} has missing cells")
        if self.positive in tcol.categories:
            pos_code = tcol.categories.index(self.positive)
        else:
            pos_code = -2  # positive class absent entirely
        return (tcol.codes == pos_code).astype(np.uint8)

    def numeric(self, table, name):
        """float64 values of a numeric feature; missing cells are an error."""
        col = table.column(name)
        if col.missing.any():
            raise MissingCellsError(f"column {name!r} has missing cells")
        return np.ascontiguousarray(col.values, dtype=np.float64)

    def codes(self, table, name):
        """int32 codes of a categorical feature in the training code space.

        Categories unseen at training time (and missing cells) become -1.
        """
        col = table.column(name)
        trained = self.categories[name]
        if col.categories == trained:
            codes = col.codes.astype(np.int32, copy=True)
        else:
            remap = np.full(len(col.categories), -1, dtype=np.int32)
            index = {cat: i for i, cat in enumerate(trained)}
            for j, cat in enumerate(col.categories):
                remap[j] = index.get(cat, -1)
            codes = np.where(col.codes >= 0, remap[col.codes], -1).astype(np.int32)
        codes[col.missing] = -1
        return codes

    def n_cats(self, name):
        return len(self.categories[name])

    def columns(self, table):
        """name -> encoded array for every feature, in schema order."""
        self.check_table(table)
        out = {}
        for name, kind in self.features:
            if kind == NUMERIC:
                out[name] = self.numeric(table, name)
            else:
                out[name] = self.codes(table, name)
        return out

    def encode_row(self, row):
        """Encode one mapping of feature name -> value as length-1 arrays."""
        out = {}
        for name, kind in self.features:
            if name not in row:
                raise SchemaMismatchError(f"row is missing feature {name!r}")
            value = row[name]
            if kind == NUMERIC:
                out[name] = np.array([float(value)], dtype=np.float64)
            else:
                cats = self.categories[name]
                code = cats.index(value) if value in cats else -1
                out[name] = np.array([code], dtype=np.int32)
        return out

    def design_matrix(self, columns, n_rows):
        """Stack numeric values and one-hot categoricals into one matrix.

        Column order: features in schema order, categoricals expanded to one
        indicator per training category. Code -1 yields an all-zero block.
        """
        blocks = []
        for name, kind in self.features:
            arr = columns[name]
            if kind == NUMERIC:
                blocks.append(arr.reshape(n_rows, 1))
            else:
                k = self.n_cats(name)
                onehot = np.zeros((n_rows, k), dtype=np.float64)
                valid = arr >= 0
                onehot[np.nonzero(valid)[0], arr[valid]] = 1.0
                blocks.append(onehot)
        if not blocks:
            return np.zeros((n_rows, 0), dtype=np.float64)
        return np.concatenate(blocks, axis=1)

    def design_dim(self):
        d = 0
        for name, kind in self.features:
            d += 1 if kind == NUMERIC else self.n_cats(name)
        return d
