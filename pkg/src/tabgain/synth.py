"""Synthetic dataset generator with planted feature-target dependencies, and
brute-force reference implementations of information gain and pair-count AUC.

The generator draws a binary target, then gives each feature the value of a
deterministic function of the target with probability strength, else uniform
noise. Population information gain is monotone in strength, so the correct
ranking of planted features is known by construction.

The oracles deliberately share no computation code with the ranking or
evaluation modules; they exist to check those modules independently.
"""

from dataclasses import dataclass, field
from math import log2

import numpy as np

from .errors import (
    InvalidSpecError,
    LengthMismatchError,
    MissingCellsError,
    NumericAttributeError,
    SingleClassLabelsError,
)
from .table import (
    CATEGORICAL,
    FEATURE,
    NUMERIC,
    TARGET,
    CategoricalColumn,
    ColumnSchema,
    DataTable,
    NumericColumn,
)

TARGET_NAME = "target"
TARGET_VALUES = ("no", "yes")  # code 1 = "yes"


@dataclass(frozen=True)
class PlantedFeature:
    name: str
    strength: float  # probability the value copies the target-derived signal
    kind: str = CATEGORICAL
    n_values: int = 2  # categorical alphabet size


@dataclass(frozen=True)
class PlantedSpec:
    n_rows: int
    features: tuple
    positive_rate: float
    seed: int
    missing_rates: dict = field(default_factory=dict)


def validate_planted(spec):
    if spec.n_rows < 10:
        raise InvalidSpecError(f"n_rows must be >= 10, got {spec.n_rows}")
    if not 0.0 < spec.positive_rate < 1.0:
        raise InvalidSpecError(
            f"positive_rate must lie strictly between 0 and 1, got {spec.positive_rate}"
        )
    if not spec.features:
        raise InvalidSpecError("at least one planted feature is required")
    seen = set()
    for f in spec.features:
        if f.name in seen or f.name == TARGET_NAME:
            raise InvalidSpecError(f"duplicate or reserved feature name {f.name!r}")
        seen.add(f.name)
        if not 0.0 <= f.strength <= 1.0:
            raise InvalidSpecError(
                f"feature {f.name!r}: strength must be in [0,1], got {f.strength}"
            )
        if f.kind not in (CATEGORICAL, NUMERIC):
            raise InvalidSpecError(f"feature {f.name!r}: unknown kind {f.kind!r}")
        if f.kind == CATEGORICAL and f.n_values < 2:
            raise InvalidSpecError(
                f"feature {f.name!r}: n_values must be >= 2, got {f.n_values}"
            )
    for name, rate in spec.missing_rates.items():
        if name not in seen:
            raise InvalidSpecError(f"missing rate given for unknown feature {name!r}")
        if not 0.0 <= rate <= 1.0:
            raise InvalidSpecError(
                f"feature {name!r}: missing rate must be in [0,1], got {rate}"
            )


def gen_planted_dataset(spec):
    """Deterministically generate the planted table for a validated spec.

    Draw order is fixed: target first, then per feature (in spec order) the
    copy mask, the noise values, and the missing mask, so identical specs
    yield identical tables.
    """
    validate_planted(spec)
    rng = np.random.default_rng(spec.seed)
    n = spec.n_rows
    ind = rng.random(n) < spec.positive_rate  # True = positive ("yes")

    schema = [ColumnSchema(f.name, f.kind, FEATURE) for f in spec.features]
    schema.append(ColumnSchema(TARGET_NAME, CATEGORICAL, TARGET))
    no_missing = np.zeros(n, dtype=bool)
    columns = {
        TARGET_NAME: CategoricalColumn(
            ind.astype(np.int32), TARGET_VALUES, no_missing
        )
    }
    for f in spec.features:
        copy_mask = rng.random(n) < f.strength
        rate = spec.missing_rates.get(f.name, 0.0)
        if f.kind == CATEGORICAL:
            noise = rng.integers(0, f.n_values, n)
            codes = np.where(copy_mask, ind.astype(np.int64), noise).astype(np.int32)
            missing = (rng.random(n) < rate) if rate > 0 else no_missing
            codes = codes.copy()
            codes[missing] = -1
            categories = tuple(f"c{i}" for i in range(f.n_values))
            columns[f.name] = CategoricalColumn(codes, categories, missing)
        else:
            noise = rng.random(n)
            signal = 0.25 + 0.5 * ind  # 0.25 for "no", 0.75 for "yes"
            values = np.where(copy_mask, signal, noise)
            missing = (rng.random(n) < rate) if rate > 0 else no_missing
            columns[f.name] = NumericColumn(values, missing)
    return DataTable(tuple(schema), columns, n)


def oracle_ig(table, attr):
    """Information gain of attr by explicit counting, straight from the
    definition: target entropy minus the partition-weighted target entropy.
    """
    if table.column_schema(attr).kind != CATEGORICAL:
        raise NumericAttributeError(f"column {attr!r} is numeric")
    target = table.require_target()
    a = table.column(attr)
    t = table.column(target)
    if a.missing.any() or t.missing.any():
        raise MissingCellsError("oracle_ig requires complete data")

    def plain_entropy(values):
        counts = {}
        for v in values:
            counts[v] = counts.get(v, 0) + 1
        total = len(values)
        h = 0.0
        for c in counts.values():
            p = c / total
            h -= p * log2(p)
        return h

    ys = t.codes.tolist()
    parts = {}
    for v, y in zip(a.codes.tolist(), ys):
        parts.setdefault(v, []).append(y)
    h_cond = 0.0
    for v in sorted(parts):
        h_cond += (len(parts[v]) / len(ys)) * plain_entropy(parts[v])
    return plain_entropy(ys) - h_cond


def oracle_auc_paircount(scores, labels, positive):
    """AUC by explicit O(n^2) pair counting with half credit for ties."""
    if len(scores) != len(labels):
        raise LengthMismatchError(f"{len(scores)} scores vs {len(labels)} labels")
    pos = [float(s) for s, l in zip(scores, labels) if l == positive]
    neg = [float(s) for s, l in zip(scores, labels) if l != positive]
    if not pos or not neg:
        raise SingleClassLabelsError("AUC needs both classes among the labels")
    credit = 0.0
    for sp in pos:
        for sn in neg:
            if sp > sn:
                credit += 2.0
            elif sp == sn:
                credit += 1.0
    return credit / (2.0 * len(pos) * len(neg))
