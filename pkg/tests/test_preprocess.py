"""Sparse-column dropping, missing-value policy, normalization, discretization."""

import numpy as np
import pytest

from tabgain.errors import EmptyTableError, MissingCellsError, UnknownColumnError
from tabgain.preprocess import (
    DROP_ROWS,
    IMPUTE,
    apply_discretizer,
    apply_minmax,
    drop_sparse_columns,
    fit_discretizer,
    fit_minmax,
    invert_minmax,
    resolve_missing,
)

from conftest import build_table


class TestDropSparseColumns:
    def table(self):
        return build_table(
            target=["yes", "no", "yes", "no", "no"],
            numeric={"dense": [1, 2, 3, 4, 5], "sparse": [1, None, None, None, 5]},
        )

    def test_strictly_greater_than_threshold_drops(self):
        res = drop_sparse_columns(self.table(), 0.5)
        assert [name for name, _ in res.dropped] == ["sparse"]
        assert res.dropped[0][1] == pytest.approx(0.6)
        assert [c.name for c in res.table.schema] == ["dense", "target"]
        assert res.table.n_rows == 5

    def test_threshold_equal_rate_keeps(self):
        res = drop_sparse_columns(self.table(), 0.6)
        assert res.dropped == []

    def test_threshold_one_keeps_everything(self):
        t = build_table(target=["yes", "no"], numeric={"x": [None, None]})
        res = drop_sparse_columns(t, 1.0)
        assert res.dropped == []

    def test_threshold_zero_on_full_table_is_identity(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1, 2]})
        res = drop_sparse_columns(t, 0.0)
        assert res.dropped == []
        assert res.table.equals(t)

    def test_target_never_dropped(self):
        t = build_table(
            target=["yes", "no", "yes"], numeric={"x": [None, None, None]}
        )
        res = drop_sparse_columns(t, 0.1)
        assert res.table.target_name == "target"


class TestResolveMissing:
    def test_drop_rows(self):
        t = build_table(
            target=["yes", "no", "yes", "no"],
            numeric={"x": [1, None, 3, 4]},
        )
        res = resolve_missing(t, DROP_ROWS)
        assert res.rows_dropped == 1
        assert res.table.n_rows == 3
        assert res.table.column("x").values.tolist() == [1.0, 3.0, 4.0]

    def test_impute_numeric_median(self):
        t = build_table(target=["yes", "no", "no"], numeric={"x": [1, None, 3]})
        res = resolve_missing(t, IMPUTE)
        assert res.cells_imputed == 1
        assert res.table.column("x").values.tolist() == [1.0, 2.0, 3.0]
        assert res.table.missing_count("x") == 0

    def test_impute_categorical_mode(self):
        t = build_table(
            target=["yes", "no", "no", "yes"],
            categorical={"c": ["b", "b", None, "a"]},
        )
        res = resolve_missing(t, IMPUTE)
        col = res.table.column("c")
        assert col.categories[col.codes[2]] == "b"

    def test_impute_mode_tie_takes_first_category(self):
        t = build_table(
            target=["yes", "no", "no"],
            categorical={"c": ["b", "a", None]},
        )
        res = resolve_missing(t, IMPUTE)
        col = res.table.column("c")
        assert col.categories[col.codes[2]] == "a"

    def test_fully_observed_identity(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1, 2]})
        for policy in (DROP_ROWS, IMPUTE):
            assert resolve_missing(t, policy).table.equals(t)

    def test_all_rows_dropped_is_error(self):
        t = build_table(target=["yes", "no"], numeric={"x": [None, None]})
        with pytest.raises(EmptyTableError):
            resolve_missing(t, DROP_ROWS)

    def test_impute_with_no_observed_values_is_error(self):
        t = build_table(target=["yes", "no"], numeric={"x": [None, None]})
        with pytest.raises(MissingCellsError):
            resolve_missing(t, IMPUTE)

    def test_unknown_policy_rejected(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1, 2]})
        with pytest.raises(ValueError):
            resolve_missing(t, "zero_fill")

    def test_no_missing_cells_after_either_policy(self):
        t = build_table(
            target=["yes", "no", "yes", "no"],
            numeric={"x": [1, None, 3, 4]},
            categorical={"c": ["a", "b", None, "a"]},
        )
        for policy in (DROP_ROWS, IMPUTE):
            out = resolve_missing(t, policy).table
            total = sum(out.missing_count(c.name) for c in out.schema)
            assert total == 0


class TestMinMax:
    def test_endpoints_and_midpoint(self):
        t = build_table(target=["yes", "no", "no"], numeric={"x": [2, 4, 6]})
        out = apply_minmax(t, fit_minmax(t))
        assert out.column("x").values.tolist() == [0.0, 0.5, 1.0]

    def test_constant_column_maps_to_zero(self):
        t = build_table(target=["yes", "no"], numeric={"x": [7, 7]})
        out = apply_minmax(t, fit_minmax(t))
        assert out.column("x").values.tolist() == [0.0, 0.0]

    def test_clamping_on_unseen_data(self):
        fit_t = build_table(target=["yes", "no"], numeric={"x": [0, 10]})
        nmap = fit_minmax(fit_t)
        q = build_table(target=["yes", "no"], numeric={"x": [15, -5]})
        out = apply_minmax(q, nmap)
        assert out.column("x").values.tolist() == [1.0, 0.0]

    def test_output_always_in_unit_interval(self, rng):
        vals = [float(v) for v in rng.normal(0, 50, 40)]
        t = build_table(target=["yes", "no"] * 20, numeric={"x": vals})
        nmap = fit_minmax(t.take(np.arange(20)))
        out = apply_minmax(t, nmap)
        arr = out.column("x").values
        assert np.all(arr >= 0.0) and np.all(arr <= 1.0)

    def test_round_trip_within_tolerance(self, rng):
        vals = [float(v) for v in rng.normal(3, 17, 30)]
        t = build_table(target=["yes", "no"] * 15, numeric={"x": vals})
        nmap = fit_minmax(t)
        back = invert_minmax(apply_minmax(t, nmap), nmap)
        assert np.allclose(back.column("x").values, t.column("x").values, atol=1e-9)

    def test_unknown_column_on_apply(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1, 2]})
        nmap = fit_minmax(build_table(target=["yes", "no"], numeric={"z": [1, 2]}))
        with pytest.raises(UnknownColumnError):
            apply_minmax(t, nmap)

    def test_categorical_columns_untouched(self):
        t = build_table(
            target=["yes", "no"], numeric={"x": [1, 2]}, categorical={"c": ["a", "b"]}
        )
        out = apply_minmax(t, fit_minmax(t))
        assert out.column("c").codes.tolist() == t.column("c").codes.tolist()


class TestDiscretizer:
    def test_two_bins_split_at_median(self):
        vals = [float(v) for v in range(1, 11)]
        t = build_table(target=["yes", "no"] * 5, numeric={"x": vals})
        dmap = fit_discretizer(t, bins=2)
        out = apply_discretizer(t, dmap)
        codes = out.column("x").codes
        assert np.bincount(codes).tolist() == [5, 5]
        assert out.column_schema("x").kind == "categorical"

    def test_single_bin_gives_constant_column(self):
        t = build_table(target=["yes", "no", "no"], numeric={"x": [1, 5, 9]})
        out = apply_discretizer(t, fit_discretizer(t, bins=1))
        assert len(set(out.column("x").codes.tolist())) == 1

    def test_duplicate_quantiles_collapse(self):
        t = build_table(
            target=["yes", "no", "no", "yes", "no"],
            numeric={"x": [1, 1, 1, 1, 2]},
        )
        out = apply_discretizer(t, fit_discretizer(t, bins=4))
        distinct = set(out.column("x").codes.tolist())
        assert len(distinct) == 2

    def test_categorical_columns_pass_through(self):
        t = build_table(
            target=["yes", "no"], numeric={"x": [1, 2]}, categorical={"c": ["a", "b"]}
        )
        out = apply_discretizer(t, fit_discretizer(t, bins=2))
        assert out.column("c").categories == ("a", "b")
        assert out.column_schema("c").kind == "categorical"

    def test_bins_below_one_rejected(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1, 2]})
        with pytest.raises(ValueError):
            fit_discretizer(t, bins=0)

    def test_unseen_values_fall_in_edge_bins(self):
        fit_t = build_table(
            target=["yes", "no"] * 5, numeric={"x": [float(v) for v in range(10)]}
        )
        dmap = fit_discretizer(fit_t, bins=5)
        q = build_table(target=["yes", "no"], numeric={"x": [-100.0, 100.0]})
        out = apply_discretizer(q, dmap)
        codes = out.column("x").codes
        n_bins = len(out.column("x").categories)
        assert codes[0] == 0
        assert codes[1] == n_bins - 1

    def test_pipeline_drop_then_resolve_has_no_missing(self):
        t = build_table(
            target=["yes", "no", "yes", "no"],
            numeric={
                "mostly_gone": [None, None, None, 4],
                "ok": [1, None, 3, 4],
            },
        )
        dropped = drop_sparse_columns(t, 0.5).table
        out = resolve_missing(dropped, DROP_ROWS).table
        assert sum(out.missing_count(c.name) for c in out.schema) == 0
