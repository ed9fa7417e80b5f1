"""CSV ingestion, schema handling, and the typed table."""

import json

import numpy as np
import pytest

from tabgain.errors import (
    DuplicateHeaderError,
    MissingColumnError,
    SchemaError,
    UnknownColumnError,
    UnparsableCellError,
)
from tabgain.table import (
    CATEGORICAL,
    FEATURE,
    NUMERIC,
    TARGET,
    ColumnSchema,
    load_csv,
    load_schema,
    save_schema,
    validate_schema,
    write_csv,
)

from conftest import build_table

SCHEMA = (
    ColumnSchema("x", NUMERIC, FEATURE),
    ColumnSchema("c", CATEGORICAL, FEATURE),
    ColumnSchema("y", CATEGORICAL, TARGET),
)


def write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoadCsv:
    def test_basic_parse(self, tmp_path):
        p = write(tmp_path, "x,c,y\n1.5,red,yes\n2.0,blue,no\n")
        t = load_csv(p, SCHEMA)
        assert t.n_rows == 2
        assert t.column("x").values.tolist() == [1.5, 2.0]
        assert t.column("c").categories == ("blue", "red")
        assert t.column("y").categories == ("no", "yes")

    def test_header_order_insensitive(self, tmp_path):
        p = write(tmp_path, "y,x,c\nyes,1.5,red\nno,2.0,blue\n")
        t = load_csv(p, SCHEMA)
        assert t.column("x").values.tolist() == [1.5, 2.0]

    def test_empty_cell_marks_missing(self, tmp_path):
        p = write(tmp_path, "x,c,y\n1.0,red,yes\n,blue,no\n2.0,red,no\n")
        t = load_csv(p, SCHEMA)
        assert t.missing_count("x") == 1
        assert t.column("x").missing.tolist() == [False, True, False]

    def test_na_sentinel_marks_missing(self, tmp_path):
        p = write(tmp_path, "x,c,y\nNA,red,yes\n2.0,NA,no\n")
        t = load_csv(p, SCHEMA)
        assert t.missing_count("x") == 1
        assert t.missing_count("c") == 1

    def test_custom_sentinel(self, tmp_path):
        p = write(tmp_path, "x,c,y\n?,red,yes\n2.0,blue,no\n")
        t = load_csv(p, SCHEMA, missing_values=("?",))
        assert t.missing_count("x") == 1

    def test_missing_target_column_fails(self, tmp_path):
        p = write(tmp_path, "x,c\n1.0,red\n")
        with pytest.raises(MissingColumnError):
            load_csv(p, SCHEMA)

    def test_duplicate_header_fails(self, tmp_path):
        p = write(tmp_path, "x,x,c,y\n1.0,2.0,red,yes\n")
        with pytest.raises(DuplicateHeaderError):
            load_csv(p, SCHEMA)

    def test_unparsable_numeric_names_location(self, tmp_path):
        p = write(tmp_path, "x,c,y\n1.0,red,yes\noops,blue,no\n")
        with pytest.raises(UnparsableCellError) as exc:
            load_csv(p, SCHEMA)
        assert exc.value.row == 2
        assert exc.value.column == "x"

    def test_ragged_row_fails_with_location(self, tmp_path):
        p = write(tmp_path, "x,c,y\n1.0,red,yes\n2.0,blue\n")
        with pytest.raises(UnparsableCellError) as exc:
            load_csv(p, SCHEMA)
        assert exc.value.row == 2

    def test_more_than_two_target_values_fails(self, tmp_path):
        p = write(tmp_path, "x,c,y\n1,r,a\n2,r,b\n3,r,c\n")
        with pytest.raises(SchemaError):
            load_csv(p, SCHEMA)

    def test_quoted_fields_with_commas(self, tmp_path):
        p = write(tmp_path, 'x,c,y\n1.0,"red, dark",yes\n2.0,blue,no\n')
        t = load_csv(p, SCHEMA)
        assert "red, dark" in t.column("c").categories

    def test_bdhs_shaped_fixture_has_18_columns(self):
        schema = load_schema("tests/fixtures/bdhs_shape.schema.json")
        t = load_csv("tests/fixtures/bdhs_shape.csv", schema)
        assert len(t.schema) == 18
        assert t.n_rows == 20
        assert t.target_name == "Has died"
        kinds = {c.kind for c in t.schema}
        assert kinds == {NUMERIC, CATEGORICAL}


class TestRoundTrips:
    def test_csv_round_trip(self, tmp_path):
        t = build_table(
            target=["yes", "no", "yes"],
            numeric={"x": [1.25, None, -3.5]},
            categorical={"c": ["red", "blue", None]},
            target_name="y",
        )
        # rename schema entries to match SCHEMA layout for reload
        p = tmp_path / "round.csv"
        write_csv(t, p)
        t2 = load_csv(p, t.schema)
        assert t.equals(t2)

    def test_schema_round_trip(self, tmp_path):
        p = tmp_path / "schema.json"
        save_schema(SCHEMA, p)
        assert load_schema(p) == SCHEMA

    def test_schema_object_form_with_extra_keys(self, tmp_path):
        doc = {
            "columns": [
                {"name": "x", "kind": "numeric", "role": "feature"},
                {"name": "y", "kind": "categorical", "role": "target"},
            ],
            "provenance": {"seed": 1},
        }
        p = tmp_path / "schema.json"
        p.write_text(json.dumps(doc))
        s = load_schema(p)
        assert s == (
            ColumnSchema("x", NUMERIC, FEATURE),
            ColumnSchema("y", CATEGORICAL, TARGET),
        )

    def test_schema_bad_kind_rejected(self, tmp_path):
        p = tmp_path / "schema.json"
        p.write_text('[{"name": "x", "kind": "integer", "role": "feature"}]')
        with pytest.raises(SchemaError):
            load_schema(p)


class TestSchemaValidation:
    def test_duplicate_names_rejected(self):
        s = (
            ColumnSchema("x", NUMERIC, FEATURE),
            ColumnSchema("x", NUMERIC, FEATURE),
            ColumnSchema("y", CATEGORICAL, TARGET),
        )
        with pytest.raises(SchemaError):
            validate_schema(s)

    def test_two_targets_rejected(self):
        s = (
            ColumnSchema("a", CATEGORICAL, TARGET),
            ColumnSchema("b", CATEGORICAL, TARGET),
        )
        with pytest.raises(SchemaError):
            validate_schema(s)

    def test_numeric_target_rejected(self):
        s = (ColumnSchema("y", NUMERIC, TARGET),)
        with pytest.raises(SchemaError):
            validate_schema(s)

    def test_missing_target_rejected_when_required(self):
        s = (ColumnSchema("x", NUMERIC, FEATURE),)
        with pytest.raises(SchemaError):
            validate_schema(s, require_target=True)
        validate_schema(s, require_target=False)


class TestTake:
    def test_take_preserves_categories(self):
        t = build_table(
            target=["yes", "no", "yes", "no"],
            categorical={"c": ["a", "b", "c", "a"]},
        )
        sub = t.take(np.array([0, 3]))
        assert sub.column("c").categories == t.column("c").categories
        assert sub.n_rows == 2
        assert sub.column("c").codes.tolist() == [0, 0]

    def test_unknown_column_error(self):
        t = build_table(target=["yes", "no"], numeric={"x": [1.0, 2.0]})
        with pytest.raises(UnknownColumnError):
            t.column("nope")
