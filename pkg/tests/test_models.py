"""Model specs, JSON round-trips, and the row-level prediction API."""

import numpy as np
import pytest

from tabgain.errors import InvalidSpecError, SchemaMismatchError
from tabgain.models import (
    ALGORITHMS,
    ModelSpec,
    load_model,
    model_from_doc,
    model_to_doc,
    predict_label,
    predict_score,
    predict_scores,
    resolve_spec,
    save_model,
    train_model,
)
from tabgain.preprocess import fit_minmax
from tabgain.models import with_normalization
from tabgain.synth import PlantedFeature, PlantedSpec, gen_planted_dataset

from conftest import build_table


def planted(n=250, seed=31):
    spec = PlantedSpec(
        n_rows=n,
        features=(
            PlantedFeature("a", 0.8),
            PlantedFeature("x", 0.5, kind="numeric"),
            PlantedFeature("c", 0.3, n_values=4),
        ),
        positive_rate=0.45,
        seed=seed,
    )
    return gen_planted_dataset(spec)


class TestSpecValidation:
    def test_defaults_fill_in(self):
        hp = resolve_spec(ModelSpec(algorithm="random_forest"))
        assert hp["n_trees"] == 100
        assert hp["max_features"] == "sqrt"

    def test_override_kept(self):
        hp = resolve_spec(
            ModelSpec(algorithm="decision_tree", hyperparameters={"max_depth": 3})
        )
        assert hp["max_depth"] == 3

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(InvalidSpecError):
            resolve_spec(ModelSpec(algorithm="gradient_boosting"))

    def test_unknown_key_rejected(self):
        with pytest.raises(InvalidSpecError):
            resolve_spec(
                ModelSpec(algorithm="decision_tree", hyperparameters={"depth": 3})
            )

    @pytest.mark.parametrize(
        "algo,hp",
        [
            ("decision_tree", {"max_depth": 0}),
            ("decision_tree", {"min_samples_split": 1}),
            ("random_forest", {"n_trees": 0}),
            ("logistic_regression", {"learning_rate": 0.0}),
            ("logistic_regression", {"epochs": 0}),
            ("linear_svm", {"l2": 0.0}),
        ],
    )
    def test_out_of_range_values_rejected(self, algo, hp):
        with pytest.raises(InvalidSpecError):
            resolve_spec(ModelSpec(algorithm=algo, hyperparameters=hp))


class TestSerialization:
    @pytest.mark.parametrize("algo", ALGORITHMS)
    def test_doc_round_trip_preserves_scores(self, algo):
        t = planted()
        spec = ModelSpec(
            algorithm=algo,
            hyperparameters={"n_trees": 10} if algo == "random_forest" else {},
        )
        m = train_model(t, spec, positive="yes")
        m2 = model_from_doc(model_to_doc(m))
        assert np.array_equal(predict_scores(m, t), predict_scores(m2, t))

    def test_file_round_trip_with_normalization(self, tmp_path):
        t = planted()
        nmap = fit_minmax(t)
        m = train_model(t, ModelSpec(algorithm="logistic_regression"), positive="yes")
        m = with_normalization(m, nmap)
        p = tmp_path / "model.json"
        save_model(m, p)
        m2 = load_model(p)
        assert np.array_equal(predict_scores(m, t), predict_scores(m2, t))
        assert m2.normalization == m.normalization

    def test_corrupt_json_rejected(self, tmp_path):
        p = tmp_path / "model.json"
        p.write_text("{not json")
        with pytest.raises(InvalidSpecError):
            load_model(p)

    def test_wrong_format_tag_rejected(self, tmp_path):
        p = tmp_path / "model.json"
        p.write_text('{"format": "something-else", "version": 1}')
        with pytest.raises(InvalidSpecError):
            load_model(p)


class TestRowPrediction:
    def fitted(self):
        t = build_table(
            target=["yes", "yes", "no", "no"],
            numeric={"x": [1.0, 1.1, -1.0, -1.1]},
        )
        return train_model(t, ModelSpec(algorithm="decision_tree"), positive="yes")

    def test_score_and_label_agree(self):
        m = self.fitted()
        assert predict_score(m, {"x": 1.0}) == 1.0
        assert predict_label(m, {"x": 1.0}) == "yes"
        assert predict_label(m, {"x": -1.0}) == "no"

    def test_threshold_boundary_is_positive(self):
        t = build_table(
            target=["yes", "no", "yes", "no"],
            categorical={"c": ["a", "a", "b", "b"]},
        )
        m = train_model(t, ModelSpec(algorithm="decision_tree"), positive="yes")
        # every leaf is a 50/50 mix, so scores are exactly 0.5
        assert predict_score(m, {"c": "a"}) == 0.5
        assert predict_label(m, {"c": "a"}, threshold=0.5) == "yes"

    def test_threshold_monotonicity(self):
        m = self.fitted()
        # raising the threshold can only move labels toward negative
        for row in ({"x": 1.0}, {"x": -1.0}):
            low = predict_label(m, row, threshold=0.3)
            high = predict_label(m, row, threshold=0.7)
            assert not (low == "no" and high == "yes")

    def test_threshold_out_of_range_rejected(self):
        m = self.fitted()
        for bad in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                predict_label(m, {"x": 1.0}, threshold=bad)

    def test_missing_feature_in_row_rejected(self):
        m = self.fitted()
        with pytest.raises(SchemaMismatchError):
            predict_score(m, {"wrong": 1.0})

    def test_batch_and_row_scoring_agree(self):
        t = planted(n=100)
        m = train_model(t, ModelSpec(algorithm="naive_bayes"), positive="yes")
        batch = predict_scores(m, t)
        for i in (0, 17, 63):
            row = {}
            for name, kind in m.encoder.features:
                col = t.column(name)
                if kind == "numeric":
                    row[name] = float(col.values[i])
                else:
                    row[name] = col.categories[col.codes[i]]
            assert predict_score(m, row) == pytest.approx(batch[i], abs=1e-12)

    def test_mismatched_table_rejected(self):
        m = self.fitted()
        other = build_table(target=["yes", "no"], categorical={"x": ["a", "b"]})
        with pytest.raises(SchemaMismatchError):
            predict_scores(m, other)
