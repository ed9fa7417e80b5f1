"""Random-forest training, bagging, and the degenerate-forest identity."""

import numpy as np
import pytest

from tabgain.evaluate import roc_auc, stratified_folds
from tabgain.models import ModelSpec, predict_scores, train_model
from tabgain.synth import PlantedFeature, PlantedSpec, gen_planted_dataset
from tabgain.trees import score_tree

from conftest import build_table


def forest_spec(**hp):
    return ModelSpec(algorithm="random_forest", hyperparameters=hp)


def planted(n=500, seed=11):
    spec = PlantedSpec(
        n_rows=n,
        features=(
            PlantedFeature("a", 0.8),
            PlantedFeature("b", 0.5, kind="numeric"),
            PlantedFeature("c", 0.2),
        ),
        positive_rate=0.4,
        seed=seed,
    )
    return gen_planted_dataset(spec)


class TestDegenerateForest:
    def test_single_tree_full_features_no_bootstrap_equals_tree(self):
        t = planted()
        dt = train_model(t, ModelSpec(algorithm="decision_tree"), positive="yes")
        rf = train_model(
            t,
            forest_spec(n_trees=1, bootstrap=False, max_features="all"),
            positive="yes",
        )
        s_tree = predict_scores(dt, t)
        s_forest = predict_scores(rf, t)
        assert np.array_equal(s_tree, s_forest)


class TestDeterminismAndSeed:
    def test_same_seed_identical_held_out_predictions(self):
        t = planted(n=300)
        train_idx = np.arange(200)
        test_idx = np.arange(200, 300)
        train_t, test_t = t.take(train_idx), t.take(test_idx)
        spec = ModelSpec(algorithm="random_forest", hyperparameters={"n_trees": 15}, seed=42)
        s1 = predict_scores(train_model(train_t, spec, positive="yes"), test_t)
        s2 = predict_scores(train_model(train_t, spec, positive="yes"), test_t)
        assert np.array_equal(s1, s2)

    def test_different_seed_changes_predictions(self):
        t = planted(n=300)
        a = ModelSpec(algorithm="random_forest", hyperparameters={"n_trees": 5}, seed=1)
        b = ModelSpec(algorithm="random_forest", hyperparameters={"n_trees": 5}, seed=2)
        s1 = predict_scores(train_model(t, a, positive="yes"), t)
        s2 = predict_scores(train_model(t, b, positive="yes"), t)
        assert not np.array_equal(s1, s2)


class TestForestQuality:
    def test_blob_data_held_out_auc(self):
        rng = np.random.default_rng(23)
        n = 200
        y = rng.integers(0, 2, n)
        x1 = rng.normal(0, 1, n) + 3.0 * y
        x2 = rng.normal(0, 1, n) + 3.0 * y
        t = build_table(
            target=["yes" if v else "no" for v in y],
            numeric={"x1": [float(v) for v in x1], "x2": [float(v) for v in x2]},
        )
        plan = stratified_folds(t.column("target").codes, 2, seed=0)
        train_t = t.take(np.nonzero(plan.assignment != 0)[0])
        test_idx = np.nonzero(plan.assignment == 0)[0]
        test_t = t.take(test_idx)
        m = train_model(train_t, forest_spec(n_trees=30), positive="yes")
        scores = predict_scores(m, test_t)
        labels = test_t.column("target").codes[
            np.arange(test_t.n_rows)
        ] == test_t.column("target").categories.index("yes")
        _, auc = roc_auc(scores, labels.astype(int), 1)
        assert auc >= 0.95

    def test_score_is_mean_of_trees(self):
        t = planted(n=200)
        m = train_model(t, forest_spec(n_trees=7), positive="yes")
        total = predict_scores(m, t)
        # recompute tree by tree through the tree scorer
        enc = m.encoder
        cols = enc.columns(t)
        per_tree = [score_tree(root, cols, t.n_rows) for root in m.params]
        mean = np.sum(per_tree, axis=0) / float(len(per_tree))
        assert np.allclose(total, mean, atol=0)

    def test_scores_in_unit_interval(self):
        t = planted(n=200)
        m = train_model(t, forest_spec(n_trees=10), positive="yes")
        s = predict_scores(m, t)
        assert np.all(s >= 0.0) and np.all(s <= 1.0)
