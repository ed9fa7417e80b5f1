"""One train/score contract over the five classifiers.

A ModelSpec names an algorithm, hyperparameter overrides, and a seed;
train_model fits it on a DataTable and returns an immutable TrainedModel
that scores rows with the positive-class probability. Models serialize to a
versioned JSON document and reload to bitwise-identical scoring behavior.
"""

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np

from .bayes import NaiveBayesParams, fit_nb, score_nb
from .encode import TableEncoder
from .errors import (
    EmptyTableError,
    InvalidSpecError,
    SingleClassTrainingError,
)
from .linear import (
    LOGISTIC_EPOCHS,
    LOGISTIC_L2,
    LOGISTIC_LR,
    LOGISTIC_TOL,
    SVM_EPOCHS,
    SVM_L2,
    calibrate_margins,
    sigmoid,
    train_logistic,
    train_svm,
)
from .preprocess import NormalizationMap, apply_minmax
from .table import CATEGORICAL, DataTable, FEATURE
from .trees import (
    node_from_doc,
    node_to_doc,
    score_forest,
    score_tree,
    train_forest_arrays,
    train_tree_arrays,
)

DECISION_TREE = "decision_tree"
RANDOM_FOREST = "random_forest"
LOGISTIC_REGRESSION = "logistic_regression"
NAIVE_BAYES = "naive_bayes"
LINEAR_SVM = "linear_svm"

ALGORITHMS = (
    DECISION_TREE,
    RANDOM_FOREST,
    LOGISTIC_REGRESSION,
    NAIVE_BAYES,
    LINEAR_SVM,
)

DISPLAY_NAMES = {
    DECISION_TREE: "Decision Tree",
    RANDOM_FOREST: "Random Forest",
    LOGISTIC_REGRESSION: "Logistic Regression",
    NAIVE_BAYES: "Naïve Bayes",
    LINEAR_SVM: "Linear SVM",
}

DEFAULT_HYPERPARAMETERS = {
    DECISION_TREE: {"max_depth": 12, "min_samples_split": 2},
    RANDOM_FOREST: {
        "n_trees": 100,
        "bootstrap": True,
        "max_features": "sqrt",
        "max_depth": 12,
        "min_samples_split": 2,
    },
    NAIVE_BAYES: {},
    LOGISTIC_REGRESSION: {
        "l2": LOGISTIC_L2,
        "learning_rate": LOGISTIC_LR,
        "epochs": LOGISTIC_EPOCHS,
        "tol": LOGISTIC_TOL,
    },
    LINEAR_SVM: {"l2": SVM_L2, "epochs": SVM_EPOCHS},
}

MODEL_FORMAT = "tabgain-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class ModelSpec:
    algorithm: str
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0


def _check_range(algorithm, key, value):
    if key in ("max_depth", "n_trees", "epochs"):
        if not isinstance(value, int) or value < 1:
            raise InvalidSpecError(f"{key} must be an integer >= 1, got {value!r}")
    elif key == "min_samples_split":
        if not isinstance(value, int) or value < 2:
            raise InvalidSpecError(f"{key} must be an integer >= 2, got {value!r}")
    elif key in ("learning_rate", "tol"):
        if not isinstance(value, (int, float)) or value <= 0:
            raise InvalidSpecError(f"{key} must be > 0, got {value!r}")
    elif key == "l2":
        # the SVM step size is 1/(l2*t), so zero is only valid for logistic
        floor_ok = value > 0 if algorithm == LINEAR_SVM else value >= 0
        if not isinstance(value, (int, float)) or not floor_ok:
            bound = "> 0" if algorithm == LINEAR_SVM else ">= 0"
            raise InvalidSpecError(f"{key} must be {bound}, got {value!r}")
    elif key == "bootstrap":
        if not isinstance(value, bool):
            raise InvalidSpecError(f"{key} must be true or false, got {value!r}")
    elif key == "max_features":
        ok = value in ("sqrt", "all") or (isinstance(value, int) and value >= 1)
        if not ok:
            raise InvalidSpecError(
                f"{key} must be 'sqrt', 'all', or an integer >= 1, got {value!r}"
            )


def resolve_spec(spec):
    """Validate a ModelSpec and return its hyperparameters merged with defaults."""
    if spec.algorithm not in ALGORITHMS:
        known = ", ".join(ALGORITHMS)
        raise InvalidSpecError(f"unknown algorithm {spec.algorithm!r} (known: {known})")
    defaults = DEFAULT_HYPERPARAMETERS[spec.algorithm]
    for key, value in spec.hyperparameters.items():
        if key not in defaults:
            raise InvalidSpecError(
                f"{spec.algorithm} has no hyperparameter {key!r}"
            )
        _check_range(spec.algorithm, key, value)
    return {**defaults, **spec.hyperparameters}


@dataclass(frozen=True)
class TrainedModel:
    algorithm: str
    encoder: TableEncoder
    hyperparameters: dict  # fully merged with defaults
    seed: int
    params: object
    normalization: dict = None  # name -> (min, max), applied before scoring


def with_normalization(model, nmap):
    """Attach a fitted min-max map so the model normalizes its own inputs."""
    return dataclasses.replace(model, normalization=dict(nmap.bounds))


def train_model(table, spec, positive):
    """Fit spec.algorithm on the table, scoring P(target == positive)."""
    hp = resolve_spec(spec)
    if table.n_rows == 0:
        raise EmptyTableError("training table has no rows")
    enc = TableEncoder(table, positive)
    cols = enc.columns(table)
    y = enc.labels(table)
    names = [n for n, _ in enc.features]
    kinds = [k for _, k in enc.features]
    n_cats = {n: enc.n_cats(n) for n, k in enc.features if k == CATEGORICAL}

    alg = spec.algorithm
    if alg == DECISION_TREE:
        params = train_tree_arrays(
            cols, names, kinds, n_cats, y,
            max_depth=hp["max_depth"],
            min_samples_split=hp["min_samples_split"],
        )
    elif alg == RANDOM_FOREST:
        params = train_forest_arrays(
            cols, names, kinds, n_cats, y,
            n_trees=hp["n_trees"],
            bootstrap=hp["bootstrap"],
            max_features=hp["max_features"],
            max_depth=hp["max_depth"],
            min_samples_split=hp["min_samples_split"],
            seed=spec.seed,
        )
    else:
        n1 = int(y.sum())
        if n1 == 0 or n1 == y.shape[0]:
            raise SingleClassTrainingError(
                f"{alg} needs both target classes in the training data"
            )
        if alg == NAIVE_BAYES:
            params = fit_nb(cols, names, kinds, n_cats, y)
        elif alg == LOGISTIC_REGRESSION:
            X = enc.design_matrix(cols, table.n_rows)
            w, b, _ = train_logistic(
                X, y.astype(np.float64),
                l2=hp["l2"],
                learning_rate=hp["learning_rate"],
                epochs=hp["epochs"],
                tol=hp["tol"],
            )
            params = {"w": w, "b": b}
        else:
            X = enc.design_matrix(cols, table.n_rows)
            y01 = y.astype(np.float64)
            w, b = train_svm(X, y01 * 2.0 - 1.0, l2=hp["l2"], epochs=hp["epochs"])
            a = calibrate_margins(X @ w + b, y01)
            params = {"w": w, "b": b, "a": a}
    return TrainedModel(alg, enc, hp, spec.seed, params, None)


def _restrict(table, model):
    """Project the table onto the model's feature columns."""
    wanted = {name for name, _ in model.encoder.features}
    schema = tuple(c for c in table.schema if c.name in wanted and c.role == FEATURE)
    columns = {c.name: table.column(c.name) for c in schema}
    model.encoder.check_table(table)
    return DataTable(schema, columns, table.n_rows)


def _score_columns(model, cols, n_rows):
    enc = model.encoder
    names = [n for n, _ in enc.features]
    kinds = [k for _, k in enc.features]
    if model.algorithm == DECISION_TREE:
        return score_tree(model.params, cols, n_rows)
    if model.algorithm == RANDOM_FOREST:
        return score_forest(model.params, cols, n_rows)
    if model.algorithm == NAIVE_BAYES:
        return score_nb(model.params, cols, names, kinds, n_rows)
    X = enc.design_matrix(cols, n_rows)
    z = X @ model.params["w"] + model.params["b"]
    if model.algorithm == LINEAR_SVM:
        z = model.params["a"] * z
    return sigmoid(z)


def predict_scores(model, table):
    """Positive-class score for every table row, in row order."""
    sub = _restrict(table, model)
    if model.normalization:
        sub = apply_minmax(sub, NormalizationMap(model.normalization))
    cols = model.encoder.columns(sub)
    return _score_columns(model, cols, sub.n_rows)


def predict_score(model, row):
    """Positive-class score for one feature-name -> value mapping."""
    cols = model.encoder.encode_row(row)
    if model.normalization:
        for name, kind in model.encoder.features:
            if kind == CATEGORICAL:
                continue
            lo, hi = model.normalization[name]
            arr = cols[name]
            if hi > lo:
                cols[name] = np.clip((arr - lo) / (hi - lo), 0.0, 1.0)
            else:
                cols[name] = np.zeros_like(arr)
    return float(_score_columns(model, cols, 1)[0])


def predict_label(model, row, threshold=0.5):
    """Positive class name iff the row's score is >= threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie strictly between 0 and 1")
    score = predict_score(model, row)
    enc = model.encoder
    return enc.positive if score >= threshold else enc.negative_label


# serialization ----------------------------------------------------------------

def model_to_doc(model):
    if model.algorithm == DECISION_TREE:
        parameters = {"root": node_to_doc(model.params)}
    elif model.algorithm == RANDOM_FOREST:
        parameters = {"trees": [node_to_doc(t) for t in model.params]}
    elif model.algorithm == NAIVE_BAYES:
        parameters = {
            "prior_counts": list(model.params.prior_counts),
            "numeric": model.params.numeric,
            "categorical": model.params.categorical,
        }
    else:
        parameters = {"w": model.params["w"].tolist(), "b": model.params["b"]}
        if model.algorithm == LINEAR_SVM:
            parameters["a"] = model.params["a"]
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "algorithm": model.algorithm,
        "seed": model.seed,
        "hyperparameters": model.hyperparameters,
        "fingerprint": model.encoder.fingerprint(),
        "normalization": (
            {name: list(bounds) for name, bounds in model.normalization.items()}
            if model.normalization
            else None
        ),
        "parameters": parameters,
    }


def model_from_doc(doc):
    if doc.get("format") != MODEL_FORMAT or doc.get("version") != MODEL_VERSION:
        raise InvalidSpecError(
            f"not a {MODEL_FORMAT} v{MODEL_VERSION} document "
            f"(format={doc.get('format')!r}, version={doc.get('version')!r})"
        )
    alg = doc["algorithm"]
    if alg not in ALGORITHMS:
        raise InvalidSpecError(f"unknown algorithm {alg!r} in model document")
    enc = TableEncoder.from_fingerprint(doc["fingerprint"])
    raw = doc["parameters"]
    if alg == DECISION_TREE:
        params = node_from_doc(raw["root"])
    elif alg == RANDOM_FOREST:
        params = [node_from_doc(t) for t in raw["trees"]]
    elif alg == NAIVE_BAYES:
        params = NaiveBayesParams(
            tuple(raw["prior_counts"]), raw["numeric"], raw["categorical"]
        )
    else:
        params = {"w": np.asarray(raw["w"], dtype=np.float64), "b": raw["b"]}
        if alg == LINEAR_SVM:
            params["a"] = raw["a"]
    normalization = doc.get("normalization")
    if normalization is not None:
        normalization = {name: tuple(b) for name, b in normalization.items()}
    return TrainedModel(
        alg, enc, doc["hyperparameters"], doc["seed"], params, normalization
    )


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_doc(model), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"{path}: invalid JSON ({exc})") from None
    return model_from_doc(doc)
