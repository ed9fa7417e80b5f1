"""Information-gain feature ranking and binary classification for tabular
data, with stratified cross-validated evaluation and reference-table reports.
"""

__version__ = "0.1.0"

from .errors import TabgainError
from .evaluate import (
    ConfusionMatrix,
    EvalReport,
    FoldPlan,
    RocCurve,
    confusion,
    evaluate_cv,
    metrics,
    roc_auc,
    stratified_folds,
)
from .models import (
    ALGORITHMS,
    ModelSpec,
    TrainedModel,
    load_model,
    predict_label,
    predict_score,
    predict_scores,
    save_model,
    train_model,
)
from .preprocess import (
    DiscretizationMap,
    NormalizationMap,
    apply_discretizer,
    apply_minmax,
    drop_sparse_columns,
    fit_discretizer,
    fit_minmax,
    invert_minmax,
    resolve_missing,
)
from .ranking import (
    FeatureRanking,
    conditional_entropy,
    cross_validated_ranking,
    entropy,
    information_gain,
    rank_features,
)
from .synth import (
    PlantedFeature,
    PlantedSpec,
    gen_planted_dataset,
    oracle_auc_paircount,
    oracle_ig,
)
from .table import (
    ColumnSchema,
    DataTable,
    load_csv,
    load_schema,
    save_schema,
    write_csv,
)

__all__ = [
    "ALGORITHMS",
    "ColumnSchema",
    "ConfusionMatrix",
    "DataTable",
    "DiscretizationMap",
    "EvalReport",
    "FeatureRanking",
    "FoldPlan",
    "ModelSpec",
    "NormalizationMap",
    "PlantedFeature",
    "PlantedSpec",
    "RocCurve",
    "TabgainError",
    "TrainedModel",
    "__version__",
    "apply_discretizer",
    "apply_minmax",
    "conditional_entropy",
    "confusion",
    "cross_validated_ranking",
    "drop_sparse_columns",
    "entropy",
    "evaluate_cv",
    "fit_discretizer",
    "fit_minmax",
    "gen_planted_dataset",
    "information_gain",
    "invert_minmax",
    "load_csv",
    "load_model",
    "load_schema",
    "metrics",
    "oracle_auc_paircount",
    "oracle_ig",
    "predict_label",
    "predict_score",
    "predict_scores",
    "rank_features",
    "resolve_missing",
    "roc_auc",
    "save_model",
    "save_schema",
    "stratified_folds",
    "train_model",
    "write_csv",
]
