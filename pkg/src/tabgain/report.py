"""Markdown and JSON renderers for rankings and evaluation reports.

JSON output is byte-deterministic (sorted keys, fixed indentation, no
timestamps); markdown renders the two reference table layouts: a two-column
ranking table (Ranking, Features) and a metrics table whose columns are AUC,
Precision, Recall, F-1 Score, Accuracy with model names in a blank-headed
first column.
"""

import json

METRIC_COLUMNS = ("AUC", "Precision", "Recall", "F-1 Score", "Accuracy")
METRIC_KEYS = ("auc", "precision", "recall", "f1", "accuracy")


def stable_json(doc):
    """Serialize deterministically; reruns must be byte-identical."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _provenance_line(provenance):
    if not provenance:
        return []
    pairs = ", ".join(f"{k}={provenance[k]}" for k in sorted(provenance))
    return ["", f"_config: {pairs}_"]


# ranking ------------------------------------------------------------------------

def ranking_doc(ranking, provenance=None):
    doc = {
        "ranking": [
            {"rank": e.rank, "feature": e.feature, "score_bits": e.score_bits}
            for e in ranking.entries
        ]
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def render_ranking_md(ranking, provenance=None):
    lines = [
        "# Feature ranking by information gain",
        "",
        "| Ranking | Features |",
        "| --- | --- |",
    ]
    for e in ranking.entries:
        lines.append(f"| {e.rank} | {e.feature} |")
    lines.extend(_provenance_line(provenance))
    return "\n".join(lines) + "\n"


# evaluation ---------------------------------------------------------------------

def _oriented_doc(om):
    return {
        "positive": om.positive,
        "auc": om.auc,
        "precision": om.precision,
        "recall": om.recall,
        "f1": om.f1,
        "accuracy": om.accuracy,
        "confusion": {"tp": om.tp, "fp": om.fp, "tn": om.tn, "fn": om.fn},
        "degenerate": list(om.degenerate),
    }


def report_doc(report, provenance=None):
    doc = {
        "k": report.k,
        "seed": report.seed,
        "positive": report.positive,
        "negative": report.negative,
        "n_rows": report.n_rows,
        "threshold": report.threshold,
        "models": [
            {
                "algorithm": m.algorithm,
                "display_name": m.display_name,
                "pooled": _oriented_doc(m.pooled),
                "pooled_flipped": _oriented_doc(m.pooled_flipped),
                "per_fold": list(m.per_fold),
                "fold_mean": m.fold_mean,
                "fold_sd": m.fold_sd,
            }
            for m in report.models
        ],
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def _metrics_table(rows):
    """rows: (name, oriented-metrics-like with auc..accuracy attributes)."""
    lines = [
        "| | " + " | ".join(METRIC_COLUMNS) + " |",
        "| --- | " + " | ".join("---" for _ in METRIC_COLUMNS) + " |",
    ]
    for name, om in rows:
        cells = " | ".join(f"{getattr(om, key):.3f}" for key in METRIC_KEYS)
        lines.append(f"| {name} | {cells} |")
    return lines


def render_report_md(report, provenance=None):
    lines = ["# Classification performance", ""]
    lines.append(f"Positive class: {report.positive} "
                 f"(k={report.k}, seed={report.seed}, n={report.n_rows})")
    lines.append("")
    lines.extend(_metrics_table([(m.display_name, m.pooled) for m in report.models]))

    lines.extend(["", f"## Per-fold mean and sd (positive = {report.positive})", ""])
    header = "| Model | " + " | ".join(METRIC_COLUMNS) + " |"
    lines.append(header)
    lines.append("| --- | " + " | ".join("---" for _ in METRIC_COLUMNS) + " |")
    for m in report.models:
        cells = " | ".join(
            f"{m.fold_mean[key]:.3f} ± {m.fold_sd[key]:.3f}"
            for key in METRIC_KEYS
        )
        lines.append(f"| {m.display_name} | {cells} |")

    lines.extend(["", f"## Flipped orientation (positive = {report.negative})", ""])
    lines.extend(
        _metrics_table([(m.display_name, m.pooled_flipped) for m in report.models])
    )
    lines.extend(_provenance_line(provenance))
    return "\n".join(lines) + "\n"
