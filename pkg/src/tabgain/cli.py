"""Command-line entry point.

Subcommands: rank, evaluate, synth, train, score. Flags mirror the run
configuration; a JSON config file (--config) supplies defaults that explicit
flags override. The seed is mandatory and never auto-generated, so every
artifact is a pure function of (config, input files).

Exit codes: 0 ok, 2 configuration error, 3 data error, 4 model error.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import TabgainError
from .evaluate import evaluate_cv
from .models import (
    ALGORITHMS,
    ModelSpec,
    load_model,
    model_to_doc,
    predict_scores,
    resolve_spec,
    train_model,
    with_normalization,
)
from .preprocess import (
    DROP_ROWS,
    IMPUTE,
    drop_sparse_columns,
    fit_minmax,
    apply_minmax,
    resolve_missing,
)
from .ranking import cross_validated_ranking
from .report import (
    ranking_doc,
    render_ranking_md,
    render_report_md,
    report_doc,
    stable_json,
)
from .synth import PlantedFeature, PlantedSpec, gen_planted_dataset
from .table import (
    CATEGORICAL,
    NUMERIC,
    TARGET,
    DataTable,
    load_csv,
    load_schema,
    write_csv,
)

CONFIG_KEYS = {
    "data", "schema", "seed", "k", "bins", "missing_threshold", "missing_policy",
    "out_dir", "positive", "models", "repeats",
}


@dataclass
class RunConfig:
    data: str = None
    schema: str = None
    seed: int = None
    k: int = 10
    bins: int = 10
    missing_threshold: float = 0.3
    missing_policy: str = DROP_ROWS
    out_dir: str = "."
    positive: str = None
    models: list = None
    repeats: int = 1


def _fail(command, code, exc):
    print(f"tabgain {command}: error: {exc}", file=sys.stderr)
    return code


def _load_config_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config file must hold a JSON object")
    for key in doc:
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}: unknown config key {key!r}")
    return doc


def _resolve_config(args):
    """Merge hard defaults, config-file values, and explicit flags."""
    cfg = RunConfig()
    file_values = _load_config_file(args.config) if getattr(args, "config", None) else {}
    for key, value in file_values.items():
        setattr(cfg, key, value)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)

    if cfg.seed is None:
        raise ValueError("a seed is required (--seed); it is never auto-generated")
    cfg.seed = int(cfg.seed)
    if cfg.data is None:
        raise ValueError("an input CSV is required (--data)")
    if cfg.schema is None:
        raise ValueError("a schema file is required (--schema)")
    if cfg.k < 2:
        raise ValueError(f"k must be >= 2, got {cfg.k}")
    if cfg.bins < 1:
        raise ValueError(f"bins must be >= 1, got {cfg.bins}")
    if not 0.0 <= cfg.missing_threshold <= 1.0:
        raise ValueError(
            f"missing threshold must be in [0,1], got {cfg.missing_threshold}"
        )
    if cfg.missing_policy not in (DROP_ROWS, IMPUTE):
        raise ValueError(f"missing policy must be drop_rows or impute")
    if cfg.repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {cfg.repeats}")
    return cfg


def _model_specs(cfg):
    """Build the model list: config-file entries, --models names, or all five."""
    entries = cfg.models
    if entries is None:
        entries = list(ALGORITHMS)
    specs = []
    for entry in entries:
        if isinstance(entry, str):
            spec = ModelSpec(entry.strip(), {}, cfg.seed)
        else:
            spec = ModelSpec(
                entry.get("algorithm", ""),
                entry.get("hyperparameters", {}),
                int(entry.get("seed", cfg.seed)),
            )
        resolve_spec(spec)  # validates algorithm name and ranges
        specs.append(spec)
    if not specs:
        raise ValueError("at least one model must be selected")
    return specs


def _prepare_table(cfg, schema):
    """Shared ingestion pipeline: load, drop sparse columns, resolve missing."""
    table = load_csv(cfg.data, schema)
    drop = drop_sparse_columns(table, cfg.missing_threshold)
    resolved = resolve_missing(drop.table, cfg.missing_policy)
    log = {
        "columns_dropped": [name for name, _ in drop.dropped],
        "rows_dropped": resolved.rows_dropped,
        "cells_imputed": resolved.cells_imputed,
    }
    return resolved.table, log


def _pick_positive(cfg, table):
    cats = table.column(table.require_target()).categories
    if cfg.positive is not None:
        if cfg.positive not in cats:
            raise ValueError(
                f"positive class {cfg.positive!r} is not a target value "
                f"(found: {', '.join(cats)})"
            )
        return cfg.positive
    if "yes" in cats:
        return "yes"
    raise ValueError(
        f"target values are {', '.join(cats)}; pass --positive to choose one"
    )


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _provenance(command, cfg, extra=None):
    prov = {
        "command": command,
        "tool": f"tabgain {__version__}",
        "data": cfg.data,
        "schema": cfg.schema,
        "seed": cfg.seed,
        "missing_threshold": cfg.missing_threshold,
        "missing_policy": cfg.missing_policy,
    }
    if extra:
        prov.update(extra)
    return prov


# subcommands -------------------------------------------------------------------

def cmd_rank(args):
    try:
        cfg = _resolve_config(args)
        schema = load_schema(cfg.schema)
    except (TabgainError, OSError, ValueError, TypeError) as exc:
        return _fail("rank", 2, exc)
    try:
        table, log = _prepare_table(cfg, schema)
        ranking = cross_validated_ranking(table, cfg.k, cfg.seed, cfg.bins)
        prov = _provenance("rank", cfg, {"k": cfg.k, "bins": cfg.bins, **log})
        os.makedirs(cfg.out_dir, exist_ok=True)
        _write(
            os.path.join(cfg.out_dir, "ranking.json"),
            stable_json(ranking_doc(ranking, prov)),
        )
        _write(
            os.path.join(cfg.out_dir, "ranking.md"),
            render_ranking_md(ranking, prov),
        )
    except (TabgainError, OSError) as exc:
        return _fail("rank", 3, exc)
    return 0


def cmd_evaluate(args):
    try:
        cfg = _resolve_config(args)
        schema = load_schema(cfg.schema)
        specs = _model_specs(cfg)
    except (TabgainError, OSError, ValueError, TypeError) as exc:
        return _fail("evaluate", 2, exc)
    try:
        table, log = _prepare_table(cfg, schema)
    except (TabgainError, OSError) as exc:
        return _fail("evaluate", 3, exc)
    try:
        positive = _pick_positive(cfg, table)
    except ValueError as exc:
        return _fail("evaluate", 2, exc)
    try:
        report = evaluate_cv(table, specs, cfg.k, cfg.seed, positive)
        # run 0 is the headline report; later runs rerun with derived seeds
        repeats = []
        for i in range(cfg.repeats):
            extra = (
                report
                if i == 0
                else evaluate_cv(table, specs, cfg.k, cfg.seed + i, positive)
            )
            repeats.append(
                {
                    "seed": extra.seed,
                    "models": [
                        {"algorithm": m.algorithm, "pooled_auc": m.pooled.auc}
                        for m in extra.models
                    ],
                }
            )
    except (TabgainError, ValueError) as exc:
        return _fail("evaluate", 4, exc)
    try:
        prov = _provenance(
            "evaluate",
            cfg,
            {"k": cfg.k, "positive": positive, "repeats": cfg.repeats, **log},
        )
        doc = report_doc(report, prov)
        if cfg.repeats > 1:
            doc["repeats"] = repeats
        os.makedirs(cfg.out_dir, exist_ok=True)
        _write(os.path.join(cfg.out_dir, "report.json"), stable_json(doc))
        _write(
            os.path.join(cfg.out_dir, "report.md"), render_report_md(report, prov)
        )
    except OSError as exc:
        return _fail("evaluate", 3, exc)
    return 0


def _parse_float_list(text, flag):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"{flag} expects a comma-separated list of numbers")


def cmd_synth(args):
    try:
        if args.seed is None:
            raise ValueError("a seed is required (--seed)")
        strengths = _parse_float_list(args.strengths, "--strengths")
        kinds = (
            [k.strip() for k in args.kinds.split(",")]
            if args.kinds
            else ["cat"] * len(strengths)
        )
        if len(kinds) != len(strengths):
            raise ValueError("--kinds must list one kind per strength")
        features = []
        for i, (s, kind) in enumerate(zip(strengths, kinds)):
            if kind not in ("cat", "num"):
                raise ValueError(f"kind must be cat or num, got {kind!r}")
            features.append(
                PlantedFeature(
                    f"f{i + 1}",
                    s,
                    CATEGORICAL if kind == "cat" else NUMERIC,
                    args.cat_values,
                )
            )
        missing_rates = {}
        if args.missing_rates:
            rates = _parse_float_list(args.missing_rates, "--missing-rates")
            if len(rates) == 1:
                rates = rates * len(features)
            if len(rates) != len(features):
                raise ValueError("--missing-rates must list one rate per feature")
            missing_rates = {f.name: r for f, r in zip(features, rates) if r > 0}
        spec = PlantedSpec(
            args.rows, tuple(features), args.pos_rate, args.seed, missing_rates
        )
        table = gen_planted_dataset(spec)
    except (TabgainError, ValueError) as exc:
        return _fail("synth", 2, exc)
    try:
        out_csv = args.out_csv or os.path.join(args.out_dir, "synth.csv")
        out_schema = args.out_schema or os.path.join(args.out_dir, "synth-schema.json")
        os.makedirs(os.path.dirname(out_csv) or ".", exist_ok=True)
        os.makedirs(os.path.dirname(out_schema) or ".", exist_ok=True)
        write_csv(table, out_csv)
        doc = {
            "columns": [
                {"name": c.name, "kind": c.kind, "role": c.role}
                for c in table.schema
            ],
            "provenance": {
                "command": "synth",
                "tool": f"tabgain {__version__}",
                "rows": args.rows,
                "pos_rate": args.pos_rate,
                "seed": args.seed,
                "strengths": strengths,
                "kinds": kinds,
                "cat_values": args.cat_values,
                "missing_rates": args.missing_rates or "",
                "csv": out_csv,
            },
        }
        _write(out_schema, stable_json(doc))
    except (TabgainError, OSError) as exc:
        return _fail("synth", 3, exc)
    return 0


def _parse_hp(pairs):
    hp = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValueError(f"--hp expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        if raw in ("true", "false"):
            value = raw == "true"
        else:
            try:
                value = int(raw)
            except ValueError:
                try:
                    value = float(raw)
                except ValueError:
                    value = raw
        hp[key.strip()] = value
    return hp


def cmd_train(args):
    try:
        cfg = _resolve_config(args)
        schema = load_schema(cfg.schema)
        spec = ModelSpec(args.algorithm, _parse_hp(args.hp), cfg.seed)
        resolve_spec(spec)
    except (TabgainError, OSError, ValueError, TypeError) as exc:
        return _fail("train", 2, exc)
    try:
        table, log = _prepare_table(cfg, schema)
    except (TabgainError, OSError) as exc:
        return _fail("train", 3, exc)
    try:
        positive = _pick_positive(cfg, table)
    except ValueError as exc:
        return _fail("train", 2, exc)
    try:
        nmap = fit_minmax(table)
        model = train_model(apply_minmax(table, nmap), spec, positive)
        model = with_normalization(model, nmap)
        doc = model_to_doc(model)
        doc["provenance"] = _provenance(
            "train", cfg, {"algorithm": args.algorithm, "positive": positive, **log}
        )
    except TabgainError as exc:
        return _fail("train", 4, exc)
    try:
        out = args.out or os.path.join(cfg.out_dir, "model.json")
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        _write(out, stable_json(doc))
    except OSError as exc:
        return _fail("train", 3, exc)
    return 0


def cmd_score(args):
    try:
        if not 0.0 < args.threshold < 1.0:
            raise ValueError("threshold must lie strictly between 0 and 1")
        schema = load_schema(args.schema)
    except (TabgainError, OSError, ValueError) as exc:
        return _fail("score", 2, exc)
    try:
        model = load_model(args.model)
    except (TabgainError, OSError, ValueError) as exc:
        return _fail("score", 4, exc)
    try:
        table = load_csv(args.data, schema)
        n_loaded = table.n_rows
        # the target plays no part in scoring; drop it so the missing-value
        # policy only looks at feature cells
        features_only = tuple(c for c in table.schema if c.role != TARGET)
        table = DataTable(
            features_only,
            {c.name: table.column(c.name) for c in features_only},
            table.n_rows,
        )
        if args.missing_policy == IMPUTE:
            table = resolve_missing(table, IMPUTE).table
            kept = np.arange(table.n_rows)
        else:
            keep = np.ones(table.n_rows, dtype=bool)
            for name, _ in model.encoder.features:
                keep &= ~table.column(name).missing
            kept = np.nonzero(keep)[0]
            table = table.take(kept)
    except (TabgainError, OSError) as exc:
        return _fail("score", 3, exc)
    try:
        scores = predict_scores(model, table)
        positive = model.encoder.positive
        negative = model.encoder.negative_label
        rows = [
            {
                "row": int(kept[i]),
                "score": float(scores[i]),
                "label": positive if scores[i] >= args.threshold else negative,
            }
            for i in range(len(scores))
        ]
        doc = {
            "provenance": {
                "command": "score",
                "tool": f"tabgain {__version__}",
                "data": args.data,
                "schema": args.schema,
                "model": args.model,
                "threshold": args.threshold,
                "missing_policy": args.missing_policy,
            },
            "positive": positive,
            "n_scored": len(rows),
            "n_dropped": n_loaded - len(rows),
            "scores": rows,
        }
    except TabgainError as exc:
        return _fail("score", 4, exc)
    try:
        out = args.out or "scores.json"
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        _write(out, stable_json(doc))
    except OSError as exc:
        return _fail("score", 3, exc)
    return 0


# parser ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--data", help="input CSV file")
    sub.add_argument("--schema", help="schema JSON file")
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--seed", type=int, help="RNG seed (required, never defaulted)")
    sub.add_argument("--missing-threshold", dest="missing_threshold", type=float,
                     help="drop feature columns with a higher missing fraction (default 0.3)")
    sub.add_argument("--missing-policy", dest="missing_policy",
                     choices=(DROP_ROWS, IMPUTE),
                     help="handling for remaining missing cells (default drop_rows)")
    sub.add_argument("--out-dir", dest="out_dir", help="artifact directory (default .)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tabgain",
        description="Information-gain feature ranking and cross-validated "
        "binary classification for tabular data.",
    )
    parser.add_argument("--version", action="version", version=f"tabgain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank features by cross-validated information gain")
    _add_common(p_rank)
    p_rank.add_argument("--k", type=int, help="number of folds (default 10)")
    p_rank.add_argument("--bins", type=int, help="discretization bins (default 10)")
    p_rank.set_defaults(func=cmd_rank)

    p_eval = sub.add_parser("evaluate", help="cross-validate models and report metrics")
    _add_common(p_eval)
    p_eval.add_argument("--k", type=int, help="number of folds (default 10)")
    p_eval.add_argument("--models", type=lambda s: [t.strip() for t in s.split(",")],
                        help="comma-separated algorithms (default: all five)")
    p_eval.add_argument("--positive", help="target value treated as positive (default yes)")
    p_eval.add_argument("--repeats", type=int,
                        help="rerun with derived seeds and record pooled AUCs")
    p_eval.set_defaults(func=cmd_evaluate)

    p_synth = sub.add_parser("synth", help="generate a planted-structure dataset")
    p_synth.add_argument("--rows", type=int, required=True)
    p_synth.add_argument("--pos-rate", dest="pos_rate", type=float, default=0.5)
    p_synth.add_argument("--seed", type=int)
    p_synth.add_argument("--strengths", default="1.0,0.8,0.6,0.4,0.2,0.0",
                         help="comma-separated dependency strengths, one per feature")
    p_synth.add_argument("--kinds", help="comma-separated cat|num per feature (default cat)")
    p_synth.add_argument("--cat-values", dest="cat_values", type=int, default=2,
                         help="alphabet size for categorical features")
    p_synth.add_argument("--missing-rates", dest="missing_rates",
                         help="comma-separated missing rates (one value broadcasts)")
    p_synth.add_argument("--out-dir", dest="out_dir", default=".")
    p_synth.add_argument("--out-csv", dest="out_csv")
    p_synth.add_argument("--out-schema", dest="out_schema")
    p_synth.set_defaults(func=cmd_synth)

    p_train = sub.add_parser("train", help="train one model and save it as JSON")
    _add_common(p_train)
    p_train.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p_train.add_argument("--hp", action="append",
                         help="hyperparameter override key=value (repeatable)")
    p_train.add_argument("--positive", help="target value treated as positive (default yes)")
    p_train.add_argument("--out", help="model file path (default <out-dir>/model.json)")
    p_train.set_defaults(func=cmd_train)

    p_score = sub.add_parser("score", help="score rows with a saved model")
    p_score.add_argument("--data", required=True)
    p_score.add_argument("--schema", required=True)
    p_score.add_argument("--model", required=True)
    p_score.add_argument("--threshold", type=float, default=0.5)
    p_score.add_argument("--missing-policy", dest="missing_policy",
                         choices=(DROP_ROWS, IMPUTE), default=DROP_ROWS)
    p_score.add_argument("--out", help="output path (default scores.json)")
    p_score.set_defaults(func=cmd_score)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)
