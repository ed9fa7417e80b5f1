"""Benchmark the compiled split kernels against the pure-Python fallback.

Runs the same split searches through both backends, checks the results are
bitwise identical, and reports wall-clock timings.

    python benchmarks/bench_kernels.py [--rows 20000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from tabgain import _kernels
from tabgain.models import ModelSpec, predict_scores, train_model
from tabgain.synth import PlantedFeature, PlantedSpec, gen_planted_dataset


def time_call(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_numeric(rows, repeats, rng):
    values = np.sort(rng.choice(rng.random(rows // 4), size=rows))
    labels = (rng.random(rows) < 0.5).astype(np.uint8)
    results = {}
    for backend in ("compiled", "python"):
        _kernels.set_backend(backend)
        results[backend] = time_call(
            lambda: _kernels.best_numeric_split(values, labels), repeats
        )
    return results


def bench_categorical(rows, repeats, rng):
    codes = rng.integers(0, 12, rows).astype(np.int32)
    labels = (rng.random(rows) < 0.5).astype(np.uint8)
    results = {}
    for backend in ("compiled", "python"):
        _kernels.set_backend(backend)
        results[backend] = time_call(
            lambda: _kernels.best_categorical_split(codes, 12, labels), repeats
        )
    return results


def bench_forest(rows, repeats, rng):
    spec = PlantedSpec(
        n_rows=rows,
        features=(
            PlantedFeature("a", 0.7),
            PlantedFeature("x", 0.5, kind="numeric"),
            PlantedFeature("y", 0.3, kind="numeric"),
            PlantedFeature("c", 0.2, n_values=5),
        ),
        positive_rate=0.4,
        seed=1,
    )
    table = gen_planted_dataset(spec)
    mspec = ModelSpec(algorithm="random_forest", hyperparameters={"n_trees": 20})
    results = {}
    for backend in ("compiled", "python"):
        _kernels.set_backend(backend)
        timing, model = time_call(
            lambda: train_model(table, mspec, positive="yes"), repeats
        )
        results[backend] = (timing, predict_scores(model, table).tolist())
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAVE_COMPILED:
        raise SystemExit("compiled kernels not available; nothing to compare")

    rng = np.random.default_rng(0)
    benches = (
        ("numeric split", bench_numeric),
        ("categorical split", bench_categorical),
        ("forest training (20 trees)", bench_forest),
    )
    print(f"rows={args.rows}, repeats={args.repeats} (best-of)")
    print(f"{'benchmark':28s} {'compiled':>12s} {'python':>12s} {'speedup':>9s}")
    for name, fn in benches:
        results = fn(args.rows, args.repeats, rng)
        (tc, rc), (tp, rp) = results["compiled"], results["python"]
        if rc != rp:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:28s} {tc * 1e3:10.2f}ms {tp * 1e3:10.2f}ms {tp / tc:8.1f}x")
    _kernels.set_backend("compiled")


if __name__ == "__main__":
    main()
