"""Decision-tree induction by information gain, and bagged forests of trees.

Trees work on encoded arrays: numeric features as float64 values, categorical
features as int32 codes. Numeric splits send v <= threshold left; categorical
splits are multiway with one child per training-time category observed at the
node and a fallback leaf (the node's own class distribution) for everything
else, including the -1 unseen-category code.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyTableError
from .table import NUMERIC

DEFAULT_MAX_DEPTH = 12
DEFAULT_MIN_SAMPLES_SPLIT = 2


@dataclass(frozen=True)
class Leaf:
    n0: int  # negative-class training rows at the leaf
    n1: int

    @property
    def p_pos(self):
        return self.n1 / (self.n0 + self.n1)


@dataclass(frozen=True)
class NumericNode:
    feature: str
    threshold: float
    left: object  # rows with value <= threshold
    right: object


@dataclass(frozen=True)
class CatNode:
    feature: str
    children: dict  # category code -> subtree
    fallback: Leaf  # receives unseen codes and categories absent at this node


def _grow(columns, names, kinds, n_cats, labels, depth, max_depth, min_split, rng, m):
    n = labels.shape[0]
    n1 = int(labels.sum())
    if n1 == 0 or n1 == n or depth >= max_depth or n < min_split:
        return Leaf(n - n1, n1)

    d = len(names)
    if m is None:
        cand = range(d)  # full set in schema order; no RNG draw
    else:
        cand = np.sort(rng.choice(d, size=m, replace=False))

    best = None  # (gain, feature index, threshold or None); first index wins ties
    for j in cand:
        name = names[j]
        if kinds[j] == NUMERIC:
            values = columns[name]
            order = np.argsort(values, kind="stable")
            found, gain, thr = _kernels.best_numeric_split(values[order], labels[order])
            if found and (best is None or gain > best[0]):
                best = (gain, j, thr)
        else:
            found, gain = _kernels.best_categorical_split(
                columns[name], n_cats[name], labels
            )
            if found and (best is None or gain > best[0]):
                best = (gain, j, None)

    if best is None:
        return Leaf(n - n1, n1)
    # zero-gain splits are still taken on impure nodes so consistent data
    # (e.g. XOR) is fully separated; every split shrinks both sides
    _, j, thr = best
    name = names[j]
    if kinds[j] == NUMERIC:
        mask = columns[name] <= thr
        left = {nm: arr[mask] for nm, arr in columns.items()}
        right = {nm: arr[~mask] for nm, arr in columns.items()}
        return NumericNode(
            name,
            thr,
            _grow(left, names, kinds, n_cats, labels[mask], depth + 1, max_depth, min_split, rng, m),
            _grow(right, names, kinds, n_cats, labels[~mask], depth + 1, max_depth, min_split, rng, m),
        )
    codes = columns[name]
    children = {}
    for code in range(n_cats[name]):
        mask = codes == code
        if mask.any():
            sub = {nm: arr[mask] for nm, arr in columns.items()}
            children[int(code)] = _grow(
                sub, names, kinds, n_cats, labels[mask], depth + 1, max_depth, min_split, rng, m
            )
    return CatNode(name, children, Leaf(n - n1, n1))


def train_tree_arrays(
    columns,
    names,
    kinds,
    n_cats,
    labels,
    max_depth=DEFAULT_MAX_DEPTH,
    min_samples_split=DEFAULT_MIN_SAMPLES_SPLIT,
    rng=None,
    max_features=None,
):
    """Grow one tree. max_features=None evaluates every feature per split."""
    if labels.shape[0] == 0:
        raise EmptyTableError("cannot train a tree on zero rows")
    m = max_features
    if m is not None and m >= len(names):
        m = None
    return _grow(
        columns, names, kinds, n_cats, labels, 0, max_depth, min_samples_split, rng, m
    )


def train_forest_arrays(
    columns,
    names,
    kinds,
    n_cats,
    labels,
    n_trees=100,
    bootstrap=True,
    max_features="sqrt",
    max_depth=DEFAULT_MAX_DEPTH,
    min_samples_split=DEFAULT_MIN_SAMPLES_SPLIT,
    seed=0,
):
    """Grow n_trees trees, each with its own child RNG derived from (seed, t).

    Bootstrap resamples n rows with replacement per tree; max_features "sqrt"
    evaluates ceil(sqrt(d)) random features per split, "all" evaluates every
    feature (and draws nothing from the RNG, so a 1-tree, no-bootstrap forest
    reproduces the plain decision tree exactly).
    """
    n = labels.shape[0]
    if n == 0:
        raise EmptyTableError("cannot train a forest on zero rows")
    d = len(names)
    if max_features == "sqrt":
        m = math.ceil(math.sqrt(d))
    elif max_features == "all":
        m = None
    else:
        m = int(max_features)
    trees = []
    for t in range(n_trees):
        rng = np.random.default_rng([seed, t])
        if bootstrap:
            idx = rng.integers(0, n, n)
            cols_t = {nm: arr[idx] for nm, arr in columns.items()}
            labels_t = labels[idx]
        else:
            cols_t = columns
            labels_t = labels
        trees.append(
            train_tree_arrays(
                cols_t,
                names,
                kinds,
                n_cats,
                labels_t,
                max_depth=max_depth,
                min_samples_split=min_samples_split,
                rng=rng,
                max_features=m,
            )
        )
    return trees


def _score_into(node, columns, idx, out):
    if isinstance(node, Leaf):
        out[idx] = node.p_pos
        return
    if isinstance(node, NumericNode):
        mask = columns[node.feature][idx] <= node.threshold
        _score_into(node.left, columns, idx[mask], out)
        _score_into(node.right, columns, idx[~mask], out)
        return
    codes = columns[node.feature][idx]
    handled = np.zeros(idx.shape[0], dtype=bool)
    for code, child in node.children.items():
        mask = codes == code
        if mask.any():
            _score_into(child, columns, idx[mask], out)
            handled |= mask
    rest = idx[~handled]
    if rest.shape[0]:
        out[rest] = node.fallback.p_pos


def score_tree(node, columns, n_rows):
    """Positive-class probability per row from one tree."""
    out = np.empty(n_rows, dtype=np.float64)
    _score_into(node, columns, np.arange(n_rows), out)
    return out


def score_forest(trees, columns, n_rows):
    """Mean of the member trees' probabilities, accumulated in tree order."""
    total = np.zeros(n_rows, dtype=np.float64)
    for tree in trees:
        total += score_tree(tree, columns, n_rows)
    return total / float(len(trees))


# JSON layout ------------------------------------------------------------------

def node_to_doc(node):
    if isinstance(node, Leaf):
        return {"type": "leaf", "n0": node.n0, "n1": node.n1}
    if isinstance(node, NumericNode):
        return {
            "type": "numeric",
            "feature": node.feature,
            "threshold": node.threshold,
            "left": node_to_doc(node.left),
            "right": node_to_doc(node.right),
        }
    return {
        "type": "categorical",
        "feature": node.feature,
        "children": {str(code): node_to_doc(child) for code, child in node.children.items()},
        "fallback": node_to_doc(node.fallback),
    }


def node_from_doc(doc):
    if doc["type"] == "leaf":
        return Leaf(doc["n0"], doc["n1"])
    if doc["type"] == "numeric":
        return NumericNode(
            doc["feature"],
            doc["threshold"],
            node_from_doc(doc["left"]),
            node_from_doc(doc["right"]),
        )
    return CatNode(
        doc["feature"],
        {int(code): node_from_doc(child) for code, child in doc["children"].items()},
        node_from_doc(doc["fallback"]),
    )
