"""C4.5-style pruned decision tree.

Gain-ratio binary splits on numeric attributes, minimum 2 instances per
leaf, and bottom-up subtree replacement driven by the pessimistic error
estimate: the exact binomial upper confidence limit at CF=0.25 (solved on
the regularized incomplete beta). Mixed leaves score with Laplace smoothing;
a single-class training set yields a constant scorer at exactly 0 or 1.
"""

from __future__ import annotations

import numpy as np

from ..anova import regularized_incomplete_beta
from .treecore import FlatTree


def binomial_upper_limit(errors: float, n: float, cf: float = 0.25) -> float:
    """Largest error rate p with P(Bin(n, p) <= errors) = cf."""
    if n <= 0:
        return 0.0
    e = min(max(errors, 0.0), n)
    if e >= n:
        return 1.0
    if e == 0:
        return 1.0 - cf ** (1.0 / n)
    # P(X <= e) = I_{1-p}(n - e, e + 1), decreasing in p
    lo, hi = e / n, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        cdf = regularized_incomplete_beta(n - e, e + 1.0, 1.0 - mid)
        if cdf > cf:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def _pessimistic_prune(tree: FlatTree, cf: float) -> None:
    """Bottom-up subtree replacement on the flat arrays (in place)."""

    def walk(node: int) -> float:
        t, m = tree.n_true[node], tree.n_tot[node]
        leaf_errors = min(t, m - t)
        leaf_est = m * binomial_upper_limit(leaf_errors, m, cf)
        if tree.feature[node] < 0:
            return leaf_est
        subtree_est = walk(tree.left[node]) + walk(tree.right[node])
        if leaf_est <= subtree_est + 1e-9:
            tree.feature[node] = -1
            return leaf_est
        return subtree_est

    walk(0)


def train_j48(X: np.ndarray, y: np.ndarray, params) -> dict:
    y_int = y.astype(np.int64)
    if y_int.min() == y_int.max():
        return {"constant": float(y_int[0])}
    tree = FlatTree.grow(
        X, y_int, min_leaf=params.tree_min_leaf, mtry=X.shape[1] + 1,
        use_gain_ratio=True, seed=params.seed,
    )
    _pessimistic_prune(tree, params.tree_confidence)
    return {"tree": tree}


def score_j48(state: dict, X: np.ndarray) -> np.ndarray:
    if "constant" in state:
        return np.full(X.shape[0], state["constant"], dtype=np.float64)
    return state["tree"].laplace_scores(X)


def j48_state_to_jsonable(state: dict) -> dict:
    if "constant" in state:
        return {"constant": state["constant"]}
    return {"tree": state["tree"].to_jsonable()}


def j48_state_from_jsonable(d: dict) -> dict:
    if "constant" in d:
        return {"constant": d["constant"]}
    return {"tree": FlatTree.from_jsonable(d["tree"])}
