"""Flat-array binary decision tree induction (shared by J48 and the forest).

Trees live in parallel arrays (feature, threshold, left, right, true/total
counts) so growth and application can be JIT-compiled. Determinism: features
are examined in a fixed order (all features ascending, or a seeded partial
Fisher-Yates draw for random subsets), candidate thresholds ascending, and a
strictly-greater comparison keeps the first best split.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U64 = np.uint64


@njit(cache=True)
def _next_u64(state):
    state ^= state >> _U64(12)
    state ^= state << _U64(25)
    state ^= state >> _U64(27)
    return state, state * _U64(2685821657736338717)


@njit(cache=True)
def _seed_state(seed):
    z = _U64(seed) + _U64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    z = z ^ (z >> _U64(31))
    return z if z != _U64(0) else _U64(0x106689D45497FDB5)


@njit(cache=True)
def _entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p))


@njit(cache=True)
def grow_tree(X, y, min_leaf, mtry, use_gain_ratio, seed):
    """Grow one unweighted binary tree; returns its flat arrays.

    X: (n, F) float64; y: (n,) int64 in {0,1}; mtry >= F means all features.
    """
    n, n_features = X.shape
    max_nodes = 2 * n + 3
    feature = np.full(max_nodes, -1, np.int64)
    thresh = np.zeros(max_nodes, np.float64)
    left = np.full(max_nodes, -1, np.int64)
    right = np.full(max_nodes, -1, np.int64)
    n_true = np.zeros(max_nodes, np.int64)
    n_tot = np.zeros(max_nodes, np.int64)

    idx = np.arange(n)
    buf = np.empty(n, np.int64)
    stack_node = np.empty(max_nodes, np.int64)
    stack_lo = np.empty(max_nodes, np.int64)
    stack_hi = np.empty(max_nodes, np.int64)
    stack_node[0], stack_lo[0], stack_hi[0] = 0, 0, n
    sp = 1
    node_count = 1
    feat_order = np.empty(n_features, np.int64)
    rng = _seed_state(seed)

    while sp > 0:
        sp -= 1
        node, lo, hi = stack_node[sp], stack_lo[sp], stack_hi[sp]
        m = hi - lo
        t = 0
        for k in range(lo, hi):
            t += y[idx[k]]
        n_true[node] = t
        n_tot[node] = m
        if t == 0 or t == m or m < 2 * min_leaf:
            continue

        q = n_features
        for j in range(n_features):
            feat_order[j] = j
        if mtry < n_features:
            q = mtry
            for j in range(q):
                rng, r = _next_u64(rng)
                pick = j + np.int64(r % _U64(n_features - j))
                tmp = feat_order[j]
                feat_order[j] = feat_order[pick]
                feat_order[pick] = tmp

        h_parent = _entropy(t / m)
        best_crit = 0.0
        best_f = -1
        best_thr = 0.0
        vals = np.empty(m, np.float64)
        labs = np.empty(m, np.int64)
        for jj in range(q):
            f = feat_order[jj]
            for k in range(m):
                vals[k] = X[idx[lo + k], f]
            order = np.argsort(vals, kind="mergesort")
            for k in range(m):
                labs[k] = y[idx[lo + order[k]]]
            ct = 0
            for pos in range(m - 1):
                ct += labs[pos]
                v_here = vals[order[pos]]
                v_next = vals[order[pos + 1]]
                if v_here == v_next:
                    continue
                nl = pos + 1
                nr = m - nl
                if nl < min_leaf or nr < min_leaf:
                    continue
                h_l = _entropy(ct / nl)
                h_r = _entropy((t - ct) / nr)
                gain = h_parent - (nl * h_l + nr * h_r) / m
                if gain <= 1e-12:
                    continue
                if use_gain_ratio:
                    crit = gain / _entropy(nl / m)
                else:
                    crit = gain
                if crit > best_crit:
                    best_crit = crit
                    best_f = f
                    best_thr = 0.5 * (v_here + v_next)
        if best_f < 0:
            continue

        # stable partition of idx[lo:hi] around the chosen threshold
        w = 0
        for k in range(lo, hi):
            if X[idx[k], best_f] <= best_thr:
                buf[w] = idx[k]
                w += 1
        n_left = w
        for k in range(lo, hi):
            if X[idx[k], best_f] > best_thr:
                buf[w] = idx[k]
                w += 1
        for k in range(m):
            idx[lo + k] = buf[k]

        feature[node] = best_f
        thresh[node] = best_thr
        left[node] = node_count
        right[node] = node_count + 1
        stack_node[sp], stack_lo[sp], stack_hi[sp] = node_count, lo, lo + n_left
        sp += 1
        stack_node[sp], stack_lo[sp], stack_hi[sp] = node_count + 1, lo + n_left, hi
        sp += 1
        node_count += 2

    return (
        feature[:node_count].copy(),
        thresh[:node_count].copy(),
        left[:node_count].copy(),
        right[:node_count].copy(),
        n_true[:node_count].copy(),
        n_tot[:node_count].copy(),
    )


@njit(cache=True)
def apply_tree(feature, thresh, left, right, X):
    """Leaf index reached by every row of X."""
    n = X.shape[0]
    out = np.empty(n, np.int64)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= thresh[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out


class FlatTree:
    """Python-side view of a grown tree with scoring helpers."""

    __slots__ = ("feature", "thresh", "left", "right", "n_true", "n_tot")

    def __init__(self, feature, thresh, left, right, n_true, n_tot):
        self.feature = feature
        self.thresh = thresh
        self.left = left
        self.right = right
        self.n_true = n_true
        self.n_tot = n_tot

    @classmethod
    def grow(cls, X, y, min_leaf, mtry, use_gain_ratio, seed) -> "FlatTree":
        arrays = grow_tree(
            np.ascontiguousarray(X, dtype=np.float64),
            y.astype(np.int64),
            min_leaf,
            mtry,
            use_gain_ratio,
            seed,
        )
        return cls(*arrays)

    def leaves_for(self, X) -> np.ndarray:
        return apply_tree(
            self.feature, self.thresh, self.left, self.right,
            np.ascontiguousarray(X, dtype=np.float64),
        )

    def laplace_scores(self, X) -> np.ndarray:
        leaf = self.leaves_for(X)
        return (self.n_true[leaf] + 1.0) / (self.n_tot[leaf] + 2.0)

    def majority_votes(self, X) -> np.ndarray:
        leaf = self.leaves_for(X)
        return 2 * self.n_true[leaf] >= self.n_tot[leaf]

    def to_jsonable(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "thresh": self.thresh.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "n_true": self.n_true.tolist(),
            "n_tot": self.n_tot.tolist(),
        }

    @classmethod
    def from_jsonable(cls, d: dict) -> "FlatTree":
        return cls(
            np.asarray(d["feature"], dtype=np.int64),
            np.asarray(d["thresh"], dtype=np.float64),
            np.asarray(d["left"], dtype=np.int64),
            np.asarray(d["right"], dtype=np.int64),
            np.asarray(d["n_true"], dtype=np.int64),
            np.asarray(d["n_tot"], dtype=np.int64),
        )
