"""Support vector machine trained with sequential minimal optimization.

Platt-style pairwise ascent on the dual with a linear (degree-1 polynomial)
kernel over feature-standardized inputs. The score is the raw signed margin,
used for ranking; the decision threshold is zero. The KKT residuals of the
converged multipliers are bounded by the working tolerance by construction
of the stopping rule and can be recomputed via :func:`kkt_residuals`.

The inner optimization loop is JIT-compiled; its only randomness (the
fallback scan start positions of Platt's second-choice heuristic) comes from
a seeded xorshift generator, so training is fully seed-deterministic.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .treecore import _next_u64, _seed_state

_ALPHA_EPS = 1e-8
_MAX_PASSES = 10_000


def _standardize_fit(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    sigma = np.where(sigma == 0.0, 1.0, sigma)
    return mu, sigma


@njit(cache=True)
def _smo_solve(K, t, C, tol, seed):
    n = t.shape[0]
    alpha = np.zeros(n)
    errors = -t.copy()  # f(x) = 0 initially, E = f - t
    b = 0.0
    rng = _seed_state(seed)

    def take_step(i1, i2, b_val):
        if i1 == i2:
            return False, b_val
        a1, a2 = alpha[i1], alpha[i2]
        y1, y2 = t[i1], t[i2]
        e1, e2 = errors[i1], errors[i2]
        s = y1 * y2
        if y1 != y2:
            lo = max(0.0, a2 - a1)
            hi = min(C, C + a2 - a1)
        else:
            lo = max(0.0, a2 + a1 - C)
            hi = min(C, a2 + a1)
        if lo >= hi:
            return False, b_val
        eta = K[i1, i1] + K[i2, i2] - 2.0 * K[i1, i2]
        if eta <= 0.0:
            return False, b_val  # duplicate points under a linear kernel
        a2_new = a2 + y2 * (e1 - e2) / eta
        if a2_new < lo:
            a2_new = lo
        elif a2_new > hi:
            a2_new = hi
        if abs(a2_new - a2) < _ALPHA_EPS * (a2_new + a2 + _ALPHA_EPS):
            return False, b_val
        a1_new = a1 + s * (a2 - a2_new)
        d1 = y1 * (a1_new - a1)
        d2 = y2 * (a2_new - a2)
        b1 = b_val + e1 + d1 * K[i1, i1] + d2 * K[i1, i2]
        b2 = b_val + e2 + d1 * K[i1, i2] + d2 * K[i2, i2]
        if 0.0 < a1_new < C:
            b_new = b1
        elif 0.0 < a2_new < C:
            b_new = b2
        else:
            b_new = 0.5 * (b1 + b2)
        for k in range(n):
            errors[k] += d1 * K[i1, k] + d2 * K[i2, k] - (b_new - b_val)
        alpha[i1] = a1_new
        alpha[i2] = a2_new
        return True, b_new

    num_changed = 0
    examine_all = True
    passes = 0
    while (num_changed > 0 or examine_all) and passes < _MAX_PASSES:
        passes += 1
        num_changed = 0
        for i2 in range(n):
            if not examine_all:
                if alpha[i2] <= _ALPHA_EPS or alpha[i2] >= C - _ALPHA_EPS:
                    continue
            y2 = t[i2]
            e2 = errors[i2]
            r2 = e2 * y2
            if not ((r2 < -tol and alpha[i2] < C) or (r2 > tol and alpha[i2] > 0.0)):
                continue
            stepped = False
            # second-choice heuristic: maximise |E1 - E2| over unbound alphas
            best = -1
            best_gap = -1.0
            for k in range(n):
                if _ALPHA_EPS < alpha[k] < C - _ALPHA_EPS:
                    gap = abs(errors[k] - e2)
                    if gap > best_gap:
                        best_gap = gap
                        best = k
            if best >= 0:
                stepped, b = take_step(best, i2, b)
            if not stepped:
                rng, r = _next_u64(rng)
                start = np.int64(r % np.uint64(n))
                for off in range(n):
                    k = (start + off) % n
                    if _ALPHA_EPS < alpha[k] < C - _ALPHA_EPS:
                        stepped, b = take_step(k, i2, b)
                        if stepped:
                            break
            if not stepped:
                rng, r = _next_u64(rng)
                start = np.int64(r % np.uint64(n))
                for off in range(n):
                    k = (start + off) % n
                    stepped, b = take_step(k, i2, b)
                    if stepped:
                        break
            if stepped:
                num_changed += 1
        if examine_all:
            examine_all = False
        elif num_changed == 0:
            examine_all = True
    return alpha, b


def train_smo(X: np.ndarray, y: np.ndarray, params) -> dict:
    mu, sigma = _standardize_fit(X)
    Xs = (X - mu) / sigma
    t = np.where(y, 1.0, -1.0)
    K = np.ascontiguousarray(Xs @ Xs.T)
    alpha, b = _smo_solve(K, t, params.smo_c, params.smo_tolerance, params.seed)
    w = (alpha * t) @ Xs
    return {
        "w": w,
        "b": b,
        "mu": mu,
        "sigma": sigma,
        "alpha": alpha,
        "targets": t,
        "train_scaled": Xs,
    }


def score_smo(state: dict, X: np.ndarray) -> np.ndarray:
    Xs = (X - state["mu"]) / state["sigma"]
    return Xs @ state["w"] - state["b"]


def kkt_residuals(state: dict, C: float) -> np.ndarray:
    """Per-instance KKT violation amounts at the converged multipliers."""
    alpha, t, Xs = state["alpha"], state["targets"], state["train_scaled"]
    margins = t * (Xs @ state["w"] - state["b"])
    res = np.zeros_like(alpha)
    at_zero = alpha <= _ALPHA_EPS
    at_c = alpha >= C - _ALPHA_EPS
    between = ~at_zero & ~at_c
    res[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    res[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    res[between] = np.abs(1.0 - margins[between])
    return res
