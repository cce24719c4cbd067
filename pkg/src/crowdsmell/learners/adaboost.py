"""AdaBoost.M1 over decision stumps, weighted training (no resampling).

Each round fits the stump minimizing weighted error, then multiplies the
weights of correctly classified instances by beta = err/(1 - err) and
renormalizes; the just-trained stump's weighted error on the updated
distribution is exactly one half, which the training loop records for the
invariant check. The score is the alpha-weighted fraction of TRUE votes.
"""

from __future__ import annotations

import math

import numpy as np


def _train_stump(X: np.ndarray, y: np.ndarray, w: np.ndarray) -> dict:
    """Best single-threshold stump under instance weights.

    Ties resolve to the lowest feature index, then the lowest threshold,
    matching the deterministic scan order.
    """
    n, n_features = X.shape
    w_true = float(w[y].sum())
    w_false = float(w[~y].sum())
    # Constant fallback: weighted majority on both sides (ties TRUE).
    best = {
        "feature": -1,
        "threshold": 0.0,
        "left_true": w_true >= w_false,
        "right_true": w_true >= w_false,
    }
    best_err = min(w_true, w_false)
    for f in range(n_features):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        ys = y[order]
        ws = w[order]
        cum_t = np.cumsum(np.where(ys, ws, 0.0))
        cum_f = np.cumsum(np.where(ys, 0.0, ws))
        distinct = xs[:-1] != xs[1:]
        for pos in np.nonzero(distinct)[0]:
            lt, lf = cum_t[pos], cum_f[pos]
            rt, rf = w_true - lt, w_false - lf
            err = min(lt, lf) + min(rt, rf)
            if err < best_err - 1e-15:
                best_err = err
                best = {
                    "feature": int(f),
                    "threshold": float(0.5 * (xs[pos] + xs[pos + 1])),
                    "left_true": bool(lt >= lf),
                    "right_true": bool(rt >= rf),
                }
    return best


def _stump_predict(stump: dict, X: np.ndarray) -> np.ndarray:
    if stump["feature"] < 0:
        return np.full(X.shape[0], stump["left_true"], dtype=bool)
    on_left = X[:, stump["feature"]] <= stump["threshold"]
    return np.where(on_left, stump["left_true"], stump["right_true"])


def train_adaboost(X: np.ndarray, y: np.ndarray, params) -> dict:
    n = X.shape[0]
    w = np.full(n, 1.0 / n)
    stumps: list[dict] = []
    alphas: list[float] = []
    round_errors: list[float] = []
    for _ in range(params.boost_rounds):
        stump = _train_stump(X, y, w)
        pred = _stump_predict(stump, X)
        err = float(w[pred != y].sum())
        if err < 1e-10:
            # Perfect weak learner: it decides alone.
            stumps, alphas, round_errors = [stump], [1.0], []
            break
        if err >= 0.5:
            break
        beta = err / (1.0 - err)
        alpha = math.log(1.0 / beta)
        w = np.where(pred == y, w * beta, w)
        w = w / w.sum()
        stumps.append(stump)
        alphas.append(alpha)
        round_errors.append(float(w[pred != y].sum()))
    if not stumps:
        majority = bool(y.sum() * 2 >= n)
        stumps = [{"feature": -1, "threshold": 0.0,
                   "left_true": majority, "right_true": majority}]
        alphas = [1.0]
    return {"stumps": stumps, "alphas": alphas, "round_errors": round_errors}


def score_adaboost(state: dict, X: np.ndarray) -> np.ndarray:
    total = sum(state["alphas"])
    votes = np.zeros(X.shape[0], dtype=np.float64)
    for stump, alpha in zip(state["stumps"], state["alphas"]):
        votes += alpha * _stump_predict(stump, X)
    return votes / total
