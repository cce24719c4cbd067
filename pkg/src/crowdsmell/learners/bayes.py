"""Gaussian naive Bayes with a variance floor for constant features."""

from __future__ import annotations

import numpy as np


def train_bayes(X: np.ndarray, y: np.ndarray, params) -> dict:
    floor = params.nb_variance_floor
    state: dict = {"prior_true": float(y.mean())}
    for label, mask in (("true", y), ("false", ~y)):
        rows = X[mask]
        state[f"mean_{label}"] = rows.mean(axis=0)
        state[f"var_{label}"] = np.maximum(rows.var(axis=0), floor)
    return state


def _log_likelihood(X: np.ndarray, mean: np.ndarray, var: np.ndarray) -> np.ndarray:
    return (-0.5 * (np.log(2.0 * np.pi * var) + (X - mean) ** 2 / var)).sum(axis=1)


def score_bayes(state: dict, X: np.ndarray) -> np.ndarray:
    log_t = _log_likelihood(X, state["mean_true"], state["var_true"]) + np.log(
        state["prior_true"]
    )
    log_f = _log_likelihood(X, state["mean_false"], state["var_false"]) + np.log(
        1.0 - state["prior_true"]
    )
    peak = np.maximum(log_t, log_f)
    pt = np.exp(log_t - peak)
    pf = np.exp(log_f - peak)
    return pt / (pt + pf)
