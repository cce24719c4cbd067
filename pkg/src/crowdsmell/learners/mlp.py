"""Single-hidden-layer perceptron trained with full-batch backpropagation.

ceil((F + 2) / 2) sigmoid hidden units, sigmoid output, mean cross-entropy
loss, learning rate 0.3 with momentum 0.2 for 500 epochs. Inputs are min-max
scaled with training statistics. Full-batch gradients keep training
independent of row order up to floating-point summation.
"""

from __future__ import annotations

import math

import numpy as np


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def hidden_units(n_features: int) -> int:
    return max(1, math.ceil((n_features + 2) / 2))


def _init_params(n_features: int, n_hidden: int, seed: int) -> dict:
    rng = np.random.Generator(np.random.PCG64(seed))
    return {
        "W1": rng.uniform(-0.5, 0.5, size=(n_features, n_hidden)),
        "b1": rng.uniform(-0.5, 0.5, size=n_hidden),
        "W2": rng.uniform(-0.5, 0.5, size=(n_hidden, 1)),
        "b2": rng.uniform(-0.5, 0.5, size=1),
    }


def forward(params: dict, Xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a1 = _sigmoid(Xs @ params["W1"] + params["b1"])
    out = _sigmoid(a1 @ params["W2"] + params["b2"])[:, 0]
    return a1, out


def loss_and_grad(params: dict, Xs: np.ndarray, y01: np.ndarray) -> tuple[float, dict]:
    """Mean cross-entropy and its gradients; exposed for gradient checking."""
    n = Xs.shape[0]
    a1, out = forward(params, Xs)
    eps = 1e-12
    loss = -float(
        np.mean(y01 * np.log(out + eps) + (1.0 - y01) * np.log(1.0 - out + eps))
    )
    dz2 = ((out - y01) / n)[:, None]
    grads = {
        "W2": a1.T @ dz2,
        "b2": dz2.sum(axis=0),
    }
    da1 = dz2 @ params["W2"].T
    dz1 = da1 * a1 * (1.0 - a1)
    grads["W1"] = Xs.T @ dz1
    grads["b1"] = dz1.sum(axis=0)
    return loss, grads


def train_mlp(X: np.ndarray, y: np.ndarray, params) -> dict:
    mins = X.min(axis=0)
    ranges = X.max(axis=0) - mins
    ranges = np.where(ranges == 0.0, 1.0, ranges)
    Xs = (X - mins) / ranges
    y01 = y.astype(np.float64)
    weights = _init_params(X.shape[1], hidden_units(X.shape[1]), params.seed)
    velocity = {k: np.zeros_like(v) for k, v in weights.items()}
    for _ in range(params.mlp_epochs):
        _, grads = loss_and_grad(weights, Xs, y01)
        for k in weights:
            velocity[k] = params.mlp_momentum * velocity[k] - params.mlp_learning_rate * grads[k]
            weights[k] = weights[k] + velocity[k]
    return {"weights": weights, "mins": mins, "ranges": ranges}


def score_mlp(state: dict, X: np.ndarray) -> np.ndarray:
    Xs = (X - state["mins"]) / state["ranges"]
    _, out = forward(state["weights"], Xs)
    return out
