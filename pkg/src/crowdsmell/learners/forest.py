"""Random forest: bagged unpruned random trees, vote-fraction scoring.

100 members by default, each grown on a bootstrap sample with
floor(log2(F) + 1) candidate features per split. Member i derives all of its
randomness from seed + i. The forest score is exactly the fraction of member
trees voting TRUE; member votes stay inspectable for the vote-law check.
"""

from __future__ import annotations

import math

import numpy as np

from .treecore import FlatTree


def forest_mtry(n_features: int) -> int:
    return max(1, int(math.floor(math.log2(n_features) + 1))) if n_features else 1


def train_forest(X: np.ndarray, y: np.ndarray, params) -> dict:
    y_int = y.astype(np.int64)
    n = X.shape[0]
    mtry = forest_mtry(X.shape[1])
    members: list[FlatTree] = []
    for i in range(params.forest_trees):
        member_seed = params.seed + i
        rng = np.random.Generator(np.random.PCG64(member_seed))
        boot = rng.integers(0, n, size=n)
        members.append(
            FlatTree.grow(
                X[boot], y_int[boot], min_leaf=1, mtry=mtry,
                use_gain_ratio=False, seed=member_seed,
            )
        )
    return {"members": members}


def member_votes(state: dict, X: np.ndarray) -> np.ndarray:
    """(n_members, n_rows) boolean vote matrix."""
    return np.array([t.majority_votes(X) for t in state["members"]])


def score_forest(state: dict, X: np.ndarray) -> np.ndarray:
    return member_votes(state, X).mean(axis=0)


def forest_state_to_jsonable(state: dict) -> dict:
    return {"members": [t.to_jsonable() for t in state["members"]]}


def forest_state_from_jsonable(d: dict) -> dict:
    return {"members": [FlatTree.from_jsonable(t) for t in d["members"]]}
