"""Classifier kinds, training parameters, and the shared model interface."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from ..entities import MetricVector
from ..errors import DegenerateDataError, FeatureMismatchError, NonFiniteFeatureError
from . import adaboost, bayes, forest, j48, mlp, smo


class ClassifierKind(enum.Enum):
    J48_TREE = "j48"
    RANDOM_FOREST = "random_forest"
    ADABOOST_M1 = "adaboost_m1"
    SMO_SVM = "smo"
    MLP = "mlp"
    NAIVE_BAYES = "naive_bayes"


# Display names as the result tables print them.
DISPLAY_NAMES = {
    ClassifierKind.J48_TREE: "J48",
    ClassifierKind.RANDOM_FOREST: "Random Forest",
    ClassifierKind.ADABOOST_M1: "AdaBoostM1",
    ClassifierKind.SMO_SVM: "SMO",
    ClassifierKind.MLP: "MultilayerPerceptron",
    ClassifierKind.NAIVE_BAYES: "NaiveBayes",
}

# Kinds that must see both labels during training.
_NEEDS_BOTH_CLASSES = frozenset(
    (ClassifierKind.SMO_SVM, ClassifierKind.MLP, ClassifierKind.NAIVE_BAYES)
)


@dataclass(frozen=True)
class TrainParams:
    kind: ClassifierKind
    seed: int = 42
    tree_confidence: float = 0.25
    tree_min_leaf: int = 2
    forest_trees: int = 100
    boost_rounds: int = 10
    smo_c: float = 1.0
    smo_tolerance: float = 1e-3
    mlp_learning_rate: float = 0.3
    mlp_momentum: float = 0.2
    mlp_epochs: int = 500
    nb_variance_floor: float = 1e-9


@dataclass
class TrainedModel:
    kind: ClassifierKind
    params: TrainParams
    feature_names: list[str]
    state: dict

    @property
    def threshold(self) -> float:
        return 0.0 if self.kind is ClassifierKind.SMO_SVM else 0.5


@dataclass(frozen=True)
class Prediction:
    label: bool
    score: float


_TRAINERS = {
    ClassifierKind.J48_TREE: j48.train_j48,
    ClassifierKind.RANDOM_FOREST: forest.train_forest,
    ClassifierKind.ADABOOST_M1: adaboost.train_adaboost,
    ClassifierKind.SMO_SVM: smo.train_smo,
    ClassifierKind.MLP: mlp.train_mlp,
    ClassifierKind.NAIVE_BAYES: bayes.train_bayes,
}

_SCORERS = {
    ClassifierKind.J48_TREE: j48.score_j48,
    ClassifierKind.RANDOM_FOREST: forest.score_forest,
    ClassifierKind.ADABOOST_M1: adaboost.score_adaboost,
    ClassifierKind.SMO_SVM: smo.score_smo,
    ClassifierKind.MLP: mlp.score_mlp,
    ClassifierKind.NAIVE_BAYES: bayes.score_bayes,
}


def train_arrays(
    X: np.ndarray, y: np.ndarray, feature_names: list[str], params: TrainParams
) -> TrainedModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=bool)
    if not np.isfinite(X).all():
        raise NonFiniteFeatureError("training matrix contains NaN or infinity")
    if X.shape[0] < 2:
        raise DegenerateDataError("need at least 2 training instances")
    single_class = bool(y.all() or (~y).all())
    if single_class and params.kind in _NEEDS_BOTH_CLASSES:
        raise DegenerateDataError(
            f"{params.kind.value} needs both labels in the training data"
        )
    state = _TRAINERS[params.kind](X, y, params)
    return TrainedModel(
        kind=params.kind,
        params=params,
        feature_names=list(feature_names),
        state=state,
    )


def train(dataset, params: TrainParams) -> TrainedModel:
    """Fit one classifier on an OracleDataset."""
    from ..oracle import to_matrix

    X, y, names = to_matrix(dataset)
    return train_arrays(X, y, names, params)


def score_batch(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != len(model.feature_names):
        raise FeatureMismatchError(
            f"expected {len(model.feature_names)} features, got {X.shape}"
        )
    if not np.isfinite(X).all():
        raise NonFiniteFeatureError("prediction input contains NaN or infinity")
    return np.asarray(_SCORERS[model.kind](model.state, X), dtype=np.float64)


def predict(model: TrainedModel, vector) -> Prediction:
    """Score one instance; the label is score >= the kind's threshold."""
    if isinstance(vector, MetricVector):
        values = vector.values
    elif isinstance(vector, dict):
        values = vector
    else:
        arr = np.asarray(vector, dtype=np.float64).reshape(1, -1)
        score = float(score_batch(model, arr)[0])
        return Prediction(label=score >= model.threshold, score=score)
    if set(values) != set(model.feature_names):
        raise FeatureMismatchError("vector features do not match the model")
    arr = np.array([[values[a] for a in model.feature_names]], dtype=np.float64)
    score = float(score_batch(model, arr)[0])
    return Prediction(label=score >= model.threshold, score=score)


# -- serialization ---------------------------------------------------------------

_FORMAT = 1


def model_to_jsonable(model: TrainedModel) -> dict:
    kind = model.kind
    state = model.state
    if kind is ClassifierKind.J48_TREE:
        payload = j48.j48_state_to_jsonable(state)
    elif kind is ClassifierKind.RANDOM_FOREST:
        payload = forest.forest_state_to_jsonable(state)
    elif kind is ClassifierKind.ADABOOST_M1:
        payload = {"stumps": state["stumps"], "alphas": state["alphas"]}
    elif kind is ClassifierKind.SMO_SVM:
        payload = {
            "w": state["w"].tolist(),
            "b": state["b"],
            "mu": state["mu"].tolist(),
            "sigma": state["sigma"].tolist(),
        }
    elif kind is ClassifierKind.MLP:
        payload = {
            "weights": {k: v.tolist() for k, v in state["weights"].items()},
            "mins": state["mins"].tolist(),
            "ranges": state["ranges"].tolist(),
        }
    else:
        payload = {
            k: (v.tolist() if isinstance(v, np.ndarray) else v)
            for k, v in state.items()
        }
    params = asdict(model.params)
    params["kind"] = model.kind.value
    return {
        "format": _FORMAT,
        "kind": kind.value,
        "params": params,
        "feature_names": model.feature_names,
        "state": payload,
    }


def model_from_jsonable(doc: dict) -> TrainedModel:
    if doc.get("format") != _FORMAT:
        raise ValueError(f"unsupported model format {doc.get('format')!r}")
    kind = ClassifierKind(doc["kind"])
    raw_params = dict(doc["params"])
    raw_params["kind"] = kind
    params = TrainParams(**raw_params)
    payload = doc["state"]
    if kind is ClassifierKind.J48_TREE:
        state = j48.j48_state_from_jsonable(payload)
    elif kind is ClassifierKind.RANDOM_FOREST:
        state = forest.forest_state_from_jsonable(payload)
    elif kind is ClassifierKind.ADABOOST_M1:
        state = {
            "stumps": payload["stumps"],
            "alphas": payload["alphas"],
            "round_errors": [],
        }
    elif kind is ClassifierKind.SMO_SVM:
        state = {
            "w": np.asarray(payload["w"], dtype=np.float64),
            "b": float(payload["b"]),
            "mu": np.asarray(payload["mu"], dtype=np.float64),
            "sigma": np.asarray(payload["sigma"], dtype=np.float64),
        }
    elif kind is ClassifierKind.MLP:
        state = {
            "weights": {
                k: np.asarray(v, dtype=np.float64)
                for k, v in payload["weights"].items()
            },
            "mins": np.asarray(payload["mins"], dtype=np.float64),
            "ranges": np.asarray(payload["ranges"], dtype=np.float64),
        }
    else:
        state = {
            k: (np.asarray(v, dtype=np.float64) if isinstance(v, list) else v)
            for k, v in payload.items()
        }
    return TrainedModel(
        kind=kind, params=params, feature_names=list(doc["feature_names"]), state=state
    )
