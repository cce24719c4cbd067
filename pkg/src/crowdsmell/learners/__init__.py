"""The six classifier kinds with a shared train/predict interface."""

from .base import (
    DISPLAY_NAMES,
    ClassifierKind,
    Prediction,
    TrainedModel,
    TrainParams,
    model_from_jsonable,
    model_to_jsonable,
    predict,
    score_batch,
    train,
    train_arrays,
)

__all__ = [
    "ClassifierKind",
    "DISPLAY_NAMES",
    "Prediction",
    "TrainParams",
    "TrainedModel",
    "model_from_jsonable",
    "model_to_jsonable",
    "predict",
    "score_batch",
    "train",
    "train_arrays",
]
