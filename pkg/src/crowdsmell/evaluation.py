"""Stratified cross-validation, confusion metrics, ROC/AUC, report formats.

AUC is pooled: one ranking over every out-of-fold (score, label) pair. All
preprocessing lives inside the learners and is fit on the training fold only,
so fold evaluation cannot leak test statistics. UNDEFINED metric values are
Python ``None``; they print as ``-`` in text reports and null in JSON.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FoldError, TooFewInstancesError
from .learners import (
    DISPLAY_NAMES,
    ClassifierKind,
    TrainParams,
    score_batch,
    train_arrays,
)
from .oracle import OracleDataset, to_matrix

REPORT_CSV_HEADER = (
    "Dataset,Classifier,Accuracy,TP Rate,FP Rate,Precision,Recall,F-Measure,ROC Area"
)


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(
            self.tp + other.tp,
            self.fp + other.fp,
            self.fn + other.fn,
            self.tn + other.tn,
        )


@dataclass(frozen=True)
class MetricsSummary:
    accuracy: float
    tp_rate: float | None
    fp_rate: float | None
    precision: float | None
    recall: float | None
    f_measure: float | None
    roc_auc: float | None = None


@dataclass
class EvaluationReport:
    dataset_name: str
    classifier_kind: ClassifierKind
    seed: int
    k: int
    per_fold: list[ConfusionMatrix]
    pooled: ConfusionMatrix
    per_class: dict[str, MetricsSummary]
    weighted: MetricsSummary


def stratified_folds(labels, k: int = 10, seed: int = 42) -> list[np.ndarray]:
    """Disjoint, exhaustive, seed-deterministic stratified index folds.

    Per-class counts across folds differ by at most one; the round-robin
    deal continues across classes, so total fold sizes are balanced too.
    """
    y = np.asarray(labels, dtype=bool)
    n = y.shape[0]
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise TooFewInstancesError(f"{n} instances for {k} folds")
    rng = np.random.Generator(np.random.PCG64(seed))
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for class_value in (True, False):
        idx = np.nonzero(y == class_value)[0]
        rng.shuffle(idx)
        for i in idx:
            folds[cursor % k].append(int(i))
            cursor += 1
    return [np.array(sorted(f), dtype=np.int64) for f in folds]


def confusion_from_labels(actual: np.ndarray, predicted: np.ndarray) -> ConfusionMatrix:
    actual = np.asarray(actual, dtype=bool)
    predicted = np.asarray(predicted, dtype=bool)
    return ConfusionMatrix(
        tp=int((actual & predicted).sum()),
        fp=int((~actual & predicted).sum()),
        fn=int((actual & ~predicted).sum()),
        tn=int((~actual & ~predicted).sum()),
    )


def auc(scores_with_labels) -> float | None:
    """Mann-Whitney pair-counting AUC; ties credit half. None if one class."""
    pairs = list(scores_with_labels)
    scores = np.array([s for s, _ in pairs], dtype=np.float64)
    labels = np.array([bool(l) for _, l in pairs], dtype=bool)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return None
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(labels.size, dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < labels.size:
        j = i
        while j + 1 < labels.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # average 1-based rank
        i = j + 1
    rank_sum_pos = ranks[labels].sum()
    u = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def summarize(cm: ConfusionMatrix) -> tuple[dict[str, MetricsSummary], MetricsSummary]:
    """Per-class and support-weighted summaries of one confusion matrix."""
    n = cm.n
    accuracy = (cm.tp + cm.tn) / n
    per_class: dict[str, MetricsSummary] = {}

    def one_class(tp, fp, fn, tn) -> MetricsSummary:
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        fpr = _ratio(fp, fp + tn)
        if precision is None or recall is None or (precision + recall) == 0:
            f = None
        else:
            f = 2.0 * precision * recall / (precision + recall)
        return MetricsSummary(
            accuracy=accuracy, tp_rate=recall, fp_rate=fpr,
            precision=precision, recall=recall, f_measure=f,
        )

    per_class["TRUE"] = one_class(cm.tp, cm.fp, cm.fn, cm.tn)
    per_class["FALSE"] = one_class(cm.tn, cm.fn, cm.fp, cm.tp)

    support = {"TRUE": cm.tp + cm.fn, "FALSE": cm.tn + cm.fp}

    def weighted(attr: str) -> float | None:
        total = 0.0
        for cls in ("TRUE", "FALSE"):
            if support[cls] == 0:
                continue
            value = getattr(per_class[cls], attr)
            if value is None:
                return None
            total += value * support[cls] / n
        return total

    weighted_summary = MetricsSummary(
        accuracy=accuracy,
        tp_rate=weighted("tp_rate"),
        fp_rate=weighted("fp_rate"),
        precision=weighted("precision"),
        recall=weighted("recall"),
        f_measure=weighted("f_measure"),
    )
    return per_class, weighted_summary


def cross_validate(
    dataset: OracleDataset,
    params: TrainParams,
    k: int = 10,
    seed: int = 42,
) -> EvaluationReport:
    X, y, names = to_matrix(dataset)
    folds = stratified_folds(y, k=k, seed=seed)
    per_fold: list[ConfusionMatrix] = []
    pooled_scores: list[tuple[float, bool]] = []
    all_idx = np.arange(len(y))
    for fold_no, test_idx in enumerate(folds):
        train_mask = np.ones(len(y), dtype=bool)
        train_mask[test_idx] = False
        train_idx = all_idx[train_mask]
        try:
            model = train_arrays(X[train_idx], y[train_idx], names, params)
            scores = score_batch(model, X[test_idx])
        except Exception as exc:
            raise FoldError(fold_no, exc) from exc
        predicted = scores >= model.threshold
        per_fold.append(confusion_from_labels(y[test_idx], predicted))
        pooled_scores.extend(
            (float(s), bool(t)) for s, t in zip(scores, y[test_idx])
        )
    pooled = ConfusionMatrix()
    for cm in per_fold:
        pooled = pooled + cm
    per_class, weighted = summarize(pooled)
    weighted = MetricsSummary(
        accuracy=weighted.accuracy,
        tp_rate=weighted.tp_rate,
        fp_rate=weighted.fp_rate,
        precision=weighted.precision,
        recall=weighted.recall,
        f_measure=weighted.f_measure,
        roc_auc=auc(pooled_scores),
    )
    return EvaluationReport(
        dataset_name=dataset.name,
        classifier_kind=params.kind,
        seed=seed,
        k=k,
        per_fold=per_fold,
        pooled=pooled,
        per_class=per_class,
        weighted=weighted,
    )


def evaluate_all(
    oracles: list[OracleDataset],
    seed: int = 42,
    k: int = 10,
    kinds: tuple[ClassifierKind, ...] = tuple(ClassifierKind),
) -> list[EvaluationReport]:
    """The full grid, ordered (dataset, classifier) like the result tables."""
    reports = []
    for oracle in oracles:
        for kind in kinds:
            reports.append(
                cross_validate(oracle, TrainParams(kind=kind, seed=seed), k=k, seed=seed)
            )
    return reports


# -- rendering -------------------------------------------------------------------


def _pct(value: float | None) -> str:
    return "-" if value is None else f"{value * 100:.2f}%"


def _roc(value: float | None) -> str:
    return "-" if value is None else f"{value:.3f}"


def report_csv_row(report: EvaluationReport) -> str:
    w = report.weighted
    return ",".join(
        [
            report.dataset_name,
            DISPLAY_NAMES[report.classifier_kind],
            _pct(w.accuracy),
            _pct(w.tp_rate),
            _pct(w.fp_rate),
            _pct(w.precision),
            _pct(w.recall),
            _pct(w.f_measure),
            _roc(w.roc_auc),
        ]
    )


def reports_to_csv(reports: list[EvaluationReport]) -> str:
    return "\n".join([REPORT_CSV_HEADER, *(report_csv_row(r) for r in reports)]) + "\n"


def _summary_dict(s: MetricsSummary) -> dict:
    return {
        "accuracy": s.accuracy,
        "tp_rate": s.tp_rate,
        "fp_rate": s.fp_rate,
        "precision": s.precision,
        "recall": s.recall,
        "f_measure": s.f_measure,
        "roc_auc": s.roc_auc,
    }


def report_to_jsonable(report: EvaluationReport) -> dict:
    return {
        "dataset": report.dataset_name,
        "classifier": DISPLAY_NAMES[report.classifier_kind],
        "classifier_kind": report.classifier_kind.value,
        "seed": report.seed,
        "k": report.k,
        "folds": [
            {"tp": c.tp, "fp": c.fp, "fn": c.fn, "tn": c.tn} for c in report.per_fold
        ],
        "pooled": {
            "tp": report.pooled.tp,
            "fp": report.pooled.fp,
            "fn": report.pooled.fn,
            "tn": report.pooled.tn,
        },
        "per_class": {k: _summary_dict(v) for k, v in report.per_class.items()},
        "weighted": _summary_dict(report.weighted),
    }
