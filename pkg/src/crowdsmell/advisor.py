"""Built-in threshold advisor flagging likely smell candidates.

Classic detection-strategy thresholds over the extracted metrics. The
advisor is advisory only: reviewers see its opinion next to every candidate,
and the exported classifications carry only the reviewers' verdicts.
"""

from __future__ import annotations

from .entities import MetricVector, SmellKind

ADVISOR_NAME = "threshold-advisor"

_ONE_THIRD = 1.0 / 3.0


def advise(smell: SmellKind, metrics: MetricVector) -> bool:
    v = metrics.values
    if smell is SmellKind.LONG_METHOD:
        return v["LOC"] >= 40 or v["CYCLO"] >= 10
    if smell is SmellKind.GOD_CLASS:
        return v["WMC"] >= 47 or (v["ATFD"] > 5 and v["TCC"] < _ONE_THIRD)
    if smell is SmellKind.FEATURE_ENVY:
        return v["ATFD"] > 5 and v["LAA"] < _ONE_THIRD
    raise ValueError(f"unknown smell {smell!r}")
