"""Extraction entry points and the metric CSV format.

CSV layout: identity columns ``project,package,class,method`` (method empty
at class scope) followed by the metric columns in registry order. Header row
mandatory, UTF-8, '.' decimal separator.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ..entities import CodeEntityId, MetricVector, Scope
from ..errors import UnknownEntityError
from ..java.model import ProjectModel
from ..registry import acronyms_for_scope, make_vector
from .compute import class_metric_values, get_index, method_metric_values


def compute_class_metrics(model: ProjectModel, class_id: CodeEntityId) -> MetricVector:
    t = model.find_type(class_id)
    if t is None or not t.is_measurable:
        raise UnknownEntityError(str(class_id))
    index = get_index(model)
    return make_vector(t.entity_id(), class_metric_values(index, t))


def compute_method_metrics(model: ProjectModel, method_id: CodeEntityId) -> MetricVector:
    m = model.find_method(method_id)
    if m is None or not m.declaring.is_measurable:
        raise UnknownEntityError(str(method_id))
    index = get_index(model)
    values = class_metric_values(index, m.declaring)
    values.update(method_metric_values(index, m))
    return make_vector(m.entity_id(), values)


def extract_all(model: ProjectModel, scope: Scope) -> list[MetricVector]:
    """One vector per class (CLASS) or concrete method (METHOD), ordered by
    (package, class, signature)."""
    index = get_index(model)
    out: list[MetricVector] = []
    for t in model.measurable_types():  # model.types is already sorted
        if scope is Scope.CLASS:
            out.append(make_vector(t.entity_id(), class_metric_values(index, t)))
        else:
            class_values = class_metric_values(index, t)
            for m in sorted(t.methods, key=lambda m: m.signature):
                if m.is_abstract:
                    continue
                values = dict(class_values)
                values.update(method_metric_values(index, m))
                out.append(make_vector(m.entity_id(), values))
    return out


def format_value(x: float) -> str:
    """Canonical round-trippable float formatting used by every CSV writer."""
    return repr(float(x))


def metrics_header(scope: Scope) -> list[str]:
    return ["project", "package", "class", "method"] + list(acronyms_for_scope(scope))


def write_metrics_csv(vectors: list[MetricVector], dest: str | Path | io.TextIOBase,
                      scope: Scope) -> None:
    acronyms = acronyms_for_scope(scope)

    def _write(fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(metrics_header(scope))
        for vec in vectors:
            e = vec.entity
            row = [e.project, e.package, e.class_name, e.method_signature or ""]
            row += [format_value(vec.values[a]) for a in acronyms]
            w.writerow(row)

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    else:
        _write(dest)
