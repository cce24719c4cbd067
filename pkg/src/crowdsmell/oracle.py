"""Crowd-labelled oracles: team-file ingestion, merging, composition reports.

Two CSV layouts exist. A *team file* is what one team hands in:

    team,project,package,class,method,<metric columns>,is_smell

An *oracle file* additionally records the collection year per row:

    team,year,project,package,class,method,<metric columns>,is_smell

The method column stays present but empty at class scope. Metric columns are
the registry order for the smell's scope. Conflicting labels from different
teams are distinct instances and are never deduplicated or rebalanced; the
toolkit deliberately exposes no operation that drops or reweights rows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .entities import CodeEntityId, MetricVector, SmellKind
from .errors import (
    BadBooleanError,
    DuplicateRowWithinTeamError,
    MixedSmellKindsError,
    NonFiniteFeatureError,
    SchemaMismatchError,
)
from .metrics.extract import format_value
from .registry import acronyms_for_scope


@dataclass(frozen=True)
class LabeledInstance:
    entity: CodeEntityId
    metrics: MetricVector
    is_smell: bool
    team: str
    year: int


@dataclass
class OracleDataset:
    name: str
    smell: SmellKind
    instances: list[LabeledInstance]

    def __len__(self) -> int:
        return len(self.instances)

    @property
    def true_count(self) -> int:
        return sum(1 for i in self.instances if i.is_smell)

    @property
    def false_count(self) -> int:
        return len(self.instances) - self.true_count


@dataclass(frozen=True)
class CompositionReport:
    n: int
    true_count: int
    false_count: int
    frac_true: Fraction | None
    frac_false: Fraction | None

    @property
    def pct_true(self) -> int | None:
        return _round_pct(self.frac_true)

    @property
    def pct_false(self) -> int | None:
        return _round_pct(self.frac_false)


def _round_pct(frac: Fraction | None) -> int | None:
    if frac is None:
        return None
    return int(math.floor(frac * 100 + Fraction(1, 2)))


def team_file_header(smell: SmellKind) -> list[str]:
    return ["team", "project", "package", "class", "method"] + list(
        acronyms_for_scope(smell.scope)
    ) + ["is_smell"]


def oracle_file_header(smell: SmellKind) -> list[str]:
    return ["team", "year", "project", "package", "class", "method"] + list(
        acronyms_for_scope(smell.scope)
    ) + ["is_smell"]


def _parse_bool(raw: str, path: str, row: int) -> bool:
    v = raw.strip().upper()
    if v == "TRUE":
        return True
    if v == "FALSE":
        return False
    raise BadBooleanError(f"{path} row {row}: is_smell={raw!r}")


def _parse_metrics(
    fields: list[str], acronyms: tuple[str, ...], path: str, row: int
) -> dict[str, float]:
    values: dict[str, float] = {}
    for acronym, raw in zip(acronyms, fields):
        try:
            x = float(raw)
        except ValueError as exc:
            raise SchemaMismatchError(
                f"{path} row {row}: non-numeric {acronym}={raw!r}"
            ) from exc
        if not math.isfinite(x):
            raise NonFiniteFeatureError(f"{path} row {row}: {acronym}={raw!r}")
        values[acronym] = x
    return values


def _entity(
    project: str, package: str, cls: str, method: str, smell: SmellKind,
    path: str, row: int,
) -> CodeEntityId:
    if smell is SmellKind.GOD_CLASS:
        if method:
            raise SchemaMismatchError(
                f"{path} row {row}: method column must be empty at class scope"
            )
        return CodeEntityId(project, package, cls)
    if not method:
        raise SchemaMismatchError(f"{path} row {row}: missing method signature")
    return CodeEntityId(project, package, cls, method)


def ingest_team_file(
    path: str | Path, smell: SmellKind, year: int
) -> list[LabeledInstance]:
    """Read one team classification file into labelled instances."""
    acronyms = acronyms_for_scope(smell.scope)
    expected = team_file_header(smell)
    out: list[LabeledInstance] = []
    seen: set[tuple[CodeEntityId, str]] = set()
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise SchemaMismatchError(
                f"{path}: expected {len(expected)} columns "
                f"({len(acronyms)} metrics) for {smell.value}, got "
                f"{header[:6] if header else None}..."
            )
        for row_no, fields in enumerate(reader, start=2):
            if len(fields) != len(expected):
                raise SchemaMismatchError(
                    f"{path} row {row_no}: {len(fields)} columns, "
                    f"expected {len(expected)}"
                )
            team, project, package, cls, method = fields[:5]
            entity = _entity(project, package, cls, method, smell, str(path), row_no)
            key = (entity, team)
            if key in seen:
                raise DuplicateRowWithinTeamError(
                    f"{path} row {row_no}: duplicate entity for team {team!r}"
                )
            seen.add(key)
            values = _parse_metrics(fields[5:-1], acronyms, str(path), row_no)
            out.append(
                LabeledInstance(
                    entity=entity,
                    metrics=MetricVector(entity=entity, values=values),
                    is_smell=_parse_bool(fields[-1], str(path), row_no),
                    team=team,
                    year=year,
                )
            )
    return out


def merge(datasets: list[OracleDataset]) -> OracleDataset:
    """Concatenate oracles of one smell; instances keep input order."""
    if not datasets:
        raise MixedSmellKindsError("nothing to merge")
    smell = datasets[0].smell
    if any(d.smell is not smell for d in datasets):
        raise MixedSmellKindsError(
            f"mixed smell kinds: {sorted({d.smell.value for d in datasets})}"
        )
    instances = [inst for d in datasets for inst in d.instances]
    return OracleDataset(name=_merged_name(datasets), smell=smell, instances=instances)


def _merged_name(datasets: list[OracleDataset]) -> str:
    parts = [p for d in datasets for p in d.name.split("+")]
    if all(p.isdigit() for p in parts):
        parts.sort(key=int, reverse=True)
    else:
        parts.sort(reverse=True)
    return "+".join(parts)


def composition_report(dataset: OracleDataset) -> CompositionReport:
    n = len(dataset)
    t = dataset.true_count
    if n == 0:
        return CompositionReport(0, 0, 0, None, None)
    return CompositionReport(n, t, n - t, Fraction(t, n), Fraction(n - t, n))


# -- CSV round-trips ------------------------------------------------------------


def _write_rows(
    fh, instances: list[LabeledInstance], smell: SmellKind, with_year: bool
) -> None:
    acronyms = acronyms_for_scope(smell.scope)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(oracle_file_header(smell) if with_year else team_file_header(smell))
    for inst in instances:
        e = inst.entity
        row = [inst.team]
        if with_year:
            row.append(str(inst.year))
        row += [e.project, e.package, e.class_name, e.method_signature or ""]
        row += [format_value(inst.metrics.values[a]) for a in acronyms]
        row.append("TRUE" if inst.is_smell else "FALSE")
        w.writerow(row)


def write_team_csv(
    instances: list[LabeledInstance], smell: SmellKind,
    dest: str | Path | io.TextIOBase,
) -> None:
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            _write_rows(fh, instances, smell, with_year=False)
    else:
        _write_rows(dest, instances, smell, with_year=False)


def write_oracle_csv(dataset: OracleDataset, dest: str | Path) -> None:
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        _write_rows(fh, dataset.instances, dataset.smell, with_year=True)


def read_oracle_csv(path: str | Path, smell: SmellKind, name: str | None = None) -> OracleDataset:
    acronyms = acronyms_for_scope(smell.scope)
    expected = oracle_file_header(smell)
    instances: list[LabeledInstance] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise SchemaMismatchError(f"{path}: not an oracle file for {smell.value}")
        for row_no, fields in enumerate(reader, start=2):
            if len(fields) != len(expected):
                raise SchemaMismatchError(
                    f"{path} row {row_no}: {len(fields)} columns, "
                    f"expected {len(expected)}"
                )
            team, year, project, package, cls, method = fields[:6]
            entity = _entity(project, package, cls, method, smell, str(path), row_no)
            values = _parse_metrics(fields[6:-1], acronyms, str(path), row_no)
            instances.append(
                LabeledInstance(
                    entity=entity,
                    metrics=MetricVector(entity=entity, values=values),
                    is_smell=_parse_bool(fields[-1], str(path), row_no),
                    team=team,
                    year=int(year),
                )
            )
    return OracleDataset(
        name=name or Path(path).stem, smell=smell, instances=instances
    )


# -- learner-facing view -----------------------------------------------------------


def to_matrix(dataset: OracleDataset) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Feature matrix, boolean labels and feature names in registry order."""
    names = list(acronyms_for_scope(dataset.smell.scope))
    X = np.array(
        [[inst.metrics.values[a] for a in names] for inst in dataset.instances],
        dtype=np.float64,
    )
    y = np.array([inst.is_smell for inst in dataset.instances], dtype=bool)
    if X.size and not np.isfinite(X).all():
        raise NonFiniteFeatureError("oracle contains non-finite metric values")
    return X, y, names
