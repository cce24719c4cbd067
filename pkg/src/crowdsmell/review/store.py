"""Review sessions: candidate generation, verdict log, exports.

Persistence is one append-only JSONL log per session plus a compacted
snapshot written on demand. A verdict is durable (flushed and fsynced)
before it is acknowledged; corrections append superseding records and the
latest verdict per (candidate, team) wins at export. Candidates are
regenerated deterministically from the parsed project, so only registrations
and verdicts need to survive a restart.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..advisor import ADVISOR_NAME, advise
from ..entities import CodeEntityId, MetricVector, SmellKind
from ..errors import NothingToExportError, UnknownCandidateError, UnknownTeamError
from ..java.model import ProjectModel
from ..metrics.extract import extract_all
from ..oracle import LabeledInstance, write_team_csv


@dataclass(frozen=True)
class Candidate:
    id: str
    entity: CodeEntityId
    smell: SmellKind
    metrics: MetricVector
    advisor_opinion: bool | None
    advisor_name: str | None
    source_excerpt: str


@dataclass(frozen=True)
class Verdict:
    candidate_id: str
    is_smell: bool
    reviewer_team: str
    timestamp: float


def _candidate_id(smell: SmellKind, entity: CodeEntityId) -> str:
    digest = hashlib.sha256(f"{smell.value}|{entity}".encode()).hexdigest()
    return digest[:16]


def generate_candidates(
    model: ProjectModel, smell: SmellKind, advisor_enabled: bool = True
) -> list[Candidate]:
    """Every entity of the smell's scope becomes a candidate; the advisor
    opinion only marks the flagged ones."""
    out: list[Candidate] = []
    vectors = extract_all(model, smell.scope)
    spans: dict[CodeEntityId, tuple[str, int, int]] = {}
    for t in model.measurable_types():
        spans[t.entity_id()] = (t.path, *t.line_span)
        for m in t.methods:
            if not m.is_abstract:
                spans[m.entity_id()] = (t.path, m.raw.line_start, m.raw.line_end)
    for vec in vectors:
        path, start, end = spans[vec.entity]
        out.append(
            Candidate(
                id=_candidate_id(smell, vec.entity),
                entity=vec.entity,
                smell=smell,
                metrics=vec,
                advisor_opinion=advise(smell, vec) if advisor_enabled else None,
                advisor_name=ADVISOR_NAME if advisor_enabled else None,
                source_excerpt=model.source_excerpt(path, start, end),
            )
        )
    return out


class ReviewSession:
    """One project under review; smells and years are query dimensions."""

    def __init__(
        self,
        session_id: str,
        model: ProjectModel,
        storage_dir: str | Path,
        advisor_enabled: bool = True,
    ):
        self.id = session_id
        self.model = model
        self.dir = Path(storage_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self._log_path = self.dir / "log.jsonl"
        self._snapshot_path = self.dir / "snapshot.json"
        self._write_lock = threading.Lock()
        self.teams: set[str] = set()
        # verdict log (append-only) and latest per (candidate, team)
        self.verdicts: list[Verdict] = []
        self._latest: dict[tuple[str, str], Verdict] = {}
        self.candidates: dict[SmellKind, dict[str, Candidate]] = {
            smell: {c.id: c for c in generate_candidates(model, smell, advisor_enabled)}
            for smell in SmellKind
        }
        self._replay()

    # -- persistence -----------------------------------------------------------

    def _replay(self) -> None:
        if self._snapshot_path.exists():
            snap = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
            self.teams = set(snap.get("teams", []))
            for rec in snap.get("verdicts", []):
                self._apply(Verdict(**rec))
        if self._log_path.exists():
            with open(self._log_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    if rec.get("kind") == "team":
                        self.teams.add(rec["name"])
                    elif rec.get("kind") == "verdict":
                        self._apply(
                            Verdict(
                                candidate_id=rec["candidate_id"],
                                is_smell=rec["is_smell"],
                                reviewer_team=rec["reviewer_team"],
                                timestamp=rec["timestamp"],
                            )
                        )

    def _apply(self, verdict: Verdict) -> None:
        self.verdicts.append(verdict)
        self._latest[(verdict.candidate_id, verdict.reviewer_team)] = verdict

    def _append(self, record: dict) -> None:
        with self._write_lock:
            with open(self._log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())

    def compact(self) -> None:
        snapshot = {
            "teams": sorted(self.teams),
            "verdicts": [
                {
                    "candidate_id": v.candidate_id,
                    "is_smell": v.is_smell,
                    "reviewer_team": v.reviewer_team,
                    "timestamp": v.timestamp,
                }
                for v in self.verdicts
            ],
        }
        tmp = self._snapshot_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(snapshot, sort_keys=True), encoding="utf-8")
        tmp.replace(self._snapshot_path)
        with self._write_lock:
            self._log_path.unlink(missing_ok=True)

    # -- operations ----------------------------------------------------------------

    def register_team(self, name: str) -> None:
        if not name:
            raise UnknownTeamError("empty team name")
        self._append({"kind": "team", "name": name})
        self.teams.add(name)

    def find_candidate(self, candidate_id: str) -> Candidate:
        for by_id in self.candidates.values():
            if candidate_id in by_id:
                return by_id[candidate_id]
        raise UnknownCandidateError(candidate_id)

    def submit_verdict(
        self, candidate_id: str, is_smell: bool, reviewer_team: str
    ) -> Verdict:
        self.find_candidate(candidate_id)
        if reviewer_team not in self.teams:
            raise UnknownTeamError(reviewer_team)
        verdict = Verdict(
            candidate_id=candidate_id,
            is_smell=is_smell,
            reviewer_team=reviewer_team,
            timestamp=time.time(),
        )
        self._append(
            {
                "kind": "verdict",
                "candidate_id": verdict.candidate_id,
                "is_smell": verdict.is_smell,
                "reviewer_team": verdict.reviewer_team,
                "timestamp": verdict.timestamp,
            }
        )
        self._apply(verdict)
        return verdict

    def latest_verdicts(self, smell: SmellKind) -> list[tuple[Candidate, Verdict]]:
        by_id = self.candidates[smell]
        out = []
        for (cand_id, _team), verdict in sorted(self._latest.items()):
            if cand_id in by_id:
                out.append((by_id[cand_id], verdict))
        return out

    def export_classifications(self, smell: SmellKind, year: int) -> str:
        """Latest verdict per (candidate, team) in the team-file CSV schema."""
        rows = self.latest_verdicts(smell)
        if not rows:
            raise NothingToExportError(f"no verdicts for {smell.value}")
        instances = [
            LabeledInstance(
                entity=cand.entity,
                metrics=cand.metrics,
                is_smell=verdict.is_smell,
                team=verdict.reviewer_team,
                year=year,
            )
            for cand, verdict in rows
        ]
        instances.sort(key=lambda i: (i.team, i.entity))
        buf = io.StringIO()
        write_team_csv(instances, smell, buf)
        return buf.getvalue()
