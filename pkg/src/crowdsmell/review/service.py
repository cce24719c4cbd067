"""HTTP JSON API over review sessions.

Endpoints:
    POST /sessions                     create a session from a project path
    GET  /healthz
    POST /sessions/{id}/teams          self-register a reviewer team
    GET  /sessions/{id}/candidates     paged, filterable by smell
    POST /sessions/{id}/verdicts       durable before acknowledgement
    GET  /sessions/{id}/export         team-file CSV for (smell, year)
"""

from __future__ import annotations

import hashlib
import tempfile
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..entities import SmellKind
from ..errors import (
    CrowdsmellError,
    NothingToExportError,
    UnknownCandidateError,
    UnknownTeamError,
)
from ..java.model import parse_project
from .store import Candidate, ReviewSession


class CreateSession(BaseModel):
    root: str
    project: str | None = None
    advisor_enabled: bool = True


class RegisterTeam(BaseModel):
    name: str


class SubmitVerdict(BaseModel):
    candidate_id: str
    is_smell: bool
    team: str


def _parse_smell(raw: str) -> SmellKind:
    try:
        return SmellKind(raw.lower())
    except ValueError:
        raise HTTPException(status_code=400, detail=f"unknown smell {raw!r}")


def _candidate_view(c: Candidate, session: ReviewSession) -> dict:
    my_verdicts = {
        team: v.is_smell
        for (cand_id, team), v in session._latest.items()
        if cand_id == c.id
    }
    return {
        "id": c.id,
        "project": c.entity.project,
        "package": c.entity.package,
        "class": c.entity.class_name,
        "method": c.entity.method_signature,
        "smell": c.smell.value,
        "metrics": c.metrics.values,
        "advisor_opinion": c.advisor_opinion,
        "advisor_name": c.advisor_name,
        "source_excerpt": c.source_excerpt,
        "verdicts": my_verdicts,
    }


def add_session(
    app: FastAPI,
    root: str | Path,
    project: str | None = None,
    advisor_enabled: bool = True,
) -> ReviewSession:
    """Create (or return) the session for a project path on this app."""
    model = parse_project(root, project_name=project)
    session_id = hashlib.sha256(
        f"{model.project}|{Path(root).resolve()}".encode()
    ).hexdigest()[:12]
    sessions: dict[str, ReviewSession] = app.state.sessions
    if session_id not in sessions:
        sessions[session_id] = ReviewSession(
            session_id,
            model,
            app.state.storage / session_id,
            advisor_enabled=advisor_enabled,
        )
    return sessions[session_id]


def create_app(storage_root: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="crowdsmell review service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    storage = Path(storage_root) if storage_root else Path(tempfile.mkdtemp(prefix="crowdsmell-"))
    sessions: dict[str, ReviewSession] = {}
    app.state.sessions = sessions
    app.state.storage = storage

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "sessions": len(sessions)}

    @app.post("/sessions")
    def create_session(body: CreateSession) -> dict:
        try:
            session = add_session(
                app, body.root, project=body.project,
                advisor_enabled=body.advisor_enabled,
            )
        except CrowdsmellError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        counts = {
            smell.value: len(by_id) for smell, by_id in session.candidates.items()
        }
        return {
            "id": session.id,
            "project": session.model.project,
            "candidates": counts,
            "diagnostics": len(session.model.diagnostics),
        }

    def _session(session_id: str) -> ReviewSession:
        if session_id not in sessions:
            raise HTTPException(status_code=404, detail="unknown session")
        return sessions[session_id]

    @app.post("/sessions/{session_id}/teams")
    def register_team(session_id: str, body: RegisterTeam) -> dict:
        session = _session(session_id)
        try:
            session.register_team(body.name)
        except UnknownTeamError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"ok": True, "teams": sorted(session.teams)}

    @app.get("/sessions/{session_id}/candidates")
    def candidates(
        session_id: str,
        smell: str = Query(...),
        page: int = Query(0, ge=0),
        page_size: int = Query(50, ge=1, le=500),
    ) -> dict:
        session = _session(session_id)
        kind = _parse_smell(smell)
        entries = sorted(session.candidates[kind].values(), key=lambda c: (
            c.entity.package, c.entity.class_name, c.entity.method_signature or ""
        ))
        start = page * page_size
        return {
            "total": len(entries),
            "page": page,
            "page_size": page_size,
            "items": [
                _candidate_view(c, session) for c in entries[start : start + page_size]
            ],
        }

    @app.post("/sessions/{session_id}/verdicts")
    def submit_verdict(session_id: str, body: SubmitVerdict) -> dict:
        session = _session(session_id)
        try:
            verdict = session.submit_verdict(body.candidate_id, body.is_smell, body.team)
        except UnknownCandidateError as exc:
            raise HTTPException(status_code=404, detail=f"UnknownCandidate: {exc}")
        except UnknownTeamError as exc:
            raise HTTPException(status_code=404, detail=f"UnknownTeam: {exc}")
        return {
            "ok": True,
            "candidate_id": verdict.candidate_id,
            "team": verdict.reviewer_team,
            "is_smell": verdict.is_smell,
            "timestamp": verdict.timestamp,
        }

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str, smell: str = Query(...), year: int = Query(...)) -> Response:
        session = _session(session_id)
        kind = _parse_smell(smell)
        try:
            csv_text = session.export_classifications(kind, year)
        except NothingToExportError as exc:
            raise HTTPException(status_code=404, detail=f"NothingToExport: {exc}")
        return Response(
            content=csv_text,
            media_type="text/csv; charset=utf-8",
            headers={
                "Content-Disposition": f"attachment; filename={kind.value}-{year}.csv"
            },
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app
