"""HTTP+JSON API over review sessions, plus static hosting for the web UI.

All statistics shown in the UI come from these endpoints; the client does
no math of its own. Sessions persist via the store's event logs, so a
restarted server serves the same sessions.
"""

from __future__ import annotations

import io
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .errors import (
    IncompleteLabelingError,
    SessionError,
    UndefinedReliabilityError,
    UnknownListError,
)
from .lists import resolve_lists
from .ranking import read_candidates
from .review import LABELS, SessionCandidate, SessionStore, cronbach_alpha, discrepancies


class CandidateIn(BaseModel):
    term: str
    ranks: dict[str, int] | None = None
    sources: list[str] = Field(default_factory=list)


class SessionIn(BaseModel):
    raters: list[str]
    terms: list[str | CandidateIn] | None = None
    candidates_path: str | None = None


class LabelIn(BaseModel):
    rater: str
    term: str
    label: str


class ConsensusIn(BaseModel):
    term: str
    label: str


class FinalizeIn(BaseModel):
    prior_lists: list[str] = Field(default_factory=list)


def _check_label(label: str) -> None:
    if label not in LABELS:
        raise HTTPException(422, f"label must be one of {LABELS}")


def create_app(store: SessionStore, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="stopmine review service")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": store.ids()}

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionIn):
        if (body.terms is None) == (body.candidates_path is None):
            raise HTTPException(422, "provide exactly one of terms / candidates_path")
        if body.candidates_path is not None:
            path = Path(body.candidates_path)
            if not path.is_file():
                raise HTTPException(404, f"candidate file not found: {path}")
            with open(path, "r", encoding="utf-8") as fh:
                candidates = read_candidates(fh)
            try:
                session = store.create(candidates, body.raters)
            except SessionError as exc:
                raise HTTPException(409, str(exc))
        else:
            cands = [
                c if isinstance(c, str)
                else SessionCandidate(c.term, c.ranks, tuple(c.sources))
                for c in body.terms
            ]
            try:
                session = store.create(cands, body.raters)
            except SessionError as exc:
                raise HTTPException(409, str(exc))
        return {"session_id": session.session_id}

    def _session(session_id: str):
        try:
            return store.get(session_id)
        except SessionError as exc:
            raise HTTPException(404, str(exc))

    @app.get("/sessions/{session_id}")
    def export_session(session_id: str):
        session = _session(session_id)
        return {
            "session_id": session.session_id,
            "state": session.state,
            "raters": session.raters,
            "candidates": [
                {"term": c.term, "ranks": c.ranks, "sources": list(c.sources)}
                for c in session.candidates
            ],
            "labels": [
                {"rater": rater, "term": term, "label": label}
                for (rater, term), label in sorted(session.labels.items())
            ],
            "consensus": session.consensus,
        }

    @app.get("/sessions/{session_id}/next")
    def next_term(session_id: str, rater: str = Query(...)):
        session = _session(session_id)
        try:
            candidate = session.next_term(rater)
        except SessionError as exc:
            raise HTTPException(409, str(exc))
        total = len(session.candidates)
        labeled = total - sum(1 for c in session.candidates
                              if (rater, c.term) not in session.labels)
        if candidate is None:
            return {"term": None, "labeled": labeled, "total": total}
        return {
            "term": candidate.term,
            "ranks": candidate.ranks,
            "sources": list(candidate.sources),
            "labeled": labeled,
            "total": total,
        }

    @app.post("/sessions/{session_id}/labels", status_code=204)
    def post_label(session_id: str, body: LabelIn):
        _session(session_id)
        _check_label(body.label)
        try:
            store.submit_label(session_id, body.rater, body.term, body.label)
        except SessionError as exc:
            raise HTTPException(409, str(exc))

    @app.get("/sessions/{session_id}/discrepancies")
    def get_discrepancies(session_id: str):
        session = _session(session_id)
        try:
            disputed = discrepancies(session)
        except IncompleteLabelingError as exc:
            raise HTTPException(409, detail={
                "reason": "labeling incomplete",
                "missing": [{"rater": r, "term": t} for r, t in exc.missing],
            })
        return {
            "terms": [
                {"term": term, "labels": session.labels_for(term),
                 "resolved": session.reconciliations.get(term)}
                for term in disputed
            ]
        }

    @app.post("/sessions/{session_id}/consensus", status_code=204)
    def post_consensus(session_id: str, body: ConsensusIn):
        _session(session_id)
        _check_label(body.label)
        try:
            store.record_consensus(session_id, body.term, body.label)
        except (SessionError, IncompleteLabelingError) as exc:
            raise HTTPException(409, str(exc))

    @app.get("/sessions/{session_id}/alpha")
    def get_alpha(session_id: str):
        session = _session(session_id)
        try:
            return {"alpha": cronbach_alpha(session)}
        except UndefinedReliabilityError as exc:
            raise HTTPException(409, detail={"reason": exc.reason})
        except (IncompleteLabelingError, SessionError) as exc:
            raise HTTPException(409, detail={"reason": str(exc)})

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str, body: FinalizeIn):
        _session(session_id)
        try:
            prior = resolve_lists(body.prior_lists)
        except UnknownListError as exc:
            raise HTTPException(404, str(exc))
        try:
            merged = store.finalize(session_id, prior)
        except (SessionError, IncompleteLabelingError) as exc:
            raise HTTPException(409, str(exc))
        buffer = io.StringIO()
        merged.write(buffer)
        return PlainTextResponse(
            buffer.getvalue(),
            media_type="text/plain; charset=utf-8",
            headers={
                "Content-Disposition":
                    f'attachment; filename="{merged.name}.txt"'
            },
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
