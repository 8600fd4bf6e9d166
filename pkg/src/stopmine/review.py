"""Expert labeling sessions over candidate terms.

Each candidate gets a binary judgment per rater: ``stopword`` (carries no
information about the subject matter) or ``informative``. Agreement across
raters is quantified with Cronbach's alpha, computed with raters as items
over the 0/1 label vectors and exact rational arithmetic, so e.g. identical
rater vectors give exactly 1.0. Disagreements are reconciled term by term;
a finalized session yields a stopword list merged with any prior lists.

Sessions persist as append-only JSONL event logs and are rebuilt by replay,
so multi-day reviews survive restarts and stay auditable.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    IncompleteLabelingError,
    SessionError,
    UndefinedReliabilityError,
)
from .lists import StopwordList, merge_lists
from .ranking import CandidateSet

LABELS = ("stopword", "informative")

STATE_LABELING = "labeling"
STATE_RECONCILING = "reconciling"
STATE_FINALIZED = "finalized"


@dataclass(frozen=True)
class SessionCandidate:
    term: str
    ranks: dict | None = None     # metric -> full-table rank
    sources: tuple[str, ...] = ()  # metrics whose top-k contained the term


def _check_label(label: str) -> None:
    if label not in LABELS:
        raise SessionError(f"label must be one of {LABELS}, got {label!r}")


@dataclass
class ReviewSession:
    session_id: str
    candidates: list[SessionCandidate]
    raters: list[str]
    labels: dict = field(default_factory=dict)            # (rater, term) -> label
    reconciliations: dict = field(default_factory=dict)   # term -> label
    finalized: bool = False

    def __post_init__(self):
        self._terms = {c.term for c in self.candidates}

    @property
    def terms(self) -> list[str]:
        return [c.term for c in self.candidates]

    def candidate(self, term: str) -> SessionCandidate:
        for c in self.candidates:
            if c.term == term:
                return c
        raise SessionError(f"term {term!r} is not in this session")

    def missing_labels(self) -> list[tuple[str, str]]:
        return [
            (rater, c.term)
            for rater in self.raters
            for c in self.candidates
            if (rater, c.term) not in self.labels
        ]

    def labels_for(self, term: str) -> dict:
        return {r: self.labels[(r, term)] for r in self.raters if (r, term) in self.labels}

    def next_term(self, rater: str) -> SessionCandidate | None:
        """First candidate (in presentation order) unlabeled by ``rater``."""
        if rater not in self.raters:
            raise SessionError(f"unknown rater {rater!r}")
        for c in self.candidates:
            if (rater, c.term) not in self.labels:
                return c
        return None

    @property
    def consensus(self) -> dict:
        """term -> label, defined where all raters agree or a reconciliation exists."""
        out = {}
        for c in self.candidates:
            votes = self.labels_for(c.term)
            if len(votes) == len(self.raters) and len(set(votes.values())) == 1:
                out[c.term] = next(iter(votes.values()))
            elif c.term in self.reconciliations:
                out[c.term] = self.reconciliations[c.term]
        return out

    @property
    def state(self) -> str:
        if self.finalized:
            return STATE_FINALIZED
        if self.missing_labels():
            return STATE_LABELING
        return STATE_RECONCILING


def create_session(
    candidates: CandidateSet | Sequence[SessionCandidate] | Sequence[str],
    raters: Sequence[str],
    session_id: str | None = None,
) -> ReviewSession:
    """Open a labeling session (>= 1 candidate, >= 2 distinct raters)."""
    if isinstance(candidates, CandidateSet):
        cands = [
            SessionCandidate(
                e.term,
                {"tf": e.rank_tf, "idf": e.rank_idf, "tfidf": e.rank_tfidf,
                 "entropy": e.rank_entropy},
                e.sources,
            )
            for e in candidates.entries
        ]
    else:
        cands = [
            c if isinstance(c, SessionCandidate) else SessionCandidate(str(c))
            for c in candidates
        ]
    if not cands:
        raise SessionError("a session needs at least one candidate term")
    if len(set(c.term for c in cands)) != len(cands):
        raise SessionError("candidate terms must be unique")
    raters = list(raters)
    if len(raters) < 2:
        raise SessionError("inter-rater reliability needs at least 2 raters")
    if len(set(raters)) != len(raters):
        raise SessionError("rater ids must be unique")
    return ReviewSession(session_id or uuid.uuid4().hex, cands, raters)


def submit_label(session: ReviewSession, rater: str, term: str, label: str) -> ReviewSession:
    """Record (or overwrite) one rater's judgment of one term."""
    if session.finalized:
        raise SessionError("session is finalized; labels are read-only")
    if rater not in session.raters:
        raise SessionError(f"unknown rater {rater!r}")
    if term not in session._terms:
        raise SessionError(f"term {term!r} is not in this session")
    _check_label(label)
    session.labels[(rater, term)] = label
    return session


def discrepancies(session: ReviewSession) -> list[str]:
    """Terms whose rater labels conflict; requires complete labeling."""
    missing = session.missing_labels()
    if missing:
        raise IncompleteLabelingError(missing)
    return [
        c.term
        for c in session.candidates
        if len(set(session.labels_for(c.term).values())) > 1
    ]


def record_consensus(session: ReviewSession, term: str, label: str) -> ReviewSession:
    """Resolve one disputed term with a reconciliation label."""
    if session.finalized:
        raise SessionError("session is finalized")
    if term not in discrepancies(session):
        raise SessionError(f"term {term!r} is not disputed")
    _check_label(label)
    session.reconciliations[term] = label
    return session


def _pvariance(values: Sequence[int]) -> Fraction:
    n = len(values)
    mean = Fraction(sum(values), n)
    return sum((Fraction(v) - mean) ** 2 for v in values) / n


def cronbach_alpha(session: ReviewSession) -> float:
    """Inter-rater reliability over the completed label matrix.

    Raters are the items, terms the observations; labels encode as
    stopword=1 / informative=0. With population variances,

        alpha = r/(r-1) * (1 - sum_i V_i / V_total)

    where V_i is rater i's variance and V_total the variance of per-term
    label sums. Undefined (error) when the totals have no variance.
    """
    missing = session.missing_labels()
    if missing:
        raise IncompleteLabelingError(missing)
    r = len(session.raters)
    terms = session.terms
    if r < 2 or len(terms) < 2:
        raise SessionError("alpha needs >= 2 raters and >= 2 terms")
    matrix = {
        rater: [1 if session.labels[(rater, t)] == "stopword" else 0 for t in terms]
        for rater in session.raters
    }
    totals = [sum(matrix[rater][i] for rater in session.raters) for i in range(len(terms))]
    v_total = _pvariance(totals)
    if v_total == 0:
        raise UndefinedReliabilityError()
    v_sum = sum((_pvariance(matrix[rater]) for rater in session.raters), Fraction(0))
    alpha = Fraction(r, r - 1) * (1 - v_sum / v_total)
    return float(alpha)


def finalize_stoplist(
    session: ReviewSession,
    prior_lists: Sequence[StopwordList] = (),
    name: str | None = None,
) -> StopwordList:
    """Turn consensus stopwords into a list and merge in any prior lists."""
    if session.finalized:
        raise SessionError("session is already finalized")
    consensus = session.consensus
    unresolved = [t for t in session.terms if t not in consensus]
    if unresolved:
        if session.missing_labels():
            raise IncompleteLabelingError(session.missing_labels())
        raise SessionError(
            f"unresolved discrepancies remain: {', '.join(unresolved[:5])}"
        )
    chosen = [t for t in session.terms if consensus[t] == "stopword"]
    session_list = StopwordList.from_terms(
        name or f"session-{session.session_id}", chosen, "session"
    )
    merged = merge_lists([session_list, *prior_lists], name=session_list.name)
    session.finalized = True
    return merged


class SessionStore:
    """Directory-backed session registry with append-only event logs.

    Every mutation appends one JSON event to ``<session_id>.jsonl``; opening
    a store replays all logs. One lock per session serializes writers.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, ReviewSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for path in sorted(self.directory.glob("*.jsonl")):
            session = self._replay(path)
            if session is not None:
                self._sessions[session.session_id] = session
                self._locks[session.session_id] = threading.Lock()

    def _log_path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.jsonl"

    def _append(self, session_id: str, event: dict) -> None:
        with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def _replay(self, path: Path) -> ReviewSession | None:
        session: ReviewSession | None = None
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                event = json.loads(line)
                kind = event["event"]
                if kind == "create":
                    cands = [
                        SessionCandidate(c["term"], c.get("ranks"),
                                         tuple(c.get("sources", ())))
                        for c in event["candidates"]
                    ]
                    session = ReviewSession(event["session_id"], cands, event["raters"])
                elif session is None:
                    raise SessionError(f"{path}: event before create")
                elif kind == "label":
                    session.labels[(event["rater"], event["term"])] = event["label"]
                elif kind == "consensus":
                    session.reconciliations[event["term"]] = event["label"]
                elif kind == "finalize":
                    session.finalized = True
        return session

    def ids(self) -> list[str]:
        return sorted(self._sessions)

    def get(self, session_id: str) -> ReviewSession:
        session = self._sessions.get(session_id)
        if session is None:
            raise SessionError(f"unknown session {session_id!r}")
        return session

    def lock(self, session_id: str) -> threading.Lock:
        self.get(session_id)
        return self._locks[session_id]

    def create(
        self,
        candidates: CandidateSet | Sequence[SessionCandidate] | Sequence[str],
        raters: Sequence[str],
    ) -> ReviewSession:
        session = create_session(candidates, raters)
        with self._registry_lock:
            self._sessions[session.session_id] = session
            self._locks[session.session_id] = threading.Lock()
        self._append(session.session_id, {
            "event": "create",
            "session_id": session.session_id,
            "raters": session.raters,
            "candidates": [
                {"term": c.term, "ranks": c.ranks, "sources": list(c.sources)}
                for c in session.candidates
            ],
        })
        return session

    def submit_label(self, session_id: str, rater: str, term: str, label: str) -> None:
        with self.lock(session_id):
            submit_label(self.get(session_id), rater, term, label)
            self._append(session_id, {
                "event": "label", "rater": rater, "term": term, "label": label,
            })

    def record_consensus(self, session_id: str, term: str, label: str) -> None:
        with self.lock(session_id):
            record_consensus(self.get(session_id), term, label)
            self._append(session_id, {"event": "consensus", "term": term, "label": label})

    def finalize(
        self, session_id: str, prior_lists: Sequence[StopwordList] = ()
    ) -> StopwordList:
        with self.lock(session_id):
            merged = finalize_stoplist(self.get(session_id), prior_lists)
            self._append(session_id, {
                "event": "finalize",
                "prior_lists": [lst.name for lst in prior_lists],
            })
            return merged
