"""Candidate selection: four metric orderings, top-K cut, and their union.

Stopword-like terms sit at the top of each ordering: high TF, low IDF, low
TFIDF, high entropy. The union of the four top-K lists is the candidate set
handed to human review, with every member's full-table rank per metric kept
so reviewers can see how marginal a candidate is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Sequence

from .errors import MismatchedStatsError
from .stats import METRICS, TermStatsTable

#: Metrics where larger values rank first; the rest rank ascending.
_DESCENDING = {"tf", "entropy"}

_CANDIDATE_HEADER = ["term", "rank_tf", "rank_idf", "rank_tfidf", "rank_entropy", "sources"]


@dataclass(frozen=True)
class RankedTerms:
    """One metric's full ordering over a stats table."""

    metric: str
    terms: tuple[str, ...]
    source_id: str

    def top(self, k: int) -> "RankedTerms":
        return RankedTerms(self.metric, self.terms[: max(k, 0)], self.source_id)


def rank_terms(stats: TermStatsTable, metric: str) -> RankedTerms:
    """Order the vocabulary by one metric, ties broken lexicographically.

    tf and entropy sort descending (most common / most evenly spread first);
    idf and tfidf sort ascending (least document-specific first).
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    sign = -1.0 if metric in _DESCENDING else 1.0
    ordered = sorted(stats, key=lambda row: (sign * getattr(row, metric), row.term))
    return RankedTerms(metric, tuple(r.term for r in ordered), stats.source_id)


def top_k(ranked: RankedTerms | Sequence[str], k: int) -> list[str]:
    """First min(k, len) items of an ordered list, order preserved."""
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = ranked.terms if isinstance(ranked, RankedTerms) else ranked
    return list(terms[:k])


@dataclass(frozen=True)
class CandidateEntry:
    term: str
    rank_tf: int
    rank_idf: int
    rank_tfidf: int
    rank_entropy: int
    sources: tuple[str, ...]  # metrics whose top-k list contains the term

    @property
    def best_rank(self) -> int:
        return min(self.rank_tf, self.rank_idf, self.rank_tfidf, self.rank_entropy)


@dataclass(frozen=True)
class CandidateSet:
    entries: tuple[CandidateEntry, ...]
    k: int

    def __len__(self) -> int:
        return len(self.entries)

    def terms(self) -> list[str]:
        return [e.term for e in self.entries]


def union_candidates(ranked: Sequence[RankedTerms], k: int) -> CandidateSet:
    """Union of the four top-k lists, with full-table ranks recorded.

    All rankings must come from the same stats table. Entries sort by best
    (minimum) rank, then term, so reviewers see the strongest candidates
    first. The union size is always within [k, 4k] (capped by |V|).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if sorted(r.metric for r in ranked) != sorted(METRICS):
        raise ValueError(f"need exactly one ranking per metric {METRICS}")
    source_ids = {r.source_id for r in ranked}
    if len(source_ids) != 1:
        raise MismatchedStatsError("rankings come from different stats tables")
    by_metric = {r.metric: r for r in ranked}
    positions = {
        metric: {term: i + 1 for i, term in enumerate(by_metric[metric].terms)}
        for metric in METRICS
    }
    member_sources: dict[str, list[str]] = {}
    for metric in METRICS:
        for term in by_metric[metric].terms[:k]:
            member_sources.setdefault(term, []).append(metric)
    entries = [
        CandidateEntry(
            term,
            positions["tf"][term],
            positions["idf"][term],
            positions["tfidf"][term],
            positions["entropy"][term],
            tuple(sources),
        )
        for term, sources in member_sources.items()
    ]
    entries.sort(key=lambda e: (e.best_rank, e.term))
    return CandidateSet(tuple(entries), k)


def candidates_from_stats(stats: TermStatsTable, k: int) -> CandidateSet:
    """Convenience: rank all four metrics over ``stats`` and union the top-k."""
    return union_candidates([rank_terms(stats, m) for m in METRICS], k)


def export_candidates(candidates: CandidateSet, fh: IO[str]) -> None:
    """Write the candidate TSV (rows sorted by best rank, then term)."""
    fh.write("\t".join(_CANDIDATE_HEADER) + "\n")
    for e in candidates.entries:
        fh.write(
            f"{e.term}\t{e.rank_tf}\t{e.rank_idf}\t{e.rank_tfidf}"
            f"\t{e.rank_entropy}\t{';'.join(e.sources)}\n"
        )


def read_candidates(fh: IO[str], k: int = 0) -> CandidateSet:
    """Read a candidate TSV back; inverse of :func:`export_candidates`."""
    header = fh.readline().rstrip("\n").split("\t")
    if header != _CANDIDATE_HEADER:
        raise ValueError(f"unexpected candidate header: {header}")
    entries = []
    for line in fh:
        term, r_tf, r_idf, r_tfidf, r_ent, sources = line.rstrip("\n").split("\t")
        entries.append(
            CandidateEntry(
                term, int(r_tf), int(r_idf), int(r_tfidf), int(r_ent),
                tuple(s for s in sources.split(";") if s),
            )
        )
    return CandidateSet(tuple(entries), k)
