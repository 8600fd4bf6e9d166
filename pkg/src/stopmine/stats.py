"""Term-document index and the four term-weighting metrics.

For a corpus C of documents p with per-document term counts n(t,p):

  TF(t)      = n(t) / N             share of all token occurrences
  IDF(t)     = ln(|C| / DF(t))      0 for ubiquitous terms, ln|C| for DF=1
  TFIDF(t)   = (1/DF) * sum_p [ (n(t,p)/n(p)) * (|C|/DF) ]   (log-free,
               mean of per-document scores over the documents containing t)
  H(t|C)     = -sum_p P(p|t) ln P(p|t),  P(p|t) = n(t,p)/n(t)

Natural logarithms throughout; orderings are base-invariant. Sums use
math.fsum, so results are independent of document partitioning order.
"""

from __future__ import annotations

import math
import uuid
from collections.abc import Sequence as SequenceABC
from dataclasses import dataclass
from multiprocessing import get_context
from typing import IO, Iterable, Iterator, Sequence

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .corpus import TokenSequence
from .errors import EmptyCorpusError, UnknownTermError

METRICS = ("tf", "idf", "tfidf", "entropy")

_STATS_HEADER = ["term", "count", "df", "tf", "idf", "tfidf", "entropy"]


class TermDocumentIndex:
    """Sparse per-term per-document counts with corpus totals."""

    def __init__(self):
        self.doc_counts: dict[str, dict[str, int]] = {}  # term -> doc -> n(t,p)
        self.doc_totals: dict[str, int] = {}             # doc -> n(p)

    @property
    def n_documents(self) -> int:
        return len(self.doc_totals)

    @property
    def total_tokens(self) -> int:
        return sum(self.doc_totals.values())

    @property
    def vocabulary(self) -> list[str]:
        return sorted(self.doc_counts)

    def term_count(self, term: str) -> int:
        counts = self.doc_counts.get(term)
        if counts is None:
            raise UnknownTermError(term)
        return sum(counts.values())

    def document_frequency(self, term: str) -> int:
        counts = self.doc_counts.get(term)
        if counts is None:
            raise UnknownTermError(term)
        return len(counts)

    def add_sentence(self, doc_id: str, tokens: Sequence[str]) -> None:
        if not tokens:
            return
        self.doc_totals[doc_id] = self.doc_totals.get(doc_id, 0) + len(tokens)
        doc_counts = self.doc_counts
        for token in tokens:
            per_doc = doc_counts.setdefault(token, {})
            per_doc[doc_id] = per_doc.get(doc_id, 0) + 1

    def merge(self, other: "TermDocumentIndex") -> "TermDocumentIndex":
        for doc_id, total in other.doc_totals.items():
            self.doc_totals[doc_id] = self.doc_totals.get(doc_id, 0) + total
        for term, per_doc in other.doc_counts.items():
            mine = self.doc_counts.setdefault(term, {})
            for doc_id, count in per_doc.items():
                mine[doc_id] = mine.get(doc_id, 0) + count
        return self


def _index_chunk(chunk: list[tuple[str, list[str]]]) -> TermDocumentIndex:
    index = TermDocumentIndex()
    for doc_id, tokens in chunk:
        index.add_sentence(doc_id, tokens)
    return index


def build_index(corpus: Iterable[TokenSequence], workers: int = 1) -> TermDocumentIndex:
    """Count a doc-tagged sentence stream into a term-document index.

    Sentences of one document need not be adjacent; counts merge by doc id.
    Sharded counting merges commutatively, so any partition of the corpus
    yields the same index.
    """
    pairs = [(s.doc_id, s.tokens) for s in corpus]
    if any(not doc_id for doc_id, _ in pairs):
        raise ValueError("every sentence must carry a doc_id")
    if workers > 1 and len(pairs) >= workers:
        size = (len(pairs) + workers - 1) // workers
        chunks = [pairs[i : i + size] for i in range(0, len(pairs), size)]
        with get_context("fork").Pool(workers) as pool:
            partials = pool.map(_index_chunk, chunks)
        index = TermDocumentIndex()
        for partial in partials:
            index.merge(partial)
    else:
        index = _index_chunk(pairs)
    if not index.doc_totals:
        raise EmptyCorpusError("cannot build an index over an empty corpus")
    return index


def term_frequency(index: TermDocumentIndex, term: str) -> float:
    return index.term_count(term) / index.total_tokens


def inverse_document_frequency(index: TermDocumentIndex, term: str) -> float:
    return math.log(index.n_documents / index.document_frequency(term))


def tfidf(index: TermDocumentIndex, term: str) -> float:
    per_doc = index.doc_counts.get(term)
    if per_doc is None:
        raise UnknownTermError(term)
    df = len(per_doc)
    scale = index.n_documents / df
    totals = index.doc_totals
    return math.fsum(count / totals[doc] * scale for doc, count in per_doc.items()) / df


def entropy(index: TermDocumentIndex, term: str) -> float:
    per_doc = index.doc_counts.get(term)
    if per_doc is None:
        raise UnknownTermError(term)
    n_t = sum(per_doc.values())
    return -math.fsum(
        (c / n_t) * math.log(c / n_t) for c in per_doc.values() if c
    )


@dataclass(frozen=True)
class TermStats:
    term: str
    count: int
    df: int
    tf: float
    idf: float
    tfidf: float
    entropy: float


class TermStatsTable(SequenceABC):
    """Immutable table of per-term stats, one row per vocabulary term.

    Rows are sorted by term. ``source_id`` identifies the table so rankings
    derived from different tables cannot be silently combined.
    """

    def __init__(self, rows: Sequence[TermStats]):
        self.rows = sorted(rows, key=lambda r: r.term)
        self.by_term = {r.term: r for r in self.rows}
        self.source_id = uuid.uuid4().hex

    def __getitem__(self, i):
        return self.rows[i]

    def __len__(self) -> int:
        return len(self.rows)

    def metric(self, term: str, name: str) -> float:
        return getattr(self.by_term[term], name)

    def to_tsv(self, fh: IO[str]) -> None:
        fh.write("\t".join(_STATS_HEADER) + "\n")
        for r in self.rows:
            fh.write(
                f"{r.term}\t{r.count}\t{r.df}\t{r.tf:.12g}\t{r.idf:.12g}"
                f"\t{r.tfidf:.12g}\t{r.entropy:.12g}\n"
            )

    @classmethod
    def from_tsv(cls, fh: IO[str]) -> "TermStatsTable":
        header = fh.readline().rstrip("\n").split("\t")
        if header != _STATS_HEADER:
            raise ValueError(f"unexpected stats header: {header}")
        rows = []
        for line in fh:
            term, count, df, tf_, idf_, tfidf_, ent = line.rstrip("\n").split("\t")
            rows.append(
                TermStats(term, int(count), int(df), float(tf_), float(idf_),
                          float(tfidf_), float(ent))
            )
        return cls(rows)


def compute_all_stats(index: TermDocumentIndex) -> TermStatsTable:
    """One TermStats row per vocabulary term, all four metrics populated."""
    n_docs = index.n_documents
    total = index.total_tokens
    log = math.log
    fsum = math.fsum
    totals = index.doc_totals
    rows = []
    for term in sorted(index.doc_counts):
        per_doc = index.doc_counts[term]
        df = len(per_doc)
        count = sum(per_doc.values())
        scale = n_docs / df
        tfidf_val = fsum(c / totals[d] * scale for d, c in per_doc.items()) / df
        ent = -fsum((c / count) * log(c / count) for c in per_doc.values())
        rows.append(
            TermStats(term, count, df, count / total, log(n_docs / df), tfidf_val, ent)
        )
    return TermStatsTable(rows)


def filter_vocabulary(
    index: TermDocumentIndex,
    min_count: int = 1,
    stoplists: Iterable[str] = (),
) -> TermDocumentIndex:
    """Drop rare terms and stoplisted terms; recompute totals.

    Documents left with no surviving terms drop out of the corpus, so |C|
    shrinks accordingly. Removing a term decreases N by n(t).
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    stopset = frozenset(stoplists)
    out = TermDocumentIndex()
    for term, per_doc in index.doc_counts.items():
        if term in stopset or sum(per_doc.values()) < min_count:
            continue
        out.doc_counts[term] = dict(per_doc)
        for doc_id, count in per_doc.items():
            out.doc_totals[doc_id] = out.doc_totals.get(doc_id, 0) + count
    return out


@dataclass(frozen=True)
class HistogramBin:
    lo: float
    hi: float
    count: int


def distribution_report(
    stats: TermStatsTable | Sequence[TermStats],
    metric: str,
    bin_count: int,
    cap_count: int | None = None,
    cap_value: float | None = None,
) -> list[HistogramBin]:
    """Equal-width histogram of one metric over the vocabulary.

    ``cap_count`` / ``cap_value`` optionally drop terms with raw count or
    metric value above a cap before binning (the long right tails make
    uncapped plots unreadable). Without caps, bin counts sum to |V|.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    if bin_count < 1:
        raise ValueError("bin_count must be >= 1")
    rows = list(stats)
    if not rows:
        raise ValueError("stats table is empty")
    if cap_count is not None:
        rows = [r for r in rows if r.count <= cap_count]
    values = [getattr(r, metric) for r in rows]
    if cap_value is not None:
        values = [v for v in values if v <= cap_value]
    if not values:
        return []
    lo, hi = min(values), max(values)
    if lo == hi:
        bins = [HistogramBin(lo, hi, 0) for _ in range(bin_count)]
        bins[0] = HistogramBin(lo, hi, len(values))
        return bins
    width = (hi - lo) / bin_count
    counts = [0] * bin_count
    for v in values:
        idx = min(int((v - lo) / width), bin_count - 1)
        counts[idx] += 1
    return [
        HistogramBin(lo + i * width, lo + (i + 1) * width, c)
        for i, c in enumerate(counts)
    ]


def histogram_to_tsv(bins: Sequence[HistogramBin], fh: IO[str]) -> None:
    fh.write("bin_lo\tbin_hi\tcount\n")
    for b in bins:
        fh.write(f"{b.lo:.12g}\t{b.hi:.12g}\t{b.count}\n")


def rank_frequency_table(index: TermDocumentIndex) -> list[tuple[int, str, int]]:
    """Terms by descending count (ties broken lexicographically), rank from 1."""
    if not index.doc_counts:
        raise EmptyCorpusError("cannot rank an empty index")
    counted = [(term, sum(per_doc.values())) for term, per_doc in index.doc_counts.items()]
    counted.sort(key=lambda tc: (-tc[1], tc[0]))
    return [(rank, term, count) for rank, (term, count) in enumerate(counted, start=1)]


class CorpusStatistics(BaseEstimator):
    """Fit-shaped wrapper: index a doc-tagged sentence stream, expose stats.

    After ``fit``, ``index_`` holds the (optionally filtered) term-document
    index and ``stats_`` the per-term metric table.
    """

    def __init__(self, min_count: int = 1, stoplist: Iterable[str] = (), workers: int = 1):
        self.min_count = min_count
        self.stoplist = stoplist
        self.workers = workers

    def fit(self, X: Iterable[TokenSequence], y=None):
        index = build_index(X, workers=self.workers)
        stopset = frozenset(self.stoplist)
        if self.min_count > 1 or stopset:
            index = filter_vocabulary(index, self.min_count, stopset)
        self.index_ = index
        self.stats_ = compute_all_stats(index)
        return self

    def stats(self) -> TermStatsTable:
        if not hasattr(self, "stats_"):
            raise NotFittedError("CorpusStatistics must be fitted first")
        return self.stats_
