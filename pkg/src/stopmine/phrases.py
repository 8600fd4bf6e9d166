"""Multiword-term detection by discounted co-occurrence scoring.

Adjacent token pairs are scored with

    score(wi, wj) = (count(wi wj) - delta) * N / (count(wi) * count(wj))

where counts come from the sentence collection and N is the total number of
tokens. Pairs scoring strictly above a threshold are joined with "_". Two
passes with decreasing thresholds grow terms up to four words: the second
pass re-counts over the joined corpus so pass-1 phrases combine further.
Detected phrases finally have known stopwords split off their boundaries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Callable, Iterable, Iterator, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .corpus import TokenSequence
from .errors import EmptyCorpusError, UnknownTermError

#: Character that joins the components of a detected phrase.
PHRASE_JOINER = "_"

DEFAULT_DELTA = 1.0
DEFAULT_THRESHOLDS = (5.0, 2.5)


def _tokens_of(sentence) -> list[str]:
    if isinstance(sentence, TokenSequence):
        return sentence.tokens
    return list(sentence)


@dataclass
class NgramCounts:
    """Unigram and within-sentence bigram counts plus the token total N."""

    unigram_counts: Counter = field(default_factory=Counter)
    bigram_counts: Counter = field(default_factory=Counter)
    total_tokens: int = 0

    def add_sentence(self, tokens: Sequence[str]) -> None:
        self.unigram_counts.update(tokens)
        self.bigram_counts.update(zip(tokens, tokens[1:]))
        self.total_tokens += len(tokens)

    def merge(self, other: "NgramCounts") -> "NgramCounts":
        self.unigram_counts.update(other.unigram_counts)
        self.bigram_counts.update(other.bigram_counts)
        self.total_tokens += other.total_tokens
        return self

    def score(self, wi: str, wj: str, delta: float = DEFAULT_DELTA) -> float:
        return score_bigram(self, wi, wj, delta)

    def to_tsv(self) -> str:
        """Serialize unigram counts as "term<TAB>count" lines, sorted by term."""
        lines = [f"{t}\t{c}" for t, c in sorted(self.unigram_counts.items())]
        return "\n".join(lines) + ("\n" if lines else "")


def _count_chunk(chunk: list[list[str]]) -> NgramCounts:
    counts = NgramCounts()
    for tokens in chunk:
        counts.add_sentence(tokens)
    return counts


def count_ngrams(corpus: Iterable[TokenSequence | Sequence[str]], workers: int = 1) -> NgramCounts:
    """Count unigrams and bigrams over a sentence collection.

    Bigrams never cross sentence boundaries. With ``workers > 1`` the corpus
    is sharded and counted in parallel; counts merge commutatively, so the
    result is independent of shard order.
    """
    sentences = [_tokens_of(s) for s in corpus]
    if workers > 1 and len(sentences) >= workers:
        chunk_size = (len(sentences) + workers - 1) // workers
        chunks = [sentences[i : i + chunk_size] for i in range(0, len(sentences), chunk_size)]
        with get_context("fork").Pool(workers) as pool:
            partials = pool.map(_count_chunk, chunks)
        counts = NgramCounts()
        for partial in partials:
            counts.merge(partial)
    else:
        counts = _count_chunk(sentences)
    if counts.total_tokens == 0:
        raise EmptyCorpusError("cannot count n-grams over an empty corpus")
    return counts


def score_bigram(counts: NgramCounts, wi: str, wj: str, delta: float = DEFAULT_DELTA) -> float:
    """Discounted co-occurrence score of the ordered pair (wi, wj).

    An unseen pair counts as 0, so with delta >= 1 its score is negative.
    With delta = 1 a pair occurring exactly once scores 0 and is never
    joined under any positive threshold.
    """
    ci = counts.unigram_counts.get(wi)
    cj = counts.unigram_counts.get(wj)
    if not ci:
        raise UnknownTermError(wi)
    if not cj:
        raise UnknownTermError(wj)
    cij = counts.bigram_counts.get((wi, wj), 0)
    return (cij - delta) * counts.total_tokens / (ci * cj)


def _join_pass(tokens: list[str], counts: NgramCounts, threshold: float, delta: float) -> list[str]:
    unigrams = counts.unigram_counts
    bigrams = counts.bigram_counts
    total = counts.total_tokens
    out: list[str] = []
    i = 0
    last = len(tokens) - 1
    while i < last:
        wi, wj = tokens[i], tokens[i + 1]
        ci = unigrams.get(wi)
        cj = unigrams.get(wj)
        if ci and cj:
            score = (bigrams.get((wi, wj), 0) - delta) * total / (ci * cj)
            if score > threshold:
                out.append(wi + PHRASE_JOINER + wj)
                i += 2
                continue
        out.append(wi)
        i += 1
    if i == last:
        out.append(tokens[last])
    return out


def apply_phrase_pass(
    corpus: Iterable[TokenSequence | Sequence[str]],
    counts: NgramCounts,
    threshold: float,
    delta: float = DEFAULT_DELTA,
) -> Iterator[TokenSequence]:
    """Join adjacent pairs scoring strictly above ``threshold``.

    The scan is greedy left to right: a token consumed by a join is not
    available to the following pair. Tokens unknown to ``counts`` are never
    joined.
    """
    for sentence in corpus:
        doc_id = sentence.doc_id if isinstance(sentence, TokenSequence) else ""
        tokens = _tokens_of(sentence)
        yield TokenSequence(doc_id, _join_pass(tokens, counts, threshold, delta))


@dataclass(frozen=True)
class PhrasePassConfig:
    """Discount and per-pass thresholds for phrase detection."""

    delta: float = DEFAULT_DELTA
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if not self.thresholds:
            raise ValueError("at least one threshold is required")
        if any(a <= b for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be strictly decreasing")


def detect_phrases(
    corpus: Iterable[TokenSequence | Sequence[str]],
    config: PhrasePassConfig | None = None,
    workers: int = 1,
) -> list[TokenSequence]:
    """Run the full multi-pass phrase detection over a corpus.

    Counts are rebuilt over the joined corpus between passes, so pass-2
    unigram counts include the phrases formed in pass 1 and two bigrams can
    combine into a four-word term.
    """
    config = config or PhrasePassConfig()
    current = [
        s if isinstance(s, TokenSequence) else TokenSequence("", list(s)) for s in corpus
    ]
    for threshold in config.thresholds:
        counts = count_ngrams(current, workers=workers)
        current = list(apply_phrase_pass(current, counts, threshold, config.delta))
    return current


def split_phrase_token(token: str, stoplist: frozenset[str] | set[str]) -> list[str]:
    """Detach stopword components from a phrase token's boundaries.

    Leading components found in ``stoplist`` are split off as separate
    tokens, then trailing ones, until both boundary components are
    non-stopwords or the phrase is fully dissolved. Interior stopwords stay.
    """
    if PHRASE_JOINER not in token:
        return [token]
    parts = token.split(PHRASE_JOINER)
    left, right = 0, len(parts)
    while left < right and parts[left] in stoplist:
        left += 1
    while right > left and parts[right - 1] in stoplist:
        right -= 1
    middle = parts[left:right]
    out = parts[:left]
    if middle:
        out.append(PHRASE_JOINER.join(middle))
    out.extend(parts[right:])
    return out


def split_stopword_phrases(
    corpus: Iterable[TokenSequence | Sequence[str]],
    stoplist: Iterable[str],
) -> Iterator[TokenSequence]:
    """Apply :func:`split_phrase_token` to every token of every sentence."""
    stopset = frozenset(stoplist)
    cache: dict[str, list[str]] = {}
    for sentence in corpus:
        doc_id = sentence.doc_id if isinstance(sentence, TokenSequence) else ""
        out: list[str] = []
        for token in _tokens_of(sentence):
            split = cache.get(token)
            if split is None:
                split = split_phrase_token(token, stopset)
                cache[token] = split
            out.extend(split)
        yield TokenSequence(doc_id, out)


class PhraseDetector(BaseEstimator, TransformerMixin):
    """Sklearn-style transformer around multi-pass phrase detection.

    ``fit`` learns per-pass n-gram counts from the training sentences;
    ``transform`` replays the same greedy joins on any sentence stream.
    Transforming the training corpus reproduces the fit-time output.
    """

    def __init__(
        self,
        delta: float = DEFAULT_DELTA,
        thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS,
        workers: int = 1,
    ):
        self.delta = delta
        self.thresholds = thresholds
        self.workers = workers

    def fit(self, X: Iterable[TokenSequence | Sequence[str]], y=None):
        self.fit_transform(X, y)
        return self

    def fit_transform(self, X: Iterable[TokenSequence | Sequence[str]], y=None, **fit_params):
        config = PhrasePassConfig(self.delta, self.thresholds)
        current = [
            s if isinstance(s, TokenSequence) else TokenSequence("", list(s)) for s in X
        ]
        self.pass_counts_ = []
        for threshold in config.thresholds:
            counts = count_ngrams(current, workers=self.workers)
            self.pass_counts_.append(counts)
            current = list(apply_phrase_pass(current, counts, threshold, config.delta))
        return current

    def transform(self, X: Iterable[TokenSequence | Sequence[str]]) -> list[TokenSequence]:
        if not hasattr(self, "pass_counts_"):
            raise NotFittedError("PhraseDetector must be fitted before transform")
        current = [
            s if isinstance(s, TokenSequence) else TokenSequence("", list(s)) for s in X
        ]
        for counts, threshold in zip(self.pass_counts_, self.thresholds):
            current = list(apply_phrase_pass(current, counts, threshold, self.delta))
        return current


class StopwordPhraseSplitter(BaseEstimator, TransformerMixin):
    """Stateless transformer that splits stopwords off phrase boundaries."""

    def __init__(self, stoplist: Iterable[str] = ()):
        self.stoplist = stoplist

    def fit(self, X=None, y=None):
        return self

    def __sklearn_is_fitted__(self) -> bool:
        return True  # stateless

    def transform(self, X: Iterable[TokenSequence | Sequence[str]]) -> list[TokenSequence]:
        return list(split_stopword_phrases(X, self.stoplist))
