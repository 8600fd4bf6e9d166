"""File-to-file pipeline stages behind the CLI.

Stages communicate via artifacts in the output directory, so each is
independently runnable and resumable:

  preprocess -> corpus_phrased.txt   (plain lines, "_" joins phrases)
                corpus_phrased.tsv   (doc_id<TAB>tokens, consumed by stats)
                manifest.json        (per-stage corpus measurements)
  stats      -> stats.tsv, hist_<metric>.tsv x4, rank_frequency.tsv
  rank       -> candidates.tsv

Identical config + input produce byte-identical artifacts regardless of
worker count: parallelism is confined to sharded counting with commutative
merges, and all writers emit in sorted order.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import TokenSequence, load_corpus, tokenize_corpus
from .errors import EmptyCorpusError
from .lemma import RuleLemmatizer, load_exception_table
from .lists import matching_set, resolve_lists
from .phrases import (
    DEFAULT_DELTA,
    DEFAULT_THRESHOLDS,
    PHRASE_JOINER,
    PhrasePassConfig,
    count_ngrams,
    apply_phrase_pass,
    split_stopword_phrases,
)
from .ranking import CandidateSet, candidates_from_stats, export_candidates
from .stats import (
    METRICS,
    TermStatsTable,
    build_index,
    compute_all_stats,
    distribution_report,
    filter_vocabulary,
    histogram_to_tsv,
    rank_frequency_table,
)

#: Stoplists split out of detected phrases during preprocessing.
DEFAULT_SPLIT_LISTS = ("nltk", "uspto")
#: Stoplists removed from the vocabulary before computing statistics.
DEFAULT_FILTER_LISTS = ("nltk", "uspto")
DEFAULT_MIN_COUNT = 2
DEFAULT_K = 2000


@dataclass
class PipelineConfig:
    input: str | Path = ""
    format: str = "jsonl"
    out_dir: str | Path = "out"
    delta: float = DEFAULT_DELTA
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS
    min_count: int = DEFAULT_MIN_COUNT
    stoplists: tuple[str, ...] = DEFAULT_FILTER_LISTS
    split_stoplists: tuple[str, ...] = DEFAULT_SPLIT_LISTS
    k: int = DEFAULT_K
    workers: int = 1
    seed: int = 0  # recorded in the manifest; the pipeline itself never samples
    tagger: str = "rule"
    lemma_exceptions: str | Path | None = None  # TSV overriding the built-in table
    export_counts: bool = False  # also write unigram_counts.tsv

    def __post_init__(self):
        PhrasePassConfig(self.delta, tuple(self.thresholds))  # validates
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.tagger not in ("rule",):
            raise ValueError(f"unknown tagger {self.tagger!r} (available: rule)")

    def tunables(self) -> dict:
        """Content-affecting settings, recorded in the manifest.

        Paths and worker count are deliberately excluded: outputs must be
        byte-identical across output locations and degrees of parallelism.
        """
        return {
            "format": self.format,
            "delta": self.delta,
            "thresholds": list(self.thresholds),
            "min_count": self.min_count,
            "stoplists": list(self.stoplists),
            "split_stoplists": list(self.split_stoplists),
            "k": self.k,
            "seed": self.seed,
            "tagger": self.tagger,
            "custom_lemma_exceptions": self.lemma_exceptions is not None,
        }


def _stage_measurements(name: str, sentences: list[TokenSequence]) -> dict:
    counts = Counter()
    for s in sentences:
        counts.update(s.tokens)
    return {
        "name": name,
        "sentences": len(sentences),
        "tokens": sum(counts.values()),
        "vocabulary": len(counts),
        "phrases": sum(1 for t in counts if PHRASE_JOINER in t),
    }


def _counts_measurement(name: str, counts: Counter) -> dict:
    return {
        "name": name,
        "tokens": sum(counts.values()),
        "vocabulary": len(counts),
        "phrases": sum(1 for t in counts if PHRASE_JOINER in t),
    }


def write_corpus_artifacts(sentences: list[TokenSequence], out_dir: Path) -> tuple[Path, Path]:
    txt_path = out_dir / "corpus_phrased.txt"
    tsv_path = out_dir / "corpus_phrased.tsv"
    with open(txt_path, "w", encoding="utf-8", newline="\n") as txt, \
         open(tsv_path, "w", encoding="utf-8", newline="\n") as tsv:
        for s in sentences:
            if not s.tokens:
                continue
            joined = " ".join(s.tokens)
            txt.write(joined + "\n")
            tsv.write(f"{s.doc_id}\t{joined}\n")
    return txt_path, tsv_path


def read_token_corpus(path: str | Path) -> list[TokenSequence]:
    """Read a preprocessed corpus artifact.

    ``.tsv`` lines are ``doc_id<TAB>space-joined tokens``; any other file is
    treated as plain lines, each line one single-sentence document with
    synthetic ids (matching the plain_lines loader convention).
    """
    path = Path(path)
    sentences = []
    with open(path, "r", encoding="utf-8") as fh:
        if path.suffix == ".tsv":
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                doc_id, _, tokens = line.partition("\t")
                sentences.append(TokenSequence(doc_id, tokens.split()))
        else:
            for number, line in enumerate(fh, start=1):
                tokens = line.split()
                if tokens:
                    sentences.append(TokenSequence(f"doc-{number}", tokens))
    return sentences


def run_preprocess(config: PipelineConfig) -> dict:
    """Normalize, phrase, split, and lemmatize the corpus; write artifacts.

    Returns the manifest. The corpus keeps all its tokens: stoplist and
    min-count filtering happen on the index at the stats stage, but their
    projected effect on the vocabulary is measured here for the manifest.
    """
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    documents = load_corpus(config.input, config.format)
    sentences = list(tokenize_corpus(documents))
    if not any(s.tokens for s in sentences):
        raise EmptyCorpusError(f"no tokens found in {config.input}")
    stages = [_stage_measurements("tokenized", sentences)]

    phrase_config = PhrasePassConfig(config.delta, tuple(config.thresholds))
    for threshold in phrase_config.thresholds:
        counts = count_ngrams(sentences, workers=config.workers)
        sentences = list(apply_phrase_pass(sentences, counts, threshold, config.delta))
    stages.append(_stage_measurements("phrased", sentences))

    split_set = matching_set(resolve_lists(config.split_stoplists))
    sentences = list(split_stopword_phrases(sentences, split_set))
    stages.append(_stage_measurements("stopword_split", sentences))

    exceptions = None
    if config.lemma_exceptions is not None:
        exceptions = load_exception_table(config.lemma_exceptions)
    sentences = RuleLemmatizer(exceptions=exceptions).transform(sentences)
    stages.append(_stage_measurements("lemmatized", sentences))

    # Projection of the stats-stage filters, for the vocabulary-shrink record.
    counts = Counter(t for s in sentences for t in s.tokens)
    filter_set = matching_set(resolve_lists(config.stoplists))
    counts = Counter({t: c for t, c in counts.items() if t not in filter_set})
    stages.append(_counts_measurement("stoplist_filtered", counts))
    counts = Counter({t: c for t, c in counts.items() if c >= config.min_count})
    stages.append(_counts_measurement("min_count_filtered", counts))

    txt_path, tsv_path = write_corpus_artifacts(sentences, out_dir)
    artifacts = {"plain_lines": txt_path.name, "doc_sentences": tsv_path.name}
    if config.export_counts:
        final_counts = count_ngrams(sentences, workers=config.workers)
        with open(out_dir / "unigram_counts.tsv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(final_counts.to_tsv())
        artifacts["unigram_counts"] = "unigram_counts.tsv"
    manifest = {
        "config": config.tunables(),
        "stages": stages,
        "artifacts": artifacts,
    }
    with open(out_dir / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def run_stats(config: PipelineConfig, corpus_path: str | Path) -> TermStatsTable:
    """Index the preprocessed corpus, filter, compute metrics, write reports."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sentences = read_token_corpus(corpus_path)
    index = build_index(sentences, workers=config.workers)
    stopset = matching_set(resolve_lists(config.stoplists)) if config.stoplists else frozenset()
    index = filter_vocabulary(index, config.min_count, stopset)
    stats = compute_all_stats(index)

    with open(out_dir / "stats.tsv", "w", encoding="utf-8", newline="\n") as fh:
        stats.to_tsv(fh)
    for metric in METRICS:
        bins = distribution_report(stats, metric, bin_count=50) if len(stats) else []
        with open(out_dir / f"hist_{metric}.tsv", "w", encoding="utf-8", newline="\n") as fh:
            histogram_to_tsv(bins, fh)
    with open(out_dir / "rank_frequency.tsv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("rank\tterm\tcount\n")
        if index.doc_counts:
            for rank, term, count in rank_frequency_table(index):
                fh.write(f"{rank}\t{term}\t{count}\n")
    return stats


def run_rank(config: PipelineConfig, stats_path: str | Path) -> CandidateSet:
    """Rank the stats table four ways and write the union candidate TSV."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(stats_path, "r", encoding="utf-8") as fh:
        stats = TermStatsTable.from_tsv(fh)
    candidates = candidates_from_stats(stats, config.k)
    with open(out_dir / "candidates.tsv", "w", encoding="utf-8", newline="\n") as fh:
        export_candidates(candidates, fh)
    return candidates
