"""Data-driven discovery of domain-specific stopwords in technical corpora.

The pipeline: normalize and phrase a corpus, score every term with four
statistical metrics (TF, IDF, log-free TFIDF, term entropy), take the union
of the four top-K rankings as candidate stopwords, collect expert labels
with inter-rater reliability, and merge the confirmed terms with existing
stopword lists.
"""

from .corpus import (
    Document,
    TokenSequence,
    load_corpus,
    normalize_tokenize,
    segment_sentences,
    tokenize_corpus,
)
from .errors import StopmineError
from .lemma import (
    PosTag,
    RuleBasedTagger,
    RuleLemmatizer,
    TaggedToken,
    lemmatize,
    lemmatize_corpus,
    tag_pos,
)
from .lists import (
    StopwordList,
    apply_stoplist,
    load_embedded_list,
    matching_set,
    merge_lists,
    resolve_lists,
)
from .phrases import (
    NgramCounts,
    PhraseDetector,
    PhrasePassConfig,
    StopwordPhraseSplitter,
    apply_phrase_pass,
    count_ngrams,
    detect_phrases,
    score_bigram,
    split_phrase_token,
    split_stopword_phrases,
)
from .pipeline import PipelineConfig, run_preprocess, run_rank, run_stats
from .ranking import (
    CandidateSet,
    candidates_from_stats,
    export_candidates,
    rank_terms,
    top_k,
    union_candidates,
)
from .review import (
    ReviewSession,
    SessionStore,
    create_session,
    cronbach_alpha,
    discrepancies,
    finalize_stoplist,
    record_consensus,
    submit_label,
)
from .stats import (
    CorpusStatistics,
    TermDocumentIndex,
    TermStats,
    TermStatsTable,
    build_index,
    compute_all_stats,
    distribution_report,
    entropy,
    filter_vocabulary,
    inverse_document_frequency,
    rank_frequency_table,
    term_frequency,
    tfidf,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "CorpusStatistics",
    "Document",
    "NgramCounts",
    "PhraseDetector",
    "PhrasePassConfig",
    "PipelineConfig",
    "PosTag",
    "ReviewSession",
    "RuleBasedTagger",
    "RuleLemmatizer",
    "SessionStore",
    "StopmineError",
    "StopwordList",
    "StopwordPhraseSplitter",
    "TaggedToken",
    "TermDocumentIndex",
    "TermStats",
    "TermStatsTable",
    "TokenSequence",
    "apply_phrase_pass",
    "apply_stoplist",
    "build_index",
    "candidates_from_stats",
    "compute_all_stats",
    "count_ngrams",
    "create_session",
    "cronbach_alpha",
    "detect_phrases",
    "discrepancies",
    "distribution_report",
    "entropy",
    "export_candidates",
    "filter_vocabulary",
    "finalize_stoplist",
    "inverse_document_frequency",
    "lemmatize",
    "lemmatize_corpus",
    "load_corpus",
    "load_embedded_list",
    "matching_set",
    "merge_lists",
    "normalize_tokenize",
    "rank_frequency_table",
    "rank_terms",
    "record_consensus",
    "resolve_lists",
    "run_preprocess",
    "run_rank",
    "run_stats",
    "score_bigram",
    "segment_sentences",
    "split_phrase_token",
    "split_stopword_phrases",
    "submit_label",
    "tag_pos",
    "term_frequency",
    "tfidf",
    "tokenize_corpus",
    "top_k",
    "union_candidates",
]
