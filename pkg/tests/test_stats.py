import io
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import oracle_metrics, relative_error
from _synth import random_documents
from stopmine.corpus import TokenSequence
from stopmine.errors import EmptyCorpusError, UnknownTermError
from stopmine.stats import (
    CorpusStatistics,
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


def index_of(docs: dict):
    return build_index([TokenSequence(d, list(tokens)) for d, tokens in docs.items()])


class TestBuildIndex:
    def test_hand_counts(self):
        idx = index_of({"p1": ["a", "b", "a"], "p2": ["a", "c"]})
        assert idx.doc_counts["a"] == {"p1": 2, "p2": 1}
        assert idx.document_frequency("a") == 2
        assert idx.n_documents == 2
        assert idx.total_tokens == 5

    def test_empty_corpus_errors(self):
        with pytest.raises(EmptyCorpusError):
            build_index([])
        with pytest.raises(EmptyCorpusError):
            build_index([TokenSequence("p1", [])])

    def test_df_equals_corpus_size_for_ubiquitous_term(self):
        idx = index_of({f"p{i}": ["common", f"rare{i}"] for i in range(7)})
        assert idx.document_frequency("common") == idx.n_documents

    def test_invariants(self):
        rng = random.Random(3)
        docs = random_documents(rng, 40, 800, 60)
        idx = index_of(docs)
        assert sum(idx.doc_totals.values()) == idx.total_tokens
        for term in idx.vocabulary:
            assert 1 <= idx.document_frequency(term) <= idx.n_documents

    def test_shard_order_independence(self):
        rng = random.Random(4)
        docs = random_documents(rng, 30, 500, 40)
        seqs = [TokenSequence(d, tokens) for d, tokens in docs.items()]
        # interleave sentences of the same doc and shuffle shard composition
        halves = [TokenSequence(s.doc_id, s.tokens[: len(s.tokens) // 2]) for s in seqs] + \
                 [TokenSequence(s.doc_id, s.tokens[len(s.tokens) // 2:]) for s in seqs]
        halves = [h for h in halves if h.tokens]
        rng.shuffle(halves)
        a = compute_all_stats(build_index(seqs))
        b = compute_all_stats(build_index(halves))
        assert [tuple(r.__dict__.values()) for r in a] == \
            [tuple(r.__dict__.values()) for r in b]

    def test_parallel_matches_serial(self):
        rng = random.Random(5)
        docs = random_documents(rng, 50, 1500, 80)
        seqs = [TokenSequence(d, tokens) for d, tokens in docs.items()]
        serial = build_index(seqs, workers=1)
        parallel = build_index(seqs, workers=4)
        assert serial.doc_counts == parallel.doc_counts
        assert serial.doc_totals == parallel.doc_totals

    def test_missing_doc_id_rejected(self):
        with pytest.raises(ValueError):
            build_index([TokenSequence("", ["a"])])


class TestMetrics:
    def test_term_frequency(self):
        idx = index_of({"p1": ["t"] * 5 + ["x"] * 20, "p2": ["y"] * 25})
        assert term_frequency(idx, "t") == pytest.approx(0.1)

    def test_single_term_corpus_tf_one(self):
        idx = index_of({"p1": ["only"]})
        assert term_frequency(idx, "only") == 1.0

    def test_tf_sums_to_one(self):
        rng = random.Random(6)
        idx = index_of(random_documents(rng, 30, 600, 50))
        assert math.fsum(term_frequency(idx, t) for t in idx.vocabulary) == \
            pytest.approx(1.0, abs=1e-9)

    def test_idf_bounds(self):
        docs = {f"p{i}": ["common"] + (["solo"] if i == 0 else ["w"]) for i in range(4)}
        idx = index_of(docs)
        assert inverse_document_frequency(idx, "common") == 0.0
        assert inverse_document_frequency(idx, "solo") == pytest.approx(math.log(4))

    def test_idf_hand_value(self):
        docs = {"p1": ["t"], "p2": ["t"], "p3": ["x"], "p4": ["x"]}
        assert inverse_document_frequency(index_of(docs), "t") == pytest.approx(math.log(2))

    def test_tfidf_hand_value(self):
        # |C|=4, t in 2 docs with in-doc shares 2/10 and 1/5 -> 0.4
        docs = {
            "p1": ["t", "t"] + ["f"] * 8,
            "p2": ["t"] + ["f"] * 4,
            "p3": ["f"],
            "p4": ["f"],
        }
        assert tfidf(index_of(docs), "t") == pytest.approx(0.4)

    def test_tfidf_single_occurrence_single_doc(self):
        idx = index_of({"p1": ["t"] + ["f"] * 9})
        assert tfidf(idx, "t") == pytest.approx(1 / 10)

    def test_tfidf_scale_invariance(self):
        rng = random.Random(7)
        docs = random_documents(rng, 20, 300, 25)
        doubled = {d: tokens * 2 for d, tokens in docs.items()}
        idx1, idx2 = index_of(docs), index_of(doubled)
        for term in idx1.vocabulary:
            assert relative_error(tfidf(idx1, term), tfidf(idx2, term)) < 1e-12

    def test_entropy_boundaries(self):
        docs = {"p1": ["solo", "pair", "even"], "p2": ["pair", "even", "x"], "p3": ["even", "x", "y"]}
        idx = index_of(docs)
        assert entropy(idx, "solo") == 0.0
        assert entropy(idx, "pair") == pytest.approx(math.log(2))
        assert entropy(idx, "even") == pytest.approx(math.log(3))

    def test_unknown_term_errors(self):
        idx = index_of({"p1": ["a"]})
        for fn in (term_frequency, inverse_document_frequency, tfidf, entropy):
            with pytest.raises(UnknownTermError):
                fn(idx, "missing")


class TestComputeAllStats:
    def test_composition_matches_individual_ops(self):
        idx = index_of({"p1": ["a", "b", "a"], "p2": ["a", "c"]})
        table = compute_all_stats(idx)
        for row in table:
            assert row.tf == term_frequency(idx, row.term)
            assert row.idf == inverse_document_frequency(idx, row.term)
            assert row.tfidf == tfidf(idx, row.term)
            assert row.entropy == entropy(idx, row.term)

    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=25, deadline=None)
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        docs = random_documents(rng, 100, 2000, rng.randint(5, 120))
        table = compute_all_stats(index_of(docs))
        expected = oracle_metrics(docs)
        assert set(r.term for r in table) == set(expected)
        for row in table:
            want = expected[row.term]
            assert row.count == want["count"] and row.df == want["df"]
            for metric in ("tf", "idf", "tfidf", "entropy"):
                assert relative_error(getattr(row, metric), want[metric]) <= 1e-9

    def test_bounds_invariants(self):
        rng = random.Random(8)
        for _ in range(10):
            docs = random_documents(rng, 60, 1200, rng.randint(5, 80))
            idx = index_of(docs)
            table = compute_all_stats(idx)
            log_c = math.log(idx.n_documents)
            for row in table:
                assert 0 < row.tf <= 1
                assert 0 <= row.idf <= log_c + 1e-12
                assert row.tfidf > 0
                assert -1e-12 <= row.entropy <= log_c + 1e-12
                assert (row.idf == 0) == (row.df == idx.n_documents)
                assert (row.entropy == 0) == (row.df == 1)


class TestFilterVocabulary:
    def test_min_count_removes_singletons(self):
        idx = index_of({"p1": ["a", "a", "b"], "p2": ["a", "c"]})
        filtered = filter_vocabulary(idx, min_count=2)
        assert filtered.vocabulary == ["a"]
        assert filtered.total_tokens == 3

    def test_identity_filter(self):
        idx = index_of({"p1": ["a", "b"], "p2": ["c"]})
        filtered = filter_vocabulary(idx, min_count=1, stoplists=())
        assert filtered.doc_counts == idx.doc_counts
        assert filtered.doc_totals == idx.doc_totals

    def test_token_conservation(self):
        rng = random.Random(9)
        docs = random_documents(rng, 25, 400, 30)
        idx = index_of(docs)
        victim = idx.vocabulary[0]
        n_victim = idx.term_count(victim)
        filtered = filter_vocabulary(idx, stoplists=[victim])
        assert filtered.total_tokens == idx.total_tokens - n_victim

    def test_emptied_documents_drop_out(self):
        idx = index_of({"p1": ["only"], "p2": ["only", "other"]})
        filtered = filter_vocabulary(idx, stoplists=["only"])
        assert filtered.n_documents == 1
        assert filtered.vocabulary == ["other"]

    def test_stoplist_removal(self):
        idx = index_of({"p1": ["the", "motor"], "p2": ["the", "pump"]})
        filtered = filter_vocabulary(idx, stoplists=["the"])
        assert filtered.vocabulary == ["motor", "pump"]


class TestDistributionReport:
    def test_all_equal_single_occupied_bin(self):
        idx = index_of({"p1": ["a", "b"], "p2": ["c", "d"]})
        table = compute_all_stats(idx)
        bins = distribution_report(table, "tf", bin_count=5)
        occupied = [b for b in bins if b.count]
        assert len(occupied) == 1
        assert occupied[0].count == len(table)

    def test_counts_sum_to_vocabulary(self):
        rng = random.Random(10)
        table = compute_all_stats(index_of(random_documents(rng, 30, 500, 40)))
        for metric in ("tf", "idf", "tfidf", "entropy"):
            bins = distribution_report(table, metric, bin_count=7)
            assert sum(b.count for b in bins) == len(table)

    def test_hand_binned(self):
        # idf values: a in 1 of 4 docs (ln4), b in 2 (ln2), c in 4 (0)
        docs = {
            "p1": ["a", "b", "c"], "p2": ["b", "c"], "p3": ["c"], "p4": ["c"],
        }
        table = compute_all_stats(index_of(docs))
        bins = distribution_report(table, "idf", bin_count=2)
        # range [0, ln4] split at ln2; b sits exactly on the edge and floor
        # indexing puts edge values in the upper bin: [c], [b, a]
        assert [b.count for b in bins] == [1, 2]

    def test_cap_filter(self):
        idx = index_of({"p1": ["hot"] * 50 + ["cold"], "p2": ["cold"]})
        table = compute_all_stats(idx)
        bins = distribution_report(table, "tf", bin_count=3, cap_count=10)
        assert sum(b.count for b in bins) == 1  # only "cold" survives the cap


class TestRankFrequency:
    def test_tie_break_lexicographic(self):
        idx = index_of({"p1": ["b", "b", "b", "a"], "p2": ["a", "a", "c"]})
        assert rank_frequency_table(idx) == [(1, "a", 3), (2, "b", 3), (3, "c", 1)]

    def test_single_term(self):
        idx = index_of({"p1": ["t", "t"]})
        assert rank_frequency_table(idx) == [(1, "t", 2)]

    def test_monotonic(self):
        rng = random.Random(11)
        idx = index_of(random_documents(rng, 30, 600, 40))
        rows = rank_frequency_table(idx)
        assert [r for r, _, _ in rows] == list(range(1, len(rows) + 1))
        counts = [c for _, _, c in rows]
        assert counts == sorted(counts, reverse=True)


class TestStatsTableIO:
    def test_tsv_roundtrip(self):
        rng = random.Random(12)
        table = compute_all_stats(index_of(random_documents(rng, 20, 300, 25)))
        buffer = io.StringIO()
        table.to_tsv(buffer)
        buffer.seek(0)
        loaded = TermStatsTable.from_tsv(buffer)
        assert len(loaded) == len(table)
        for a, b in zip(table, loaded):
            assert a.term == b.term and a.count == b.count and a.df == b.df
            for metric in ("tf", "idf", "tfidf", "entropy"):
                assert relative_error(getattr(a, metric), getattr(b, metric)) < 1e-11

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError):
            TermStatsTable.from_tsv(io.StringIO("wrong\theader\n"))


def test_corpus_statistics_estimator():
    seqs = [
        TokenSequence("p1", ["the", "motor", "spins"]),
        TokenSequence("p2", ["the", "motor"]),
        TokenSequence("p2", ["rare"]),
    ]
    model = CorpusStatistics(min_count=2, stoplist=["the"])
    model.fit(seqs)
    assert model.index_.vocabulary == ["motor"]
    assert model.stats()[0].term == "motor"
    params = model.get_params()
    assert params == {"min_count": 2, "stoplist": ["the"], "workers": 1}
