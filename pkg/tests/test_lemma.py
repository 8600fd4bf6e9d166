import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stopmine.corpus import TokenSequence
from stopmine.lemma import (
    PosTag,
    RuleBasedTagger,
    RuleLemmatizer,
    TaggedToken,
    default_exception_table,
    lemmatize,
    lemmatize_corpus,
    load_exception_table,
    tag_pos,
)


class TestTagger:
    def test_noun_in_determiner_context(self):
        tagged = tag_pos(["the", "learning"])
        assert tagged[1] == TaggedToken("learning", PosTag.NOUN)

    def test_verb_from_lexicon(self):
        tagged = tag_pos(["machines", "learn"])
        assert tagged[0].pos is PosTag.NOUN
        assert tagged[1].pos is PosTag.VERB

    def test_non_alphabetic_is_other(self):
        assert tag_pos(["ac/dc"])[0].pos is PosTag.OTHER
        assert tag_pos(["inter-link"])[0].pos is PosTag.OTHER
        assert tag_pos(["240v"])[0].pos is PosTag.OTHER

    def test_phrase_token_is_other(self):
        assert tag_pos(["internal_combustion_engine"])[0].pos is PosTag.OTHER

    def test_suffix_heuristics(self):
        assert tag_pos(["quickly"])[0].pos is PosTag.ADV
        assert tag_pos(["porous"])[0].pos is PosTag.ADJ
        assert tag_pos(["reactive"])[0].pos is PosTag.ADJ
        assert tag_pos(["thermal"])[0].pos is PosTag.ADJ
        assert tag_pos(["welded"])[0].pos is PosTag.VERB

    def test_closed_class_is_other(self):
        for word in ("the", "of", "are", "they", "and", "must"):
            assert tag_pos([word])[0].pos is PosTag.OTHER


class TestLemmatize:
    def test_verb_vs_noun_reading_of_learning(self):
        assert lemmatize(TaggedToken("learning", PosTag.VERB)) == "learn"
        assert lemmatize(TaggedToken("learning", PosTag.NOUN)) == "learning"

    def test_plural_nouns(self):
        assert lemmatize(TaggedToken("engines", PosTag.NOUN)) == "engine"
        assert lemmatize(TaggedToken("boxes", PosTag.NOUN)) == "box"
        assert lemmatize(TaggedToken("bodies", PosTag.NOUN)) == "body"
        assert lemmatize(TaggedToken("glass", PosTag.NOUN)) == "glass"
        assert lemmatize(TaggedToken("apparatus", PosTag.NOUN)) == "apparatus"
        assert lemmatize(TaggedToken("axis", PosTag.NOUN)) == "axis"

    def test_verb_inflections(self):
        assert lemmatize(TaggedToken("spinning", PosTag.VERB)) == "spin"
        assert lemmatize(TaggedToken("making", PosTag.VERB)) == "make"
        assert lemmatize(TaggedToken("used", PosTag.VERB)) == "use"
        assert lemmatize(TaggedToken("tested", PosTag.VERB)) == "test"
        assert lemmatize(TaggedToken("carried", PosTag.VERB)) == "carry"
        assert lemmatize(TaggedToken("agreed", PosTag.VERB)) == "agree"
        assert lemmatize(TaggedToken("passes", PosTag.VERB)) == "pass"
        assert lemmatize(TaggedToken("uses", PosTag.VERB)) == "use"

    def test_irregulars_from_table(self):
        assert lemmatize(TaggedToken("went", PosTag.VERB)) == "go"
        assert lemmatize(TaggedToken("speed", PosTag.VERB)) == "speed"
        assert lemmatize(TaggedToken("children", PosTag.NOUN)) == "child"
        assert lemmatize(TaggedToken("gases", PosTag.NOUN)) == "gas"

    def test_adj_adv_other_unchanged(self):
        assert lemmatize(TaggedToken("quickly", PosTag.ADV)) == "quickly"
        assert lemmatize(TaggedToken("porous", PosTag.ADJ)) == "porous"
        assert lemmatize(TaggedToken("ac/dc", PosTag.OTHER)) == "ac/dc"


class TestLemmatizeCorpus:
    def test_sentence_example(self):
        out = list(lemmatize_corpus([TokenSequence("p1", ["the", "motors", "are", "spinning"])]))
        assert out[0].tokens == ["the", "motor", "are", "spin"]
        assert out[0].doc_id == "p1"

    def test_phrase_tokens_pass_through(self):
        sentence = ["gas_turbine_blade", "internal_combustion_engine"]
        out = list(lemmatize_corpus([sentence]))
        assert out[0].tokens == sentence

    def test_converges_through_retagging(self):
        # plural noun -> "building", which re-tags as a verb and strips again
        out = list(lemmatize_corpus([["buildings"]]))
        assert out[0].tokens == ["build"]
        again = list(lemmatize_corpus([out[0].tokens]))
        assert again[0].tokens == out[0].tokens

    @given(st.lists(st.text(alphabet="abcdefgilmnorstuy", min_size=1, max_size=10),
                    min_size=1, max_size=8))
    @settings(max_examples=400, deadline=None)
    def test_idempotence(self, tokens):
        lemmatizer = RuleLemmatizer()
        once = lemmatizer.transform([tokens])[0].tokens
        twice = lemmatizer.transform([once])[0].tokens
        assert twice == once

    @given(st.lists(st.lists(st.sampled_from(
        ["the", "engines", "spinning", "used", "motors", "quickly", "gas",
         "turbines", "learning", "makes", "carried", "boxes", "buildings"]),
        min_size=1, max_size=6), min_size=1, max_size=10))
    @settings(max_examples=100, deadline=None)
    def test_vocabulary_never_grows(self, sentences):
        before = {t for s in sentences for t in s}
        after = {t for s in lemmatize_corpus(sentences) for t in s.tokens}
        assert len(after) <= len(before)

    def test_custom_tagger_injectable(self):
        def all_other(tokens):
            return [TaggedToken(t, PosTag.OTHER) for t in tokens]

        out = list(lemmatize_corpus([["engines", "spinning"]], tagger=all_other))
        assert out[0].tokens == ["engines", "spinning"]


class TestExceptionTables:
    def test_default_table_loads(self):
        table = default_exception_table()
        assert table[("went", PosTag.VERB)] == "go"
        assert table[("children", PosTag.NOUN)] == "child"

    def test_table_roundtrip(self, tmp_path):
        path = tmp_path / "exceptions.tsv"
        path.write_text("# comment\nfoos\tNOUN\tfoo\n", encoding="utf-8")
        table = load_exception_table(path)
        assert table == {("foos", PosTag.NOUN): "foo"}
        out = list(lemmatize_corpus([["foos"]], exceptions=table))
        assert out[0].tokens == ["foo"]


def test_estimator_params_roundtrip():
    tagger = RuleBasedTagger()
    lemmatizer = RuleLemmatizer(tagger=tagger, exceptions={})
    params = lemmatizer.get_params()
    assert params["tagger"] is tagger
    assert RuleLemmatizer(**params).get_params() == params
