"""The transformers compose with the scikit-learn ecosystem."""

import random

from sklearn.base import clone
from sklearn.pipeline import Pipeline

from _synth import random_sentences
from stopmine.corpus import TokenSequence
from stopmine.lemma import RuleLemmatizer
from stopmine.lists import load_embedded_list, matching_set
from stopmine.phrases import PhraseDetector, StopwordPhraseSplitter


def corpus():
    rng = random.Random(21)
    sentences = random_sentences(rng, 40, 350, 12)
    sentences += [["the", "gas", "turbine", "spins"]] * 6
    return [TokenSequence(f"d{i}", s if isinstance(s, list) else s.tokens)
            for i, s in enumerate(sentences)]


def test_clone_preserves_params():
    detector = PhraseDetector(delta=0.5, thresholds=(3.0, 1.5), workers=2)
    cloned = clone(detector)
    assert cloned.get_params() == detector.get_params()
    assert not hasattr(cloned, "pass_counts_")


def test_set_params():
    detector = PhraseDetector()
    detector.set_params(delta=2.0)
    assert detector.delta == 2.0


def test_sklearn_pipeline_composition():
    stopset = matching_set([load_embedded_list("nltk")])
    pipe = Pipeline([
        ("phrases", PhraseDetector(thresholds=(5.0, 2.5))),
        ("split", StopwordPhraseSplitter(stoplist=stopset)),
        ("lemmas", RuleLemmatizer()),
    ])
    out = pipe.fit_transform(corpus())
    assert len(out) == len(corpus())
    tokens = {t for s in out for t in s.tokens}
    assert "gas_turbine" in tokens or "gas_turbine_spins" in tokens
    # a second transform of the same input is identical (stateless suffix)
    again = pipe.transform(corpus())
    assert [s.tokens for s in again] == [s.tokens for s in out]
