"""POS-conditioned reduction of tokens to regularized forms.

The tagger is deliberately rule-based and deterministic: a closed-class
lexicon, a small base-verb lexicon, and suffix heuristics. It is injectable,
so a statistical tagger can be substituted without touching the lemmatizer.
Verbs lose inflectional suffixes (-ing, -ed, -s/-es) with consonant
undoubling and e-restoration; nouns lose plural suffixes; everything else
passes through. Irregular forms come from an editable exception table.

Corpus lemmatization iterates tag+lemmatize per sentence until the sentence
stops changing, which makes the whole operation idempotent even when a
stripped form would be re-tagged differently (e.g. "buildings" -> "building"
-> "build" happens in one call, and a second call is a no-op).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from sklearn.base import BaseEstimator, TransformerMixin

from .corpus import TokenSequence
from .phrases import PHRASE_JOINER

_MAX_FIXPOINT_ROUNDS = 8
_VOWELS = frozenset("aeiouy")

DETERMINERS = frozenset(
    """a an the this that these those each every some any no another such both
    either neither my your his her its our their""".split()
)

_PREPOSITIONS = frozenset(
    """of in on at by for with from to into onto over under between among
    through during within without upon about above below across behind toward
    towards via per against along around before after near off out up down""".split()
)

_PRONOUNS = frozenset(
    """i you he she it we they me him them us who whom whose which what
    himself herself itself myself yourself ourselves themselves one anything
    something nothing everything anyone someone everyone""".split()
)

_CONJUNCTIONS = frozenset(
    """and or but nor so yet if because although while when where whether than
    as since unless until""".split()
)

_AUXILIARIES = frozenset(
    """be is am are was were been being have has had having do does did doing
    will would shall should can could may might must not""".split()
)

#: Words never lemmatized: determiners, prepositions, pronouns, conjunctions,
#: and auxiliaries are tagged OTHER and pass through unchanged.
CLOSED_CLASS = DETERMINERS | _PREPOSITIONS | _PRONOUNS | _CONJUNCTIONS | _AUXILIARIES

#: Base forms tagged VERB ahead of the suffix heuristics.
VERB_LEXICON = frozenset(
    """learn use make form comprise include provide receive connect control
    apply operate generate produce determine detect measure obtain contain
    reduce increase improve prevent enable allow perform transmit convert
    adjust attach insert remove rotate spin move turn hold support mount
    extend couple engage release drive press cut heat cool mix flow run grow
    go take give get put set say see come know think want work help show
    start stop open close send build buy bring teach catch choose deal feel
    fight find keep lead leave lose mean meet pay read sell seek speak spend
    stand throw understand wear win write""".split()
)


class PosTag(str, Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    OTHER = "OTHER"


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    pos: PosTag


Tagger = Callable[[Sequence[str]], "list[TaggedToken]"]

_VERB_SUFFIXES = ("ing", "ed", "ize")
_ADJ_SUFFIXES = ("ous", "ive", "al")


class RuleBasedTagger:
    """Deterministic tagger: lexicons first, then suffix heuristics.

    The -ing/-ed/-ize suffixes mean VERB unless the previous token is a
    determiner, in which case NOUN ("the learning" vs "machines learning").
    Phrase tokens and tokens with non-alphabetic content are OTHER.
    """

    def __call__(self, tokens: Sequence[str]) -> list[TaggedToken]:
        tagged = []
        prev = ""
        for token in tokens:
            tagged.append(TaggedToken(token, self.tag_one(token, prev)))
            prev = token
        return tagged

    def tag_one(self, token: str, prev_token: str = "") -> PosTag:
        if PHRASE_JOINER in token or not token.isalpha():
            return PosTag.OTHER
        if token in CLOSED_CLASS:
            return PosTag.OTHER
        if token in VERB_LEXICON:
            return PosTag.VERB
        if token.endswith(_VERB_SUFFIXES):
            return PosTag.NOUN if prev_token in DETERMINERS else PosTag.VERB
        if token.endswith("ly"):
            return PosTag.ADV
        if token.endswith(_ADJ_SUFFIXES):
            return PosTag.ADJ
        return PosTag.NOUN


def tag_pos(tokens: TokenSequence | Sequence[str], tagger: Tagger | None = None) -> list[TaggedToken]:
    """Tag one sentence with the given (default: rule-based) tagger."""
    seq = tokens.tokens if isinstance(tokens, TokenSequence) else list(tokens)
    return (tagger or RuleBasedTagger())(seq)


ExceptionTable = dict[tuple[str, PosTag], str]


def load_exception_table(source: str | Path | io.TextIOBase) -> ExceptionTable:
    """Read a (surface, pos, lemma) TSV into an exception table."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_exception_table(fh)
    table: ExceptionTable = {}
    for row in csv.reader(source, delimiter="\t"):
        if not row or row[0].startswith("#"):
            continue
        surface, pos, lemma = row
        table[(surface, PosTag(pos))] = lemma
    return table


def default_exception_table() -> ExceptionTable:
    text = resources.files("stopmine.data").joinpath("lemma_exceptions.tsv").read_text("utf-8")
    return load_exception_table(io.StringIO(text))


def _has_vowel(s: str) -> bool:
    return any(c in _VOWELS for c in s)


_UNDOUBLE = frozenset("bdgkmnprtz")  # never ll/ss/ff: fall, pass, stuff keep doubles


def _undouble(stem: str) -> str | None:
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] in _UNDOUBLE:
        return stem[:-1]
    return None


def _restore_e(stem: str) -> str:
    # CVC-shaped stems regain a dropped final "e": mak -> make, stor -> store.
    if len(stem) < 2 or stem[-1] in _VOWELS or stem[-1] in "wxy":
        return stem
    if stem[-2] in _VOWELS and (len(stem) == 2 or stem[-3] not in _VOWELS):
        return stem + "e"
    return stem


def _strip_verb(word: str) -> str:
    if word.endswith("ing") and len(word) > 4:
        stem = word[:-3]
        if len(stem) < 2 or not _has_vowel(stem):
            return word
        return _undouble(stem) or _restore_e(stem)
    if word.endswith("ied") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith("eed"):
        # agreed -> agree; base verbs like speed/proceed live in the table
        return word[:-1] if len(word) > 4 else word
    if word.endswith("ed") and len(word) > 3:
        stem = word[:-2]
        if not _has_vowel(stem):
            return word
        return _undouble(stem) or _restore_e(stem)
    if word.endswith(("xes", "ches", "shes", "sses", "zes")) and len(word) > 3:
        stem = word[:-2]
        if stem.endswith("z") and not stem.endswith("zz"):
            stem += "e"
        return stem
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return word[:-1]
    return word


def _strip_noun(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("xes", "ches", "shes", "sses", "zes")) and len(word) > 3:
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")):
        stem = word[:-1]
        if len(stem) >= 3 and _has_vowel(stem):
            return stem
    return word


def lemmatize(token: TaggedToken, exceptions: ExceptionTable | None = None) -> str:
    """Reduce one tagged token to its regularized form."""
    exceptions = exceptions if exceptions is not None else default_exception_table()
    hit = exceptions.get((token.surface, token.pos))
    if hit is not None:
        return hit
    if token.pos is PosTag.VERB:
        return _strip_verb(token.surface)
    if token.pos is PosTag.NOUN:
        return _strip_noun(token.surface)
    return token.surface


class RuleLemmatizer(BaseEstimator, TransformerMixin):
    """Transformer applying POS tagging + lemmatization over a corpus.

    Sentences are re-tagged and re-lemmatized until the corpus stops
    changing, so transform(transform(X)) == transform(X) for any X.

    With the built-in rule tagger, the ambiguous -ing/-ed/-ize reading is
    resolved once per surface form: a word that ever follows a determiner
    keeps its noun reading everywhere. Each surface form therefore maps to
    exactly one lemma, and the vocabulary never grows. A custom tagger is
    applied per sentence instead, and owns its own consistency.
    """

    def __init__(self, tagger: Tagger | None = None, exceptions: ExceptionTable | None = None):
        self.tagger = tagger
        self.exceptions = exceptions

    def fit(self, X=None, y=None):
        return self

    def __sklearn_is_fitted__(self) -> bool:
        return True  # stateless

    def _resolved(self) -> tuple[Tagger, ExceptionTable]:
        return (self.tagger or RuleBasedTagger(), self.exceptions
                if self.exceptions is not None else default_exception_table())

    def lemmatize_sentence(self, tokens: Sequence[str]) -> list[str]:
        tagger, exceptions = self._resolved()
        current = list(tokens)
        for _ in range(_MAX_FIXPOINT_ROUNDS):
            out = [lemmatize(t, exceptions) for t in tagger(current)]
            if out == current:
                return out
            current = out
        return current

    def _rule_rounds(
        self,
        sentences: list[list[str]],
        tagger: RuleBasedTagger,
        exceptions: ExceptionTable,
    ) -> list[list[str]]:
        current = sentences
        for _ in range(_MAX_FIXPOINT_ROUNDS):
            # Vote pass: suffix-ambiguous words seen after a determiner keep
            # their noun reading everywhere in this corpus.
            noun_override: set[str] = set()
            for tokens in current:
                prev_is_det = False
                for token in tokens:
                    if prev_is_det and token.endswith(_VERB_SUFFIXES):
                        noun_override.add(token)
                    prev_is_det = token in DETERMINERS
            lemma_of: dict[str, str] = {}
            changed = False
            out = []
            for tokens in current:
                lemmas = []
                for token in tokens:
                    lemma = lemma_of.get(token)
                    if lemma is None:
                        pos = tagger.tag_one(token, "the" if token in noun_override else "")
                        lemma = lemmatize(TaggedToken(token, pos), exceptions)
                        lemma_of[token] = lemma
                    if lemma != token:
                        changed = True
                    lemmas.append(lemma)
                out.append(lemmas)
            if not changed:
                return out
            current = out
        return current

    def transform(self, X: Iterable[TokenSequence | Sequence[str]]) -> list[TokenSequence]:
        tagger, exceptions = self._resolved()
        doc_ids = []
        sentences = []
        for sentence in X:
            doc_ids.append(sentence.doc_id if isinstance(sentence, TokenSequence) else "")
            sentences.append(
                sentence.tokens if isinstance(sentence, TokenSequence) else list(sentence)
            )
        if isinstance(tagger, RuleBasedTagger):
            lemmatized = self._rule_rounds(sentences, tagger, exceptions)
        else:
            lemmatized = [self.lemmatize_sentence(tokens) for tokens in sentences]
        return [TokenSequence(d, t) for d, t in zip(doc_ids, lemmatized)]


def lemmatize_corpus(
    corpus: Iterable[TokenSequence | Sequence[str]],
    tagger: Tagger | None = None,
    exceptions: ExceptionTable | None = None,
) -> Iterator[TokenSequence]:
    """Lemmatize every sentence of a corpus (phrase tokens pass through)."""
    yield from RuleLemmatizer(tagger=tagger, exceptions=exceptions).transform(corpus)
