"""Corpus loading, sentence segmentation, and token normalization.

A document is one corpus record (id + title + abstract). Sentences are the
unit for phrase counting; documents are the unit for the term statistics.
Three input formats are supported: ``jsonl`` (one object per line with
``id``/``title``/``abstract`` fields), ``tsv`` (three columns, no header),
and ``plain_lines`` (each line is one single-sentence document).
"""

from __future__ import annotations

import io
import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import DuplicateDocumentIdError, MalformedRecordError

CORPUS_FORMATS = ("jsonl", "tsv", "plain_lines")

#: Punctuation that survives tokenization. "_" joins phrase components.
KEPT_PUNCTUATION = frozenset("-/_")

_SENTENCE_TERMINATORS = frozenset(".!?")


@dataclass(frozen=True)
class Document:
    """One corpus record; the unit over which document-level stats count."""

    id: str
    title: str = ""
    abstract: str = ""

    def __post_init__(self):
        if not self.id:
            raise MalformedRecordError(0, "document id must be non-empty")
        if not self.title and not self.abstract:
            raise MalformedRecordError(
                0, f"document {self.id!r} has neither title nor abstract"
            )


@dataclass
class TokenSequence:
    """Ordered normalized tokens of one sentence, tied to its document."""

    doc_id: str
    tokens: list[str] = field(default_factory=list)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def _parse_jsonl(line: str, line_number: int) -> Document:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecordError(line_number, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecordError(line_number, "record is not a JSON object")
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise MalformedRecordError(line_number, "missing or non-string 'id'")
    title = obj.get("title", "")
    abstract = obj.get("abstract", "")
    if not isinstance(title, str) or not isinstance(abstract, str):
        raise MalformedRecordError(line_number, "'title'/'abstract' must be strings")
    try:
        return Document(doc_id, title, abstract)
    except MalformedRecordError as exc:
        raise MalformedRecordError(line_number, str(exc)) from exc


def _parse_tsv(line: str, line_number: int) -> Document:
    parts = line.split("\t")
    if len(parts) != 3:
        raise MalformedRecordError(
            line_number, f"expected 3 tab-separated fields, got {len(parts)}"
        )
    doc_id, title, abstract = parts
    try:
        return Document(doc_id, title, abstract)
    except MalformedRecordError as exc:
        raise MalformedRecordError(line_number, str(exc)) from exc


def load_corpus(source: str | Path | IO[str], format: str = "jsonl") -> Iterator[Document]:
    """Lazily yield documents from ``source`` in input order.

    ``source`` may be a path or an open text stream. ``plain_lines`` treats
    each non-blank line as a single-sentence document with synthetic id
    ``doc-<line number>`` (1-based). Malformed records and duplicate ids
    raise with the offending line number.
    """
    if format not in CORPUS_FORMATS:
        raise ValueError(f"format must be one of {CORPUS_FORMATS}, got {format!r}")

    def generate(stream: IO[str]) -> Iterator[Document]:
        seen: set[str] = set()
        for line_number, raw in enumerate(stream, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if format == "jsonl":
                doc = _parse_jsonl(line, line_number)
            elif format == "tsv":
                doc = _parse_tsv(line, line_number)
            else:
                doc = Document(f"doc-{line_number}", "", line)
            if doc.id in seen:
                raise DuplicateDocumentIdError(doc.id, line_number)
            seen.add(doc.id)
            yield doc

    if isinstance(source, (str, Path)):
        def from_path() -> Iterator[Document]:
            with io.open(source, "r", encoding="utf-8") as stream:
                yield from generate(stream)

        return from_path()
    return generate(source)


def segment_sentences(doc: Document) -> list[str]:
    """Split a document into sentences.

    The whole title is kept as one sentence. The abstract is cut after any
    run of ``.``, ``!``, ``?`` followed by whitespace or end of text. No
    abbreviation protection is attempted ("approx. 5 V." splits after
    "approx."), trading linguistic fidelity for reproducibility.
    """
    sentences: list[str] = []
    title = doc.title.strip()
    if title:
        sentences.append(title)
    text = doc.abstract
    start = 0
    for i, ch in enumerate(text):
        if ch in _SENTENCE_TERMINATORS:
            nxt = text[i + 1] if i + 1 < len(text) else ""
            if nxt == "" or nxt.isspace():
                piece = text[start : i + 1].strip()
                if piece:
                    sentences.append(piece)
                start = i + 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _is_strippable(ch: str) -> bool:
    # Unicode punctuation classes plus ASCII symbols; "-", "/", "_" survive.
    if ch in KEPT_PUNCTUATION:
        return False
    if unicodedata.category(ch).startswith("P"):
        return True
    return ch.isascii() and unicodedata.category(ch).startswith("S")


class _StripTable(dict):
    """str.translate table that spaces out punctuation, lazily per codepoint."""

    def __missing__(self, codepoint: int) -> str:
        ch = chr(codepoint)
        repl = " " if _is_strippable(ch) else ch
        self[codepoint] = repl
        return repl


_STRIP_TABLE = _StripTable()


def normalize_tokenize(sentence: str, doc_id: str = "") -> TokenSequence:
    """Lowercase and tokenize one sentence.

    Every punctuation character except "-", "/", "_" becomes a space; tokens
    are maximal non-whitespace runs; tokens made up only of the kept
    punctuation characters are dropped. Digits are kept.
    """
    lowered = sentence.lower().translate(_STRIP_TABLE)
    tokens = [t for t in lowered.split() if t.strip("-/_")]
    return TokenSequence(doc_id, tokens)


def tokenize_document(doc: Document) -> list[TokenSequence]:
    """Segment and tokenize one document, dropping empty sentences."""
    out = []
    for sentence in segment_sentences(doc):
        seq = normalize_tokenize(sentence, doc_id=doc.id)
        if seq.tokens:
            out.append(seq)
    return out


def tokenize_corpus(docs: Iterable[Document]) -> Iterator[TokenSequence]:
    """Tokenize a document stream into per-sentence token sequences."""
    for doc in docs:
        yield from tokenize_document(doc)
