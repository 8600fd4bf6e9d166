"""Stopword lists: embedded assets, merging, file I/O, and application.

Embedded lists: ``nltk`` (179 general-English words), ``uspto`` (99
patent-office words; the union of the two has 220 members), ``study`` (the
87-word technical-language list), and ``prior`` (the 25 terms carried over
from the earlier manually-curated list). List files are plain text, one
term per line, with a "#"-prefixed comment header.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

from .errors import UnknownListError

EMBEDDED_LISTS = ("nltk", "uspto", "study", "prior")

_DATA_FILES = {
    "nltk": "nltk_stopwords.txt",
    "uspto": "uspto_stopwords.txt",
    "study": "study_stopwords.txt",
}


@dataclass(frozen=True)
class StopwordEntry:
    term: str
    sources: tuple[str, ...]

    @property
    def source(self) -> str:
        """First-seen source tag."""
        return self.sources[0]


class StopwordList:
    """Ordered, deduplicated stopword list with per-term provenance tags.

    Terms are case-folded on entry and kept sorted lexicographically.
    """

    def __init__(self, name: str, entries: Iterable[StopwordEntry] = ()):
        self.name = name
        self._entries: dict[str, StopwordEntry] = {}
        for entry in entries:
            self._add(entry.term, entry.sources)

    def _add(self, term: str, sources: Iterable[str]) -> None:
        folded = term.casefold()
        existing = self._entries.get(folded)
        if existing is None:
            self._entries[folded] = StopwordEntry(folded, tuple(sources))
        else:
            new = tuple(s for s in sources if s not in existing.sources)
            if new:
                self._entries[folded] = StopwordEntry(folded, existing.sources + new)

    @classmethod
    def from_terms(cls, name: str, terms: Iterable[str], source: str) -> "StopwordList":
        lst = cls(name)
        for term in terms:
            lst._add(term, (source,))
        return lst

    @property
    def entries(self) -> list[StopwordEntry]:
        return [self._entries[t] for t in sorted(self._entries)]

    def terms(self) -> list[str]:
        return sorted(self._entries)

    def term_set(self) -> frozenset[str]:
        return frozenset(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, term: str) -> bool:
        return term.casefold() in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.terms())

    def __eq__(self, other) -> bool:
        if not isinstance(other, StopwordList):
            return NotImplemented
        return self._entries == other._entries

    def write(self, fh: IO[str]) -> None:
        sources = sorted({s for e in self.entries for s in e.sources})
        fh.write(f"# name: {self.name}\n")
        fh.write(f"# sources: {';'.join(sources)}\n")
        for term in self.terms():
            fh.write(term + "\n")

    @classmethod
    def read(cls, fh: IO[str], name: str | None = None, source: str | None = None) -> "StopwordList":
        parsed_name = name
        terms = []
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("name:") and parsed_name is None:
                    parsed_name = body[len("name:"):].strip()
                continue
            if line.strip():
                terms.append(line.strip())
        final_name = parsed_name or "unnamed"
        return cls.from_terms(final_name, terms, source or final_name)


def merge_lists(lists: Sequence[StopwordList], name: str = "merged") -> StopwordList:
    """Case-folded set union; first-seen source tags win, extras append."""
    if not lists:
        raise ValueError("need at least one list to merge")
    merged = StopwordList(name)
    for lst in lists:
        for entry in lst.entries:
            merged._add(entry.term, entry.sources)
    return merged


def _read_data(filename: str) -> str:
    return resources.files("stopmine.data").joinpath(filename).read_text("utf-8")


def load_embedded_list(name: str) -> StopwordList:
    if name in _DATA_FILES:
        return StopwordList.read(io.StringIO(_read_data(_DATA_FILES[name])), name=name, source=name)
    if name == "prior":
        carried = [t for t, status in prior_study_table() if status == "carried"]
        return StopwordList.from_terms("prior", carried, "prior")
    raise UnknownListError(name)


def prior_study_table() -> list[tuple[str, str]]:
    """The earlier study's list with each term's re-evaluation status.

    Status is one of ``confirmed`` (re-identified independently),
    ``carried`` (kept by the expert review only), ``dropped``.
    """
    rows = []
    for row in csv.reader(io.StringIO(_read_data("prior_study.tsv")), delimiter="\t"):
        if not row or row[0].startswith("#"):
            continue
        rows.append((row[0], row[1]))
    return rows


def resolve_lists(names_or_paths: Iterable[str]) -> list[StopwordList]:
    """Map each name to an embedded list, or treat it as a file path."""
    out = []
    for item in names_or_paths:
        if item in EMBEDDED_LISTS:
            out.append(load_embedded_list(item))
        elif Path(item).is_file():
            with open(item, "r", encoding="utf-8") as fh:
                out.append(StopwordList.read(fh, name=Path(item).stem))
        else:
            raise UnknownListError(item)
    return out


def matching_set(lists: Sequence[StopwordList]) -> frozenset[str]:
    """Token-level matcher for the merged lists.

    Multiword entries ("et al") also match their phrase-token form
    ("et_al"), since phrase joining is how such terms appear in a corpus.
    """
    terms: set[str] = set()
    for lst in lists:
        for term in lst.terms():
            terms.add(term)
            if " " in term:
                terms.add(term.replace(" ", "_"))
    return frozenset(terms)


def apply_stoplist(tokens: Iterable[str], stopset: frozenset[str]) -> list[str]:
    """Drop tokens present in the (already merged) stop set."""
    return [t for t in tokens if t not in stopset]
