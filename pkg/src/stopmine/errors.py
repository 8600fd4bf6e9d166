"""Exception hierarchy shared across the toolkit.

Data problems (malformed input, contract violations) and I/O problems get
distinct types so the CLI can map them to distinct exit codes.
"""


class StopmineError(Exception):
    """Base class for all toolkit errors."""


class DataError(StopmineError):
    """A record, corpus, or argument violates a data contract."""


class MalformedRecordError(DataError):
    """An input record could not be parsed. Carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateDocumentIdError(DataError):
    def __init__(self, doc_id: str, line_number: int | None = None):
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(f"duplicate document id {doc_id!r}{where}")
        self.doc_id = doc_id
        self.line_number = line_number


class EmptyCorpusError(DataError):
    """The operation requires at least one non-empty document or sentence."""


class UnknownTermError(DataError):
    def __init__(self, term: str):
        super().__init__(f"unknown term {term!r}")
        self.term = term


class UnknownListError(DataError):
    def __init__(self, name: str):
        super().__init__(f"unknown stopword list {name!r}")
        self.name = name


class MismatchedStatsError(DataError):
    """Ranked lists being combined were derived from different stats tables."""


class SessionError(StopmineError):
    """A review-session operation was invoked in an invalid state."""


class IncompleteLabelingError(SessionError):
    """Raised when an operation requires every (rater, term) pair labeled.

    ``missing`` holds the outstanding (rater, term) pairs.
    """

    def __init__(self, missing: list[tuple[str, str]]):
        preview = ", ".join(f"{r}:{t}" for r, t in missing[:5])
        more = "" if len(missing) <= 5 else f" and {len(missing) - 5} more"
        super().__init__(f"labeling incomplete; missing {preview}{more}")
        self.missing = missing


class UndefinedReliabilityError(SessionError):
    """Cronbach's alpha is undefined (no variance in total scores)."""

    def __init__(self, reason: str = "no variance in total scores"):
        super().__init__(reason)
        self.reason = reason
