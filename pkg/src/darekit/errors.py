"""Exception types shared across the toolkit."""

from __future__ import annotations


class DarekitError(Exception):
    """Base class for all toolkit-specific errors."""


class InvalidEncodingError(DarekitError, ValueError):
    """A lexicon file contained a byte sequence that is not valid UTF-8."""

    def __init__(self, path: str, line: int) -> None:
        self.path = path
        self.line = line
        super().__init__(f"{path}: invalid UTF-8 byte sequence on line {line}")


class EmptyLexiconError(DarekitError, ValueError):
    """A lexicon file yielded zero phrases after comment/blank filtering."""


class DuplicateLexiconIdError(DarekitError, ValueError):
    """Two lexicons handed to the matcher compiler share a lexicon_id."""


class NotOffensiveError(DarekitError, ValueError):
    """An attribute-assignment operation was called on a non-offensive detection.

    Signals pipeline misuse: assignment stages only run on comments the
    detection stage flagged.
    """


class UnreadableSourceError(DarekitError, OSError):
    """A corpus source path could not be opened for reading."""


class SchemaMismatchError(DarekitError, ValueError):
    """A mapped field is missing from the corpus source header."""


class UnwritablePathError(DarekitError, OSError):
    """A report or result file could not be written."""


class OverlapAfterMergeError(DarekitError, RuntimeError):
    """Spans handed to an annotation stage still overlap after merging.

    Internal consistency failure: merged span lists are produced by
    ``merge_spans`` and must be pairwise disjoint.
    """


class FixpointNotReachedError(DarekitError, RuntimeError):
    """Rephrasing did not converge to a detection-free text within the pass bound.

    Happens only with pathological lexicons, e.g. a phrase containing '*'
    (which masking can re-introduce) or single-letter phrases that masking
    leaves unchanged.
    """

    def __init__(self, passes: int, remaining: int) -> None:
        self.passes = passes
        self.remaining = remaining
        super().__init__(
            f"rephrasing still matched {remaining} phrase(s) after {passes} passes"
        )
