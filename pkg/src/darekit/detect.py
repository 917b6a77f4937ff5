"""Comment-level offensive-language detection.

Two steps run per comment: a profanity matcher scan over the full text,
then a configurable heuristic filter that decides whether the comment
counts as offensive. The filter is a deterministic stand-in for manual
review, so the raw candidate spans stay on the result for callers that
want to re-validate.

Sentence offsets are recorded alongside so later stages can reason at
sentence granularity (co-occurrence rules, counts).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexicon import LexiconKind, MatchSpan, PhraseMatcher

_TERMINATORS = frozenset({".", "!", "?", "\n"})


@dataclass(frozen=True)
class Comment:
    """One chat message. (project_id, message_id) identifies it in a corpus."""

    project_id: str
    message_id: str
    text: str
    author_hash: str = ""
    timestamp: str | None = None

    def __post_init__(self) -> None:
        if not self.project_id:
            raise ValueError("project_id must be non-empty")
        if not self.message_id:
            raise ValueError("message_id must be non-empty")


@dataclass(frozen=True)
class Sentence:
    """A sentence slice of a comment; offsets are Unicode scalar indices."""

    start: int
    end: int
    text: str


@dataclass(frozen=True)
class FilterConfig:
    """Heuristic filter settings.

    ignore_code discards spans that sit entirely inside fenced code
    blocks or inline backticks; min_spans is the minimum number of
    surviving spans for a comment to count as offensive.
    """

    ignore_code: bool = False
    min_spans: int = 1

    def __post_init__(self) -> None:
        if self.min_spans < 1:
            raise ValueError("min_spans must be >= 1")


@dataclass(frozen=True)
class DetectionResult:
    """Detection outcome for one comment.

    profanity_spans is the raw candidate set (before the filter);
    candidate_sentences holds indices into split_sentences(comment.text)
    for every sentence containing at least one span.
    """

    project_id: str
    message_id: str
    offensive: bool
    profanity_spans: tuple[MatchSpan, ...]
    candidate_sentences: tuple[int, ...]


def split_sentences(text: str) -> list[Sentence]:
    """Rule-based sentence split on '.', '!', '?', and newline.

    A run of consecutive terminators ends the sentence it follows and
    stays attached to it. Fragments with no content besides terminators
    and whitespace are dropped; leading whitespace is left in the gap
    between sentences. Concatenating the slices and the gaps between
    them reconstructs the text exactly.
    """
    sentences: list[Sentence] = []
    n = len(text)
    i = 0
    while i < n:
        start = i
        has_content = False
        while i < n and text[i] not in _TERMINATORS:
            if not text[i].isspace():
                has_content = True
            i += 1
        while i < n and text[i] in _TERMINATORS:
            i += 1
        if not has_content:
            continue
        while start < i and text[start].isspace():
            start += 1
        sentences.append(Sentence(start=start, end=i, text=text[start:i]))
    return sentences


def code_regions(text: str) -> list[tuple[int, int]]:
    """Half-open ranges of fenced (``` ... ```) and inline (`...`) code.

    An unclosed fence runs to the end of the text; an unclosed inline
    backtick is treated as literal. Returned ranges include the markers
    and are disjoint and sorted.
    """
    regions: list[tuple[int, int]] = []
    n = len(text)
    i = 0
    while i < n:
        if text.startswith("```", i):
            close = text.find("```", i + 3)
            end = n if close == -1 else close + 3
            regions.append((i, end))
            i = end
        elif text[i] == "`":
            close = text.find("`", i + 1)
            if close == -1:
                i += 1
            else:
                regions.append((i, close + 1))
                i = close + 1
        else:
            i += 1
    return regions


def _in_code(span: MatchSpan, regions: list[tuple[int, int]]) -> bool:
    return any(start <= span.start and span.end <= end for start, end in regions)


def filter_candidate(
    comment: Comment, spans: list[MatchSpan], filter_cfg: FilterConfig
) -> bool:
    """Decide whether candidate spans make the comment offensive.

    Spans entirely inside code regions are discarded when
    filter_cfg.ignore_code is set; the rest must number at least
    filter_cfg.min_spans.
    """
    surviving = list(spans)
    if filter_cfg.ignore_code and surviving:
        regions = code_regions(comment.text)
        surviving = [s for s in surviving if not _in_code(s, regions)]
    return len(surviving) >= filter_cfg.min_spans


def detect_offensive(
    comment: Comment, profanity_matcher: PhraseMatcher, filter_cfg: FilterConfig
) -> DetectionResult:
    """Scan one comment for profanity and apply the heuristic filter."""
    if profanity_matcher.kinds != {LexiconKind.PROFANITY}:
        raise ValueError("detect_offensive needs a profanity-only matcher")
    spans = profanity_matcher.find_matches(comment.text)
    offensive = bool(spans) and filter_candidate(comment, spans, filter_cfg)
    candidates: list[int] = []
    if spans:
        for idx, sentence in enumerate(split_sentences(comment.text)):
            if any(s.start < sentence.end and s.end > sentence.start for s in spans):
                candidates.append(idx)
    return DetectionResult(
        project_id=comment.project_id,
        message_id=comment.message_id,
        offensive=offensive,
        profanity_spans=tuple(spans),
        candidate_sentences=tuple(candidates),
    )
