"""The four-stage rephrasing pipeline for a single text.

Detect finds profanity spans, Assign attaches attribute labels, Reveal
renders an annotated explanation, and Eliminate rewrites the text so
that detection no longer fires.

Annotation format: each highlighted region becomes ``[[slice]]{tags}``
where tags name the contributing sources ("profanity" or an attribute
tag); when labels exist, a legend of attribute descriptions follows
after a blank line. Stripping the markers and legend restores the
original text byte for byte.

Elimination may need several passes: rewriting can splice previously
separated words into a new lexicon phrase. Passes run until a full
re-scan finds nothing, and the recorded edits always map the original
text directly to the final result, however many passes ran.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .classify import (
    AttributeLabel,
    assign_computing_attributes,
    assign_identity_attributes,
)
from .detect import Comment, DetectionResult, FilterConfig, detect_offensive
from .errors import FixpointNotReachedError, OverlapAfterMergeError
from .lexicon import MatcherBundle, MatchSpan, normalize_phrase
from .taxonomy import AttributeId

_PROFANITY_TAG = "profanity"
_ADHOC_ID = "adhoc"


class RephraseStrategy(enum.Enum):
    MASK = "mask"
    REMOVE = "remove"
    PLACEHOLDER = "placeholder"


DEFAULT_PLACEHOLDERS: dict[str, str] = {
    _PROFANITY_TAG: "[removed]",
    "Gender": "[person]",
    "SexualOrientation": "[person]",
    "Disability": "[person]",
    "Age": "[person]",
    "EmploymentStatus": "[person]",
    "Ethnicity": "[group]",
    "Religion": "[group]",
    "Location": "[group]",
    "LanguageAbility": "[group]",
    "Software": "[product]",
    "Hardware": "[product]",
}


@dataclass(frozen=True)
class MergedSpan:
    """A maximal run of overlapping match spans, with their source tags."""

    start: int
    end: int
    tags: tuple[str, ...]
    sources: tuple[MatchSpan, ...]


@dataclass(frozen=True)
class RephraseEdit:
    """One contiguous replacement mapping the original text to the rewrite.

    The span's phrase is the normalized original slice; its lexicon_id
    joins every lexicon that contributed with '+'. Edits are
    non-overlapping and sorted, and applying them all reproduces the
    eliminated text.
    """

    span: MatchSpan
    replacement: str
    strategy: RephraseStrategy


@dataclass(frozen=True)
class DareOutput:
    """Everything the four stages produced for one text."""

    original: str
    detected: bool
    spans: tuple[MatchSpan, ...]
    labels: tuple[AttributeLabel, ...]
    revealed: str
    eliminated: str
    edits: tuple[RephraseEdit, ...]
    strategy: RephraseStrategy

    def __post_init__(self) -> None:
        if not self.detected:
            if self.spans or self.labels or self.edits:
                raise ValueError("clean output must carry no spans, labels, or edits")
            if self.revealed != self.original or self.eliminated != self.original:
                raise ValueError("clean output must leave the text unchanged")

    def to_dict(self) -> dict:
        return {
            "original": self.original,
            "detected": self.detected,
            "spans": [s.to_dict(with_attribute=True) for s in self.spans],
            "labels": [
                {
                    "attribute": label.attribute.value,
                    "method": label.method.value,
                    "spans": [s.to_dict() for s in label.evidence_spans],
                }
                for label in self.labels
            ],
            "revealed": self.revealed,
            "eliminated": self.eliminated,
            "edits": [
                {
                    "span": e.span.to_dict(),
                    "replacement": e.replacement,
                    "strategy": e.strategy.value,
                }
                for e in self.edits
            ],
            "strategy": self.strategy.value,
        }


def _span_tag(span: MatchSpan) -> str:
    return _PROFANITY_TAG if span.attribute is None else span.attribute.tag


def merge_spans(spans: Iterable[MatchSpan]) -> list[MergedSpan]:
    """Collapse overlapping spans into disjoint regions, keeping sources."""
    ordered = sorted(set(spans), key=MatchSpan.sort_key)
    groups: list[list[MatchSpan]] = []
    ends: list[int] = []
    for span in ordered:
        if groups and span.start < ends[-1]:
            groups[-1].append(span)
            ends[-1] = max(ends[-1], span.end)
        else:
            groups.append([span])
            ends.append(span.end)
    return [
        MergedSpan(
            start=group[0].start,
            end=end,
            tags=tuple(sorted({_span_tag(s) for s in group})),
            sources=tuple(group),
        )
        for group, end in zip(groups, ends)
    ]


def _detection_for(text: str, matchers: MatcherBundle, filter_cfg: FilterConfig) -> DetectionResult:
    comment = Comment(project_id=_ADHOC_ID, message_id=_ADHOC_ID, text=text)
    return detect_offensive(comment, matchers.profanity, filter_cfg)


def dare_detect(
    text: str, matchers: MatcherBundle, filter_cfg: FilterConfig
) -> tuple[bool, tuple[MatchSpan, ...]]:
    """Detect stage: (offensive?, profanity spans) for a standalone text."""
    detection = _detection_for(text, matchers, filter_cfg)
    return detection.offensive, detection.profanity_spans


def dare_assign(
    text: str,
    detection: tuple[bool, Sequence[MatchSpan]],
    matchers: MatcherBundle,
) -> list[AttributeLabel]:
    """Assign stage: attribute labels for a text already run through detect."""
    detected, spans = detection
    if not detected:
        return []
    result = DetectionResult(
        project_id=_ADHOC_ID,
        message_id=_ADHOC_ID,
        offensive=True,
        profanity_spans=tuple(spans),
        candidate_sentences=(),
    )
    comment = Comment(project_id=_ADHOC_ID, message_id=_ADHOC_ID, text=text)
    labels: list[AttributeLabel] = []
    if matchers.attributes is not None:
        labels.extend(assign_identity_attributes(result, comment, matchers.attributes))
    if matchers.gazetteers is not None:
        labels.extend(assign_computing_attributes(result, comment, matchers.gazetteers))
    return labels


def dare_reveal(
    text: str, merged: Sequence[MergedSpan], labels: Sequence[AttributeLabel]
) -> str:
    """Reveal stage: wrap each region as [[slice]]{tags} and append a legend."""
    parts: list[str] = []
    last = 0
    for region in merged:
        if region.start < last:
            raise OverlapAfterMergeError(
                f"regions overlap at {region.start} (previous ended at {last})"
            )
        parts.append(text[last : region.start])
        parts.append(f"[[{text[region.start:region.end]}]]{{{','.join(region.tags)}}}")
        last = region.end
    parts.append(text[last:])
    annotated = "".join(parts)
    if labels:
        legend = "\n".join(
            f"{label.attribute.tag}: {label.attribute.description}" for label in labels
        )
        annotated = f"{annotated}\n\n{legend}"
    return annotated


_ANNOTATION_RE = re.compile(r"\[\[(.*?)\]\]\{[^{}]*\}", re.DOTALL)
_LEGEND_LINES = frozenset(f"{a.tag}: {a.description}" for a in AttributeId)


def strip_annotations(revealed: str) -> str:
    """Undo dare_reveal: drop the legend block, then unwrap annotations.

    Assumes the input came from dare_reveal; original texts that already
    contain annotation-shaped substrings are not distinguished.
    """
    idx = revealed.rfind("\n\n")
    if idx != -1:
        tail_lines = revealed[idx + 2 :].split("\n")
        if tail_lines and all(line in _LEGEND_LINES for line in tail_lines):
            revealed = revealed[:idx]
    return _ANNOTATION_RE.sub(r"\1", revealed)


def apply_edits(original: str, edits: Sequence[RephraseEdit]) -> str:
    """Splice edits into the original; they must be sorted and disjoint."""
    parts: list[str] = []
    last = 0
    for edit in edits:
        if edit.span.start < last:
            raise ValueError("edits overlap or are out of order")
        parts.append(original[last : edit.span.start])
        parts.append(edit.replacement)
        last = edit.span.end
    parts.append(original[last:])
    return "".join(parts)


def _mask(slice_: str) -> str:
    out: list[str] = []
    kept_first = False
    for ch in slice_:
        if ch.isalnum():
            out.append(ch if not kept_first else "*")
            kept_first = True
        else:
            out.append(ch)
    return "".join(out)


def _placeholder(tags: Sequence[str], placeholders: dict[str, str]) -> str:
    for attr in AttributeId:
        if attr.tag in tags:
            return placeholders.get(attr.tag, "[removed]")
    return placeholders.get(_PROFANITY_TAG, "[removed]")


def _has_profanity_source(region: MergedSpan) -> bool:
    # profanity lexicons are the only ones whose spans carry no attribute
    return any(source.attribute is None for source in region.sources)


class _Rewriter:
    """Tracks per-original-scalar replacements across elimination passes.

    rep[i] is what original scalar i currently expands to; touched marks
    scalars covered by some edit even when their text survived (the kept
    first letter of a mask). The final edit list is read off as maximal
    touched runs, so it stays valid against the original text no matter
    how many passes rewrote intermediate states.
    """

    def __init__(self, original: str) -> None:
        self.original = original
        self.rep: list[str] = list(original)
        self.touched: list[bool] = [False] * len(original)
        self.ids: list[set[str]] = [set() for _ in original]

    def current(self) -> str:
        return "".join(self.rep)

    def _layout(self) -> tuple[str, list[int], list[int]]:
        chars: list[str] = []
        owner: list[int] = []
        starts: list[int] = [0] * len(self.rep)
        pos = 0
        for i, chunk in enumerate(self.rep):
            starts[i] = pos
            for ch in chunk:
                chars.append(ch)
                owner.append(i)
            pos += len(chunk)
        return "".join(chars), owner, starts

    def apply(self, edits: list[tuple[int, int, str, frozenset[str]]]) -> None:
        """Apply one pass of (start, end, replacement, lexicon_ids) edits.

        Coordinates address the current text. Edits are expanded to whole
        replacement chunks, and expansions that collide are fused so a
        chunk is never split.
        """
        current, owner, starts = self._layout()
        expanded = []
        for x, y, repl, id_set in sorted(edits, key=lambda e: (e[0], e[1])):
            i0 = owner[x]
            i1 = owner[y - 1]
            a = starts[i0]
            b = starts[i1] + len(self.rep[i1])
            expanded.append([a, b, [(x, y, repl)], id_set])
        groups: list[list] = []
        for item in expanded:
            if groups and item[0] < groups[-1][1]:
                groups[-1][1] = max(groups[-1][1], item[1])
                groups[-1][2].extend(item[2])
                groups[-1][3] = groups[-1][3] | item[3]
            else:
                groups.append(item)
        for a, b, pieces, id_set in groups:
            parts: list[str] = []
            pos = a
            for x, y, repl in pieces:
                parts.append(current[pos:x])
                parts.append(repl)
                pos = y
            parts.append(current[pos:b])
            i0 = owner[a]
            i1 = owner[b - 1]
            self.rep[i0] = "".join(parts)
            for j in range(i0 + 1, i1 + 1):
                self.rep[j] = ""
            for j in range(i0, i1 + 1):
                self.touched[j] = True
                self.ids[j] |= id_set

    def edits(self, strategy: RephraseStrategy) -> list[RephraseEdit]:
        out: list[RephraseEdit] = []
        n = len(self.original)
        i = 0
        while i < n:
            if not self.touched[i]:
                i += 1
                continue
            j = i
            id_union: set[str] = set()
            while j < n and self.touched[j]:
                id_union |= self.ids[j]
                j += 1
            slice_ = self.original[i:j]
            out.append(
                RephraseEdit(
                    span=MatchSpan(
                        start=i,
                        end=j,
                        lexicon_id="+".join(sorted(id_union)),
                        phrase=normalize_phrase(slice_) or slice_,
                    ),
                    replacement="".join(self.rep[i:j]),
                    strategy=strategy,
                )
            )
            i = j
        return out


def _pass_edits(
    current: str,
    merged: Sequence[MergedSpan],
    strategy: RephraseStrategy,
    placeholders: dict[str, str],
) -> list[tuple[int, int, str, frozenset[str]]]:
    edits = []
    for region in merged:
        start, end = region.start, region.end
        if strategy is RephraseStrategy.MASK:
            repl = _mask(current[start:end])
        elif strategy is RephraseStrategy.REMOVE:
            repl = ""
            # consume one adjoining space so deletion leaves no doubled
            # space (interior) or dangling edge space (text edges)
            left_space = start > 0 and current[start - 1] == " "
            right_space = end < len(current) and current[end] == " "
            if right_space and (left_space or start == 0):
                end += 1
            elif left_space and end == len(current):
                start -= 1
        else:
            repl = _placeholder(region.tags, placeholders)
        edits.append(
            (start, end, repl, frozenset(s.lexicon_id for s in region.sources))
        )
    return edits


def dare_eliminate(
    text: str,
    spans: Iterable[MatchSpan] | Sequence[MergedSpan],
    strategy: RephraseStrategy,
    matchers: MatcherBundle | None = None,
    placeholders: dict[str, str] | None = None,
    max_passes: int = 8,
) -> tuple[str, list[RephraseEdit]]:
    """Eliminate stage: rewrite the spans, re-checking until detection dies.

    Without matchers a single pass runs and no fixpoint is verified.
    With matchers, every pass re-scans the profanity matcher (rewrites
    can splice a new phrase together) and rewriting repeats until it
    finds nothing; FixpointNotReached is raised past max_passes.
    """
    span_list = list(spans)
    if not span_list:
        return text, []
    if isinstance(span_list[0], MergedSpan):
        merged = list(span_list)
    else:
        merged = merge_spans(span_list)
    if placeholders is None:
        placeholders = DEFAULT_PLACEHOLDERS
    rewriter = _Rewriter(text)
    for _ in range(max_passes):
        current = rewriter.current()
        rewriter.apply(_pass_edits(current, merged, strategy, placeholders))
        if matchers is None:
            break
        merged = merge_spans(matchers.profanity.find_matches(rewriter.current()))
        if not merged:
            break
    else:
        raise FixpointNotReachedError(max_passes, len(merged))
    return rewriter.current(), rewriter.edits(strategy)


def dare_process(
    text: str,
    matchers: MatcherBundle,
    filter_cfg: FilterConfig | None = None,
    strategy: RephraseStrategy = RephraseStrategy.MASK,
    placeholders: dict[str, str] | None = None,
    max_passes: int = 8,
) -> DareOutput:
    """Run all four stages over one text."""
    if filter_cfg is None:
        filter_cfg = FilterConfig()
    detected, profanity_spans = dare_detect(text, matchers, filter_cfg)
    if not detected:
        return DareOutput(
            original=text,
            detected=False,
            spans=(),
            labels=(),
            revealed=text,
            eliminated=text,
            edits=(),
            strategy=strategy,
        )
    labels = dare_assign(text, (detected, profanity_spans), matchers)
    spans = set(profanity_spans)
    for label in labels:
        spans.update(label.evidence_spans)
    ordered_spans = tuple(sorted(spans, key=MatchSpan.sort_key))
    merged = merge_spans(ordered_spans)
    revealed = dare_reveal(text, merged, labels)
    # rewrite only what triggered detection; attribute evidence that merely
    # co-occurs (keywords, product names) stays readable in the rewrite
    eliminated, edits = dare_eliminate(
        text,
        [region for region in merged if _has_profanity_source(region)],
        strategy,
        matchers=matchers,
        placeholders=placeholders,
        max_passes=max_passes,
    )
    return DareOutput(
        original=text,
        detected=True,
        spans=ordered_spans,
        labels=tuple(labels),
        revealed=revealed,
        eliminated=eliminated,
        edits=tuple(edits),
        strategy=strategy,
    )
