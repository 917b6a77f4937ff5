"""Attribute labelling of offensive comments.

Identity attributes label a comment when any of their keywords occurs
anywhere in it. Software and hardware labels instead require a gazetteer
hit in the same sentence as a profanity span, because naming a product
is only evidence when the profanity is aimed at it.

Classification is multi-label: a comment can carry any subset of the 11
attributes, each backed by the spans that justified it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .detect import Comment, DetectionResult, FilterConfig, detect_offensive, split_sentences
from .errors import NotOffensiveError
from .lexicon import LexiconKind, MatchSpan, PhraseMatcher
from .taxonomy import AttributeId

_ATTRIBUTE_ORDER = {a: i for i, a in enumerate(AttributeId)}


class LabelMethod(enum.Enum):
    KEYWORD_MATCH = "KeywordMatch"
    GAZETTEER_COOCCURRENCE = "GazetteerCooccurrence"


@dataclass(frozen=True)
class AttributeLabel:
    """One assigned attribute plus the spans that support it."""

    attribute: AttributeId
    method: LabelMethod
    evidence_spans: tuple[MatchSpan, ...]

    def __post_init__(self) -> None:
        if not self.evidence_spans:
            raise ValueError("a label needs at least one evidence span")
        for span in self.evidence_spans:
            if span.attribute is not self.attribute:
                raise ValueError(
                    f"evidence span {span.phrase!r} does not carry {self.attribute.value}"
                )


@dataclass(frozen=True)
class ClassifiedComment:
    """Detection plus labels; exclusion requires both."""

    detection: DetectionResult
    labels: tuple[AttributeLabel, ...]

    def __post_init__(self) -> None:
        attrs = [label.attribute for label in self.labels]
        if len(attrs) != len(set(attrs)):
            raise ValueError("at most one label per attribute")

    @property
    def socially_exclusionary(self) -> bool:
        return self.detection.offensive and bool(self.labels)


def _require_offensive(detection: DetectionResult) -> None:
    if not detection.offensive:
        raise NotOffensiveError(
            f"comment {detection.project_id}/{detection.message_id} is not offensive"
        )


def assign_identity_attributes(
    detection: DetectionResult, comment: Comment, attribute_matcher: PhraseMatcher
) -> list[AttributeLabel]:
    """Label every identity attribute with a keyword hit in the comment."""
    _require_offensive(detection)
    if attribute_matcher.kinds != {LexiconKind.ATTRIBUTE_KEYWORDS}:
        raise ValueError("identity assignment needs a keyword-only matcher")
    by_attribute: dict[AttributeId, list[MatchSpan]] = {}
    for span in attribute_matcher.find_matches(comment.text):
        by_attribute.setdefault(span.attribute, []).append(span)
    return [
        AttributeLabel(
            attribute=attr,
            method=LabelMethod.KEYWORD_MATCH,
            evidence_spans=tuple(spans),
        )
        for attr, spans in sorted(by_attribute.items(), key=lambda kv: _ATTRIBUTE_ORDER[kv[0]])
    ]


def assign_computing_attributes(
    detection: DetectionResult, comment: Comment, gazetteer_matcher: PhraseMatcher
) -> list[AttributeLabel]:
    """Label software/hardware when a gazetteer hit shares a sentence with profanity.

    Spans are attributed to a sentence by range overlap, so a phrase
    spanning a sentence break counts for both sides.
    """
    _require_offensive(detection)
    if gazetteer_matcher.kinds != {LexiconKind.GAZETTEER}:
        raise ValueError("computing assignment needs a gazetteer-only matcher")
    gazetteer_spans = gazetteer_matcher.find_matches(comment.text)
    if not gazetteer_spans:
        return []
    sentences = split_sentences(comment.text)
    hot = [
        (s.start, s.end)
        for s in sentences
        if any(p.start < s.end and p.end > s.start for p in detection.profanity_spans)
    ]
    by_attribute: dict[AttributeId, list[MatchSpan]] = {}
    for span in gazetteer_spans:
        if any(span.start < end and span.end > start for start, end in hot):
            by_attribute.setdefault(span.attribute, []).append(span)
    return [
        AttributeLabel(
            attribute=attr,
            method=LabelMethod.GAZETTEER_COOCCURRENCE,
            evidence_spans=tuple(spans),
        )
        for attr, spans in sorted(by_attribute.items(), key=lambda kv: _ATTRIBUTE_ORDER[kv[0]])
    ]


def classify_comment(
    comment: Comment,
    profanity_matcher: PhraseMatcher,
    attribute_matcher: PhraseMatcher | None,
    gazetteer_matcher: PhraseMatcher | None,
    filter_cfg: FilterConfig,
) -> ClassifiedComment:
    """Run detection and, when offensive, both label assignments."""
    detection = detect_offensive(comment, profanity_matcher, filter_cfg)
    if not detection.offensive:
        return ClassifiedComment(detection=detection, labels=())
    labels: list[AttributeLabel] = []
    if attribute_matcher is not None:
        labels.extend(assign_identity_attributes(detection, comment, attribute_matcher))
    if gazetteer_matcher is not None:
        labels.extend(assign_computing_attributes(detection, comment, gazetteer_matcher))
    labels.sort(key=lambda lb: _ATTRIBUTE_ORDER[lb.attribute])
    return ClassifiedComment(detection=detection, labels=tuple(labels))


def classified_to_record(classified: ClassifiedComment) -> dict:
    """JSON-ready form of one classified comment (one results line)."""
    detection = classified.detection
    return {
        "project_id": detection.project_id,
        "message_id": detection.message_id,
        "offensive": detection.offensive,
        "labels": [
            {
                "attribute": label.attribute.value,
                "method": label.method.value,
                "spans": [span.to_dict() for span in label.evidence_spans],
            }
            for label in classified.labels
        ],
    }
