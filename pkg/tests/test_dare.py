from __future__ import annotations

import random

import pytest

from darekit import (
    AttributeId,
    DareOutput,
    FilterConfig,
    FixpointNotReachedError,
    LexiconKind,
    MatchSpan,
    MatcherBundle,
    MergedSpan,
    OverlapAfterMergeError,
    PhraseLexicon,
    RephraseEdit,
    RephraseStrategy,
    apply_edits,
    compile_matcher,
    dare_assign,
    dare_detect,
    dare_eliminate,
    dare_process,
    dare_reveal,
    merge_spans,
    normalize_phrase,
    strip_annotations,
)

from oracle import random_eliminate_case


def profanity_bundle(phrases: set[str]) -> MatcherBundle:
    matcher = compile_matcher(
        [
            PhraseLexicon(
                lexicon_id="profanity",
                kind=LexiconKind.PROFANITY,
                phrases=frozenset(normalize_phrase(p) for p in phrases),
            )
        ]
    )
    return MatcherBundle(profanity=matcher)


def span(start: int, end: int, lexicon_id: str = "profanity", phrase: str = "x",
         attribute: AttributeId | None = None) -> MatchSpan:
    return MatchSpan(start, end, lexicon_id, phrase, attribute)


class TestMergeSpans:
    def test_disjoint_stay_separate(self):
        merged = merge_spans([span(0, 3), span(5, 8)])
        assert [(m.start, m.end) for m in merged] == [(0, 3), (5, 8)]

    def test_touching_spans_do_not_merge(self):
        merged = merge_spans([span(0, 3), span(3, 6)])
        assert [(m.start, m.end) for m in merged] == [(0, 3), (3, 6)]

    def test_overlap_merges_and_extends(self):
        merged = merge_spans([span(0, 4), span(2, 7), span(6, 9)])
        assert [(m.start, m.end) for m in merged] == [(0, 9)]
        assert len(merged[0].sources) == 3

    def test_nested_span_absorbed(self):
        merged = merge_spans([span(0, 10), span(2, 5)])
        assert [(m.start, m.end) for m in merged] == [(0, 10)]

    def test_duplicates_collapse(self):
        merged = merge_spans([span(1, 4), span(1, 4)])
        assert len(merged) == 1
        assert len(merged[0].sources) == 1

    def test_tags_sorted_and_deduped(self):
        merged = merge_spans(
            [
                span(0, 3, "gender", "girl", AttributeId.GENDER),
                span(0, 3, "profanity", "girl"),
                span(1, 4, "age", "irlx", AttributeId.AGE),
            ]
        )
        assert merged[0].tags == ("Age", "Gender", "profanity")

    def test_empty(self):
        assert merge_spans([]) == []


class TestDetectAssign:
    def test_detect_true_with_spans(self, matchers):
        detected, spans = dare_detect("jesus fucking christ", matchers, FilterConfig())
        assert detected
        assert [(s.start, s.end) for s in spans] == [(6, 13)]

    def test_detect_false(self, matchers):
        detected, spans = dare_detect("all quiet here", matchers, FilterConfig())
        assert not detected
        assert spans == ()

    def test_assign_skips_undetected(self, matchers):
        assert dare_assign("whatever", (False, ()), matchers) == []

    def test_assign_labels_detected_text(self, matchers):
        text = "jesus fucking christ"
        detection = dare_detect(text, matchers, FilterConfig())
        labels = dare_assign(text, detection, matchers)
        assert [lb.attribute for lb in labels] == [AttributeId.RELIGION]


class TestReveal:
    def test_annotated_text_with_legend(self, matchers):
        out = dare_process("fucking china attacked github", matchers)
        assert out.revealed == (
            "[[fucking]]{profanity} [[china]]{Location} attacked github"
            "\n\nLocation: targets the place or country a person is from or lives in"
        )

    def test_no_legend_without_labels(self, matchers):
        out = dare_process("fuck this noise", matchers)
        assert out.revealed == "[[fuck]]{profanity} this noise"
        assert "\n\n" not in out.revealed

    def test_merged_region_lists_all_tags(self, matchers):
        out = dare_process("make it all gay later", matchers)
        assert "[[gay]]{SexualOrientation,profanity}" in out.revealed

    def test_rejects_overlapping_regions(self):
        regions = [
            MergedSpan(0, 5, ("profanity",), (span(0, 5),)),
            MergedSpan(3, 8, ("profanity",), (span(3, 8),)),
        ]
        with pytest.raises(OverlapAfterMergeError):
            dare_reveal("abcdefghij", regions, [])

    def test_strip_annotations_round_trip(self, matchers):
        for text in [
            "jesus fucking christ",
            "fucking china attacked github",
            "so... is the boob operator seriously being considered?",
            "what the fuck do you mean you want to update my windows? sick bastard pc",
            "multi\nline shit\nwith trailing\n\n",
        ]:
            out = dare_process(text, matchers)
            assert strip_annotations(out.revealed) == text, text

    def test_strip_leaves_ordinary_text_alone(self):
        text = "no annotations here\n\nbut a paragraph break"
        assert strip_annotations(text) == text


class TestApplyEdits:
    def test_splices_replacements(self):
        edits_text = apply_edits(
            "jesus fucking christ",
            [
                _edit(6, 13, "f******"),
            ],
        )
        assert edits_text == "jesus f****** christ"

    def test_rejects_out_of_order(self):
        with pytest.raises(ValueError):
            apply_edits("abcdef", [_edit(3, 5, "x"), _edit(0, 2, "y")])

    def test_empty_edits_identity(self):
        assert apply_edits("same", []) == "same"


def _edit(start: int, end: int, replacement: str):
    return RephraseEdit(
        span=MatchSpan(start, end, "profanity", "x"),
        replacement=replacement,
        strategy=RephraseStrategy.MASK,
    )


class TestMask:
    def test_keeps_first_letter(self, matchers):
        out = dare_process("jesus fucking christ", matchers)
        assert out.eliminated == "jesus f****** christ"
        assert len(out.edits) == 1
        assert out.edits[0].replacement == "f******"
        assert (out.edits[0].span.start, out.edits[0].span.end) == (6, 13)

    def test_punctuation_inside_region_unchanged(self):
        bundle = profanity_bundle({"f-word"})
        out = dare_process("say f-word now", bundle)
        assert out.eliminated == "say f-**** now"

    def test_mask_is_idempotent_on_result(self, matchers):
        out = dare_process("fucking hell this shitty build", matchers)
        again = dare_process(out.eliminated, matchers)
        assert not again.detected
        assert again.eliminated == out.eliminated


class TestRemove:
    def test_interior_seam_consumed(self, matchers):
        out = dare_process("jesus fucking christ", matchers,
                           strategy=RephraseStrategy.REMOVE)
        assert out.eliminated == "jesus christ"

    def test_leading_region(self, matchers):
        out = dare_process("fucking china attacked github", matchers,
                           strategy=RephraseStrategy.REMOVE)
        assert out.eliminated == "china attacked github"

    def test_trailing_region(self, matchers):
        out = dare_process("go fuck", matchers, strategy=RephraseStrategy.REMOVE)
        assert out.eliminated == "go"

    def test_whole_text_region(self, matchers):
        out = dare_process("fuck", matchers, strategy=RephraseStrategy.REMOVE)
        assert out.eliminated == ""

    def test_punctuation_neighbors_kept(self, matchers):
        out = dare_process("well (fuck) then", matchers,
                           strategy=RephraseStrategy.REMOVE)
        assert out.eliminated == "well () then"


class TestPlaceholder:
    def test_profanity_only_region(self, matchers):
        out = dare_process("jesus fucking christ", matchers,
                           strategy=RephraseStrategy.PLACEHOLDER)
        assert out.eliminated == "jesus [removed] christ"

    def test_attribute_tag_picks_category_placeholder(self, matchers):
        out = dare_process(
            "so... is the boob operator seriously being considered?",
            matchers,
            strategy=RephraseStrategy.PLACEHOLDER,
        )
        assert out.eliminated == "so... is the [person] operator seriously being considered?"

    def test_custom_placeholders(self, matchers):
        out = dare_process(
            "jesus fucking christ",
            matchers,
            strategy=RephraseStrategy.PLACEHOLDER,
            placeholders={"profanity": "<beep>"},
        )
        assert out.eliminated == "jesus <beep> christ"


class TestEliminateFixpoint:
    def test_rewrite_can_splice_new_phrase(self):
        bundle = profanity_bundle({"bad", "b d"})
        text = "b bad d"
        detected, spans = dare_detect(text, bundle, FilterConfig())
        assert detected
        eliminated, edits = dare_eliminate(
            text, spans, RephraseStrategy.REMOVE, matchers=bundle
        )
        redetected, _ = dare_detect(eliminated, bundle, FilterConfig())
        assert not redetected
        assert apply_edits(text, edits) == eliminated

    def test_single_pass_without_matchers_may_leave_matches(self):
        bundle = profanity_bundle({"bad", "b d"})
        text = "b bad d"
        _, spans = dare_detect(text, bundle, FilterConfig())
        eliminated, _ = dare_eliminate(text, spans, RephraseStrategy.REMOVE)
        redetected, _ = dare_detect(eliminated, bundle, FilterConfig())
        assert redetected

    def test_mask_that_cannot_converge_raises(self):
        # a single-letter phrase survives masking (first letter is kept)
        bundle = profanity_bundle({"x"})
        _, spans = dare_detect("x marks", bundle, FilterConfig())
        with pytest.raises(FixpointNotReachedError) as exc:
            dare_eliminate("x marks", spans, RephraseStrategy.MASK, matchers=bundle)
        assert exc.value.passes == 8

    def test_placeholder_matching_itself_raises(self):
        bundle = profanity_bundle({"removed"})
        _, spans = dare_detect("that got removed", bundle, FilterConfig())
        with pytest.raises(FixpointNotReachedError):
            dare_eliminate(
                "that got removed", spans, RephraseStrategy.PLACEHOLDER, matchers=bundle
            )

    def test_max_passes_configurable(self):
        bundle = profanity_bundle({"x"})
        _, spans = dare_detect("x", bundle, FilterConfig())
        with pytest.raises(FixpointNotReachedError) as exc:
            dare_eliminate("x", spans, RephraseStrategy.MASK, matchers=bundle,
                           max_passes=3)
        assert exc.value.passes == 3

    def test_empty_spans_identity(self, matchers):
        assert dare_eliminate("calm text", [], RephraseStrategy.MASK,
                              matchers=matchers) == ("calm text", [])

    def test_randomized_mask_and_remove_reach_fixpoint(self):
        rng = random.Random(0xDA7E)
        cases = 0
        for _ in range(400):
            text, phrases = random_eliminate_case(rng)
            bundle = profanity_bundle(phrases)
            for strategy in (RephraseStrategy.MASK, RephraseStrategy.REMOVE):
                out = dare_process(text, bundle, strategy=strategy)
                if not out.detected:
                    continue
                cases += 1
                redetected, _ = dare_detect(out.eliminated, bundle, FilterConfig())
                assert not redetected, (text, phrases, strategy)
                assert apply_edits(text, list(out.edits)) == out.eliminated
                assert strip_annotations(out.revealed) == text
        assert cases > 200


class TestDareProcess:
    def test_clean_text_identity(self, matchers):
        out = dare_process("nothing wrong here", matchers)
        assert not out.detected
        assert out.spans == ()
        assert out.labels == ()
        assert out.revealed == "nothing wrong here"
        assert out.eliminated == "nothing wrong here"
        assert out.edits == ()

    def test_spans_union_profanity_and_evidence(self, matchers):
        out = dare_process("fucking china attacked github", matchers)
        assert [(s.start, s.end, s.lexicon_id) for s in out.spans] == [
            (0, 7, "profanity"),
            (8, 13, "location"),
        ]

    def test_evidence_only_regions_survive_rewrite(self, matchers):
        out = dare_process(
            "what the fuck do you mean you want to update my windows? sick bastard pc",
            matchers,
            strategy=RephraseStrategy.REMOVE,
        )
        assert out.eliminated == (
            "what the do you mean you want to update my windows? sick pc"
        )
        assert [lb.attribute for lb in out.labels] == [
            AttributeId.SOFTWARE,
            AttributeId.HARDWARE,
        ]

    def test_dual_listed_word_is_rewritten(self, matchers):
        # "boob" sits in both the profanity list and the gender keywords;
        # the profanity source makes its region eligible for rewriting
        out = dare_process("so... is the boob operator seriously being considered?", matchers)
        assert out.eliminated == "so... is the b*** operator seriously being considered?"
        assert [lb.attribute for lb in out.labels] == [AttributeId.GENDER]

    def test_to_dict_shape(self, matchers):
        out = dare_process("jesus fucking christ", matchers)
        d = out.to_dict()
        assert d["detected"] is True
        assert d["strategy"] == "mask"
        assert d["original"] == "jesus fucking christ"
        assert d["eliminated"] == "jesus f****** christ"
        assert [s["phrase"] for s in d["spans"]] == ["jesus", "fucking", "christ"]
        assert d["labels"][0]["attribute"] == "religion"
        assert d["edits"][0]["replacement"] == "f******"

    def test_validation_rejects_inconsistent_clean_output(self):
        with pytest.raises(ValueError):
            DareOutput(
                original="x",
                detected=False,
                spans=(span(0, 1),),
                labels=(),
                revealed="x",
                eliminated="x",
                edits=(),
                strategy=RephraseStrategy.MASK,
            )
        with pytest.raises(ValueError):
            DareOutput(
                original="x",
                detected=False,
                spans=(),
                labels=(),
                revealed="y",
                eliminated="x",
                edits=(),
                strategy=RephraseStrategy.MASK,
            )

    def test_filter_config_respected(self, matchers):
        out = dare_process("`fuck` in code", matchers,
                           filter_cfg=FilterConfig(ignore_code=True))
        assert not out.detected
        assert out.eliminated == "`fuck` in code"
