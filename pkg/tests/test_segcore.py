"""
Self-Segmentation Core Tests
Candidate collection, acceptability marks, ordering and the first pass
"""

import logging
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ConfigurationError
from src.segmentation.ngrams import WeightTable, count_ngrams
from src.segmentation.segcore import (
    Candidate,
    CandidateSet,
    collect_candidates,
    explode,
    mark_acceptability,
    order_acceptables,
    segment_chunk,
    self_segment_pass,
    wrap_entries,
)
from src.segmentation.segcore import trace as trace_logger
from src.text.textprep import split_document
from tests.strategies import chunks, documents, small_chunk_lists

FIG2_CHUNK = "英国外相斯特劳对"
FIG2_WEIGHTS = WeightTable.from_counts({"英国": 3, "斯特劳": 2, "斯特": 2, "特劳": 2})


def _acceptable_texts(chunk, weights, rule="each"):
    marked = mark_acceptability(collect_candidates(chunk, weights), weights, rule=rule)
    return {candidate.text for candidate in marked.acceptables()}


def test_fig2_candidates():
    candidates = collect_candidates(FIG2_CHUNK, FIG2_WEIGHTS)
    assert [(c.text, c.weight) for c in candidates] == [("斯特劳", 2), ("英国", 3), ("斯特", 2), ("特劳", 2)]
    assert candidates.max_length == 3
    assert candidates.get("斯特").first_pos == 4


def test_fig2_acceptables_and_segments():
    """Equal-weight constituents lose to the longer n-gram"""
    marked = mark_acceptability(collect_candidates(FIG2_CHUNK, FIG2_WEIGHTS), FIG2_WEIGHTS)
    ordered = order_acceptables(marked.acceptables())
    assert [c.text for c in ordered] == ["斯特劳", "英国"]
    assert segment_chunk(FIG2_CHUNK, ordered) == ["英国", "外相", "斯特劳", "对"]


def test_heavier_prefix_rejects_longer_ngram():
    weights = count_ngrams(split_document("甲乙丙丁。甲乙丙戊。甲乙己"))
    assert _acceptable_texts("甲乙丙丁", weights) == {"甲乙"}


def test_both_rule_needs_every_constituent_heavier():
    weights = count_ngrams(split_document("甲乙丙丁。甲乙丙戊。甲乙己"))
    assert _acceptable_texts("甲乙丙丁", weights, rule="both") == {"甲乙丙"}

    weights = WeightTable.from_counts({"甲乙丙": 2, "甲乙": 3, "乙丙": 4})
    assert _acceptable_texts("甲乙丙", weights, rule="both") == {"甲乙", "乙丙"}


def test_unknown_rule_is_rejected():
    with pytest.raises(ConfigurationError):
        mark_acceptability(collect_candidates(FIG2_CHUNK, FIG2_WEIGHTS), FIG2_WEIGHTS, rule="any")


def test_no_candidates_for_unrepeated_chunk():
    weights = count_ngrams(split_document("甲乙丙"))
    candidates = collect_candidates("甲乙丙", weights)
    assert not candidates
    assert len(candidates) == 0
    assert candidates.max_length == 0


def test_candidates_are_limited_to_max_n():
    weights = count_ngrams(split_document("甲乙丙丁。甲乙丙丁"), max_n=3)
    assert collect_candidates("甲乙丙丁", weights).max_length == 3


def test_order_ties_break_on_codepoints():
    ordered = order_acceptables([Candidate("甲乙", 3, 0), Candidate("丙丁", 3, 2)])
    assert [c.text for c in ordered] == ["丙丁", "甲乙"]


def test_order_prefers_length_then_weight():
    ordered = order_acceptables([Candidate("甲乙", 9, 0), Candidate("丙丁戊", 2, 2), Candidate("己庚", 4, 5)])
    assert [c.text for c in ordered] == ["丙丁戊", "甲乙", "己庚"]


def test_wrap_entries_is_left_to_right_and_non_overlapping():
    assert explode(wrap_entries("呵呵呵", ["呵呵"])) == ["呵呵", "呵"]
    assert explode(wrap_entries("甲乙丙甲乙", ["甲乙"])) == ["甲乙", "丙", "甲乙"]


def test_later_entries_do_not_cross_earlier_breaks():
    assert explode(wrap_entries("甲乙丙丁", ["乙丙", "甲乙"])) == ["甲", "乙丙", "丁"]


def test_segment_chunk_accepts_plain_texts():
    assert segment_chunk("英国外相斯特劳对", ["斯特劳", "英国"]) == ["英国", "外相", "斯特劳", "对"]
    assert segment_chunk("甲乙", []) == ["甲乙"]


def test_first_pass_on_s1():
    document = split_document("甲乙丙丁。甲乙丙戊。甲乙己")
    segmented, pre_lexicon = self_segment_pass(document, count_ngrams(document))
    assert segmented.chunk_segments() == [("甲乙", "丙丁"), ("甲乙", "丙戊"), ("甲乙", "己")]
    assert pre_lexicon == {"甲乙": 3, "丙丁": 1, "丙戊": 1, "己": 1}


def test_first_pass_on_s2_skips_short_chunks():
    document = split_document("甲乙丙。甲乙丙。甲乙")
    segmented, pre_lexicon = self_segment_pass(document, count_ngrams(document))
    assert segmented.chunk_segments() == [("甲乙", "丙"), ("甲乙", "丙"), ("甲乙",)]
    assert pre_lexicon == {"甲乙": 2, "丙": 2}


def test_first_pass_leaves_literals_alone():
    document = split_document("甲乙丙。甲乙丙")
    segmented, _ = self_segment_pass(document, count_ngrams(document))
    assert segmented.pieces() == ["甲乙丙", "。", "甲乙丙"]


def test_trace_logs_steps(caplog):
    document = split_document(FIG2_CHUNK)
    trace_logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.DEBUG, logger=trace_logger.name):
            self_segment_pass(document, FIG2_WEIGHTS)
    finally:
        trace_logger.removeHandler(caplog.handler)
    text = caplog.text
    assert "Is 斯特劳 (2) acceptable?" in text
    assert "英国·外相·斯特劳·对" in text


def _has_heavier_constituent(candidate, candidates, weights):
    for text in (candidate.text[:-1], candidate.text[1:]):
        if candidates.get(text) is not None and weights.weight(text) > candidate.weight:
            return True
    return False


def _is_outweighed_constituent(candidate, candidates, weights):
    for longer in candidates.by_length.get(candidate.length + 1, ()):
        if candidate.text in (longer.text[:-1], longer.text[1:]) and candidate.weight <= longer.weight:
            return True
    return False


@given(documents(small_chunk_lists), st.randoms(use_true_random=False))
@settings(max_examples=1000, deadline=None)
def test_acceptability_characterization(text, random):
    """A candidate is rejected exactly when some pairwise comparison rejects it"""
    document = split_document(text)
    weights = count_ngrams(document, max_n=6)
    for chunk in document.chunks:
        candidates = collect_candidates(chunk, weights)
        marked = mark_acceptability(candidates, weights)
        for candidate in marked:
            rejected = (_has_heavier_constituent(candidate, candidates, weights)
                        or _is_outweighed_constituent(candidate, candidates, weights))
            assert candidate.acceptable is not rejected

        shuffled = {}
        for n, group in candidates.by_length.items():
            group = list(group)
            random.shuffle(group)
            shuffled[n] = tuple(group)
        reordered = mark_acceptability(CandidateSet(by_length=shuffled), weights)
        assert {c.text for c in reordered.acceptables()} == {c.text for c in marked.acceptables()}


@given(documents())
@settings(max_examples=1000, deadline=None)
def test_first_pass_segments_rebuild_chunks(text):
    document = split_document(text)
    segmented, pre_lexicon = self_segment_pass(document, count_ngrams(document))
    for chunk, segments in zip(document.chunks, segmented.chunk_segments()):
        assert "".join(segments) == chunk
        assert all(segments)
    assert "".join(segmented.pieces()) == text


@given(chunks)
@settings(max_examples=1000, deadline=None)
def test_candidate_weights_exceed_one(chunk):
    weights = count_ngrams(split_document(chunk + "。" + chunk[::-1]))
    for candidate in collect_candidates(chunk, weights):
        assert candidate.weight > 1
        assert chunk.find(candidate.text) == candidate.first_pos
