import math

import pytest
from hypothesis import given, strategies as st

from mtinstruct.bucketing import (
    ContrastivePair,
    ErrorLevel,
    ScoredTranslation,
    ScoreSource,
    assign_levels,
    bucket,
    make_pairs,
    read_scores_jsonl,
    write_scores_jsonl,
)
from mtinstruct.errors import ValidationError


def _auto(seg, system, score, text=None):
    return ScoredTranslation(
        segment_id=seg,
        system=system,
        text=text or f"text {seg} {system}",
        score=score,
        source=ScoreSource.AUTOMATIC,
    )


def _human(seg, system, score):
    return ScoredTranslation(
        segment_id=seg,
        system=system,
        text=f"text {seg} {system}",
        score=score,
        source=ScoreSource.HUMAN,
    )


# ------------------------------------------------------------- thresholds


@pytest.mark.parametrize(
    "score,expected",
    [
        (0.0, ErrorLevel.MAJOR),
        (84.999, ErrorLevel.MAJOR),
        (85.0, ErrorLevel.MAJOR),
        (85.001, ErrorLevel.MINOR),
        (90.0, ErrorLevel.MINOR),
        (90.001, ErrorLevel.NO_ERROR),
        (100.0, ErrorLevel.NO_ERROR),
    ],
)
def test_bucket_threshold_table(score, expected):
    assert bucket(score) is expected


def test_bucket_clamps_out_of_range():
    assert bucket(-50.0) is ErrorLevel.MAJOR
    assert bucket(150.0) is ErrorLevel.NO_ERROR


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_bucket_rejects_non_finite(bad):
    with pytest.raises(ValidationError):
        bucket(bad)


@given(
    a=st.floats(min_value=-50, max_value=150, allow_nan=False),
    b=st.floats(min_value=-50, max_value=150, allow_nan=False),
)
def test_property_bucket_monotone(a, b):
    lo, hi = min(a, b), max(a, b)
    assert bucket(lo).quality_rank <= bucket(hi).quality_rank


def test_error_level_parse():
    assert ErrorLevel.parse("no_error") is ErrorLevel.NO_ERROR
    assert ErrorLevel.parse("MAJOR") is ErrorLevel.MAJOR
    with pytest.raises(ValidationError):
        ErrorLevel.parse("bad")


def test_assign_levels():
    scored = [_auto("s1", "A", 95.0), _auto("s1", "B", 87.0), _auto("s2", "A", 20.0)]
    leveled = assign_levels(scored)
    assert [lvl for _, lvl in leveled] == [
        ErrorLevel.NO_ERROR,
        ErrorLevel.MINOR,
        ErrorLevel.MAJOR,
    ]


def test_assign_levels_rejects_human_penalties():
    with pytest.raises(ValidationError, match="automatic"):
        assign_levels([_human("s1", "A", 5.0)])


# ------------------------------------------------------------- comparisons


def test_better_than_automatic_higher_wins():
    assert _auto("s", "A", 90.0).better_than(_auto("s", "B", 80.0))
    assert not _auto("s", "A", 80.0).better_than(_auto("s", "B", 90.0))


def test_better_than_human_lower_penalty_wins():
    assert _human("s", "A", 0.0).better_than(_human("s", "B", 5.0))
    assert not _human("s", "A", 5.0).better_than(_human("s", "B", 0.0))


def test_better_than_mixed_sources_rejected():
    with pytest.raises(ValidationError):
        _auto("s", "A", 90.0).better_than(_human("s", "B", 1.0))


def test_contrastive_pair_must_be_strictly_better():
    good, bad = _auto("s", "A", 92.0), _auto("s", "B", 80.0)
    pair = ContrastivePair("s", good, bad)
    assert pair.gap == pytest.approx(12.0)
    with pytest.raises(ValidationError):
        ContrastivePair("s", bad, good)


def test_non_finite_score_rejected():
    with pytest.raises(ValidationError):
        _auto("s", "A", float("nan"))


# ------------------------------------------------------------- pair making


def test_make_pairs_basic():
    scored = [_auto("s1", "A", 95.0), _auto("s1", "B", 80.0)]
    pairs = make_pairs(scored, seed=7)
    assert len(pairs) == 1
    assert pairs[0].preferred.system == "A"
    assert pairs[0].rejected.system == "B"


def test_make_pairs_drops_ties_and_small_gaps():
    scored = [_auto("s1", "A", 90.0), _auto("s1", "B", 90.0)]
    assert make_pairs(scored, seed=7) == []
    close = [_auto("s2", "A", 90.0), _auto("s2", "B", 89.5)]
    assert make_pairs(close, seed=7) == []  # default automatic min_gap 1.0
    assert len(make_pairs(close, seed=7, min_gap=0.0)) == 1


def test_make_pairs_human_default_gap_keeps_any_difference():
    scored = [_human("s1", "A", 0.0), _human("s1", "B", 0.1)]
    pairs = make_pairs(scored, seed=7)
    assert len(pairs) == 1
    assert pairs[0].preferred.system == "A"  # lower penalty preferred


def test_make_pairs_caps_per_segment_deterministically():
    scored = [
        _auto("s1", "A", 95.0),
        _auto("s1", "B", 80.0),
        _auto("s1", "C", 60.0),
        _auto("s1", "D", 40.0),
    ]
    first = make_pairs(scored, seed=42, max_per_segment=2)
    second = make_pairs(scored, seed=42, max_per_segment=2)
    assert first == second
    assert len(first) == 2
    different = make_pairs(scored, seed=43, max_per_segment=6)
    assert len(different) == 6  # all candidate combinations survive the cap


def test_make_pairs_segment_isolation():
    # adding a new segment must not change another segment's sampled picks
    seg1 = [_auto("s1", c, score) for c, score in [("A", 95.0), ("B", 80.0), ("C", 60.0)]]
    seg2 = [_auto("s2", c, score) for c, score in [("A", 99.0), ("B", 50.0)]]
    only_seg1 = [p for p in make_pairs(seg1, seed=11, max_per_segment=1)]
    both = [p for p in make_pairs(seg1 + seg2, seed=11, max_per_segment=1) if p.segment_id == "s1"]
    assert only_seg1 == both


def test_make_pairs_sorted_by_segment():
    scored = [
        _auto("s2", "A", 95.0),
        _auto("s2", "B", 80.0),
        _auto("s1", "A", 95.0),
        _auto("s1", "B", 70.0),
    ]
    pairs = make_pairs(scored, seed=1)
    assert [p.segment_id for p in pairs] == ["s1", "s2"]


def test_make_pairs_validates_arguments():
    with pytest.raises(ValidationError):
        make_pairs([], seed=1, max_per_segment=0)
    with pytest.raises(ValidationError):
        make_pairs([], seed=1, min_gap=-1.0)


@given(
    scores=st.lists(
        st.floats(min_value=0, max_value=100, allow_nan=False), min_size=2, max_size=6
    ),
    gap=st.floats(min_value=0, max_value=20, allow_nan=False),
)
def test_property_pairs_respect_gap_and_strictness(scores, gap):
    scored = [_auto("s1", f"sys{i}", s) for i, s in enumerate(scores)]
    pairs = make_pairs(scored, seed=3, min_gap=gap, max_per_segment=100)
    for pair in pairs:
        assert pair.preferred.score > pair.rejected.score
        assert pair.gap >= gap or math.isclose(pair.gap, gap)


# ------------------------------------------------------------- jsonl io


def test_scores_jsonl_round_trip(tmp_path):
    scored = [_auto("s1", "A", 95.0), _human("s2", "B", 1.5)]
    out = tmp_path / "scores.jsonl"
    write_scores_jsonl(out, scored)
    assert read_scores_jsonl(out) == scored


def test_scores_jsonl_with_levels(tmp_path):
    scored = [_auto("s1", "A", 95.0)]
    out = tmp_path / "scores.jsonl"
    write_scores_jsonl(out, scored, levels={("s1", "A"): ErrorLevel.NO_ERROR})
    import json

    obj = json.loads(out.read_text(encoding="utf-8").strip())
    assert obj["level"] == "no_error"
