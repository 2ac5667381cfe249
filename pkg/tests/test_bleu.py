import json
import time

import pytest
from hypothesis import given, settings, strategies as st

from mtinstruct.bleu import corpus_bleu
from mtinstruct.errors import ValidationError
from mtinstruct.tokenizers import TokenizerKind, tokenize_13a

from conftest import FIXTURES
from oracles import bleu_oracle


def _cases():
    data = json.loads((FIXTURES / "bleu_cases.json").read_text(encoding="utf-8"))
    return data["cases"]


@pytest.mark.parametrize("case", _cases(), ids=lambda c: c["name"])
def test_matches_frozen_oracle_values(case):
    # the toy corpora are chosen so whitespace splitting equals the tokenizer
    for line in case["hypotheses"] + case["references"]:
        assert tokenize_13a(line) == line.split()
    got = corpus_bleu(case["hypotheses"], case["references"], TokenizerKind.INTL)
    exp = case["expected"]
    assert got.score == pytest.approx(exp["score"], abs=1e-9)
    assert got.brevity_penalty == pytest.approx(exp["brevity_penalty"], abs=1e-9)
    assert got.hyp_len == exp["hyp_len"]
    assert got.ref_len == exp["ref_len"]
    for mine, theirs in zip(got.precisions, exp["precisions"]):
        assert mine == pytest.approx(theirs, abs=1e-9)


@pytest.mark.parametrize("case", _cases(), ids=lambda c: c["name"])
def test_matches_live_oracle(case):
    got = corpus_bleu(case["hypotheses"], case["references"], TokenizerKind.INTL)
    oracle = bleu_oracle(
        [h.split() for h in case["hypotheses"]], [r.split() for r in case["references"]]
    )
    assert got.score == pytest.approx(oracle["score"], abs=1e-9)


def test_identity_is_exactly_100():
    refs = ["the quick brown fox jumps over the lazy dog", "a b c d e f g"]
    result = corpus_bleu(refs, refs)
    assert result.score == 100.0
    assert result.precisions == (1.0, 1.0, 1.0, 1.0)
    assert result.brevity_penalty == 1.0


def test_disjoint_is_exactly_0():
    result = corpus_bleu(["aa bb cc dd ee"], ["vv ww xx yy zz"])
    assert result.score == 0.0


def test_no_fourgram_overlap_is_0_without_smoothing():
    # trigram overlap exists, 4-gram does not
    result = corpus_bleu(["one two three zzz one two three"], ["one two three four five six"])
    assert result.precisions[2] > 0
    assert result.precisions[3] == 0.0
    assert result.score == 0.0


def test_exp_smoothing_rescues_zero_buckets():
    plain = corpus_bleu(["one two three zzz"], ["one two three four"])
    smoothed = corpus_bleu(["one two three zzz"], ["one two three four"], smoothing="exp")
    assert plain.score == 0.0
    assert smoothed.score > 0.0


def test_unknown_smoothing_rejected():
    with pytest.raises(ValidationError):
        corpus_bleu(["a"], ["a"], smoothing="floor")


def test_length_mismatch_rejected():
    with pytest.raises(ValidationError, match="≠"):
        corpus_bleu(["a b"], ["a b", "c d"])


def test_empty_corpus_rejected():
    with pytest.raises(ValidationError, match="empty"):
        corpus_bleu([], [])


def test_corpus_order_invariance():
    hyps = ["the cat sat on the mat today", "dogs bark loudly at night"]
    refs = ["the cat sat on a mat today", "dogs bark loudly at midnight"]
    forward = corpus_bleu(hyps, refs)
    backward = corpus_bleu(list(reversed(hyps)), list(reversed(refs)))
    assert forward.score == pytest.approx(backward.score, abs=1e-12)


def test_appending_identical_segment_never_hurts():
    hyps = ["the cat sat on the mat today okay"]
    refs = ["the cat sat on a mat today okay"]
    base = corpus_bleu(hyps, refs).score
    extended = corpus_bleu(hyps + ["perfect match sentence here also"], refs + ["perfect match sentence here also"]).score
    assert extended >= base


def test_zh_scoring_uses_char_tokens():
    result = corpus_bleu(["检查情况显示市场"], ["检查情况显示市场"], TokenizerKind.ZH)
    assert result.score == 100.0
    assert result.hyp_len == 8


def test_oracle_parity_under_one_second():
    cases = _cases()
    start = time.perf_counter()
    for case in cases:
        corpus_bleu(case["hypotheses"], case["references"], TokenizerKind.INTL)
        bleu_oracle(
            [h.split() for h in case["hypotheses"]], [r.split() for r in case["references"]]
        )
    assert time.perf_counter() - start < 1.0


_word = st.sampled_from(
    ["the", "cat", "dog", "house", "runs", "fast", "blue", "old", "tree", "sky"]
)
_sentence = st.lists(_word, min_size=4, max_size=12).map(" ".join)
_corpus = st.lists(_sentence, min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(hyps=_corpus)
def test_property_identity_always_100(hyps):
    assert corpus_bleu(hyps, list(hyps)).score == 100.0


@settings(max_examples=60, deadline=None)
@given(hyps=_corpus, refs=_corpus)
def test_property_agrees_with_oracle(hyps, refs):
    n = min(len(hyps), len(refs))
    hyps, refs = hyps[:n], refs[:n]
    got = corpus_bleu(hyps, refs)
    oracle = bleu_oracle([h.split() for h in hyps], [r.split() for r in refs])
    assert got.score == pytest.approx(oracle["score"], abs=1e-9)
    assert 0.0 <= got.score <= 100.0
