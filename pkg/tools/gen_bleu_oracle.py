#!/usr/bin/env python3
"""Freeze expected BLEU values for the toy scoring corpora.

Computes every expected value with the independent oracle in tests/oracles.py
(never with the package implementation) and writes them next to the corpora
so regressions are caught even if both implementations drift together.

Run from the repository root:

    python3 tools/gen_bleu_oracle.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from oracles import bleu_oracle  # noqa: E402

# Plain lowercase text only: whitespace splitting must equal the scoring
# tokenizer on these, which the tests assert before trusting the numbers.
TOY_CORPORA: list[tuple[str, list[str], list[str]]] = [
    (
        "identity_single",
        ["the quick brown fox jumps over the lazy dog"],
        ["the quick brown fox jumps over the lazy dog"],
    ),
    (
        "identity_multi",
        ["the cat sat on the mat", "a stitch in time saves nine", "all good things come to an end"],
        ["the cat sat on the mat", "a stitch in time saves nine", "all good things come to an end"],
    ),
    (
        "disjoint",
        ["alpha beta gamma delta epsilon"],
        ["one two three four five"],
    ),
    (
        "half_overlap",
        ["the quick brown fox jumps over a sleepy cat"],
        ["the quick brown fox jumps over the lazy dog"],
    ),
    (
        "short_hypothesis_bp",
        ["the quick brown fox"],
        ["the quick brown fox jumps over the lazy dog"],
    ),
    (
        "long_hypothesis_no_bp",
        ["the quick brown fox jumps over the lazy dog again and again today"],
        ["the quick brown fox jumps over the lazy dog"],
    ),
    (
        "clipping_repeats",
        ["the the the the the the the"],
        ["the cat is on the mat here"],
    ),
    (
        "mixed_quality_multi",
        [
            "the committee approved the new budget yesterday",
            "heavy rain delayed the morning trains badly",
            "she quietly closed the old wooden door",
        ],
        [
            "the committee approved the new budget on friday",
            "heavy rain delayed all morning trains in the region",
            "she quietly closed the old wooden door",
        ],
    ),
    (
        "one_short_segment",
        ["yes", "the answer to the question is quite clear now"],
        ["yes indeed", "the answer to the question is quite clear now"],
    ),
    (
        "single_word_off",
        ["the delegation arrived at the station before noon on tuesday"],
        ["the delegation arrived at the airport before noon on tuesday"],
    ),
    (
        "bigram_only_overlap",
        ["green ideas sleep furiously tonight"],
        ["colorless green ideas sleep here quietly"],
    ),
    (
        "german_plain",
        ["der zug kommt heute sehr spät an", "wir haben den ganzen tag gewartet"],
        ["der zug kommt heute ziemlich spät an", "wir haben den halben tag gewartet"],
    ),
]


def main() -> None:
    cases = []
    for name, hyps, refs in TOY_CORPORA:
        expected = bleu_oracle([h.split() for h in hyps], [r.split() for r in refs])
        cases.append({"name": name, "hypotheses": hyps, "references": refs, "expected": expected})
    out = ROOT / "tests" / "fixtures" / "bleu_cases.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    note = (
        "Frozen corpus BLEU expectations, generated once by tools/gen_bleu_oracle.py "
        "using the independent oracle in tests/oracles.py."
    )
    out.write_text(
        json.dumps({"note": note, "cases": cases}, ensure_ascii=False, indent=1) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
