"""Freeze the builtin metric's scores on the regression items.

Writes tests/fixtures/regression_items.jsonl (the inputs, hand-authored
here) and tests/fixtures/regression_scores.jsonl (scores computed once and
frozen). Rerunning this tool is the only sanctioned way to change the frozen
values, and any change must be called out in review.
"""

from __future__ import annotations

import json
from pathlib import Path

from mtscorer.metric import BUILTIN_MODEL, score_batch

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

ITEMS = [
    {
        "id": "identity-en",
        "source": "Der Zug kommt heute sehr spät an.",
        "hypothesis": "The train arrives very late today.",
        "reference": "The train arrives very late today.",
    },
    {
        "id": "empty-hypothesis",
        "source": "Die Katze schläft auf dem Sofa.",
        "hypothesis": "",
        "reference": "The cat is sleeping on the sofa.",
    },
    {
        "id": "near-copy",
        "source": "Die Konferenz wurde wegen des Sturms abgesagt.",
        "hypothesis": "The conference was cancelled because of the heavy storm.",
        "reference": "The conference was cancelled because of the storm.",
    },
    {
        "id": "loose-paraphrase",
        "source": "Die Regierung kündigte neue Maßnahmen an.",
        "hypothesis": "Officials said fresh steps are coming.",
        "reference": "The government announced new measures.",
    },
    {
        "id": "cjk-near-copy",
        "source": "The inspection hasn’t found serious violations.",
        "hypothesis": "检查尚未发现严重违规行为。",
        "reference": "检查未发现严重违规行为。",
    },
    {
        "id": "source-only",
        "source": "the committee approved the annual budget",
        "hypothesis": "the committee approved the annual budget",
    },
]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with open(FIXTURES / "regression_items.jsonl", "w", encoding="utf-8") as f:
        for item in ITEMS:
            json.dump(item, f, ensure_ascii=False)
            f.write("\n")
    batch = score_batch(list(ITEMS), BUILTIN_MODEL)
    with open(FIXTURES / "regression_scores.jsonl", "w", encoding="utf-8") as f:
        for entry in batch.items:
            record = dict(entry)
            record["model"] = batch.model
            record["mode"] = batch.mode
            json.dump(record, f, ensure_ascii=False)
            f.write("\n")
    for entry in batch.items:
        print(entry)


if __name__ == "__main__":
    main()
