#!/usr/bin/env python3
"""Write the golden prompt files by explicit byte assembly.

The goldens pin the full training text (prompt immediately followed by the
completion) for one example of each instruction type. They are assembled
here literally, never via the package renderer, so the renderer is tested
against independent bytes.

Run from the repository root:

    python3 tools/gen_goldens.py
"""

from __future__ import annotations

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT_DIR = ROOT / "tests" / "fixtures" / "goldens"

PREFACE = (
    "Below is an instruction that describes a task, paired with an input that provides "
    "further context. Write a response that appropriately completes the request."
)

INSTRUCTION = "Translate the following sentences from Chinese to English."

SOURCE = (
    "检查情况显示，市场销售的粮油、肉类、水果、蔬菜、蛋奶等生活必需品供应充足，"
    "商品价格基本稳定，未发现严重违法违规行为，市场经营秩序总体平稳。"
)

GOOD = (
    "The inspection results showed that there was an adequate supply of daily necessities, "
    "including grain, oil, meat, fruit, vegetable, milk, and eggs in the market and commodity "
    "prices basically remain stable, the administration found no serious offensive and "
    "noncompliant conducts, and the market order remains stable on the whole."
)

FLAWED_PLAIN = (
    "The results of the inspection indicate the sufficient supply of living necessities "
    "on marketing including cereals and oils, meat, fruits, vegetables, eggs and milk, "
    "and the basically stabilized commodity price. The inspection hasn’t found serious "
    "violation of laws and regulations. The market order is stable on an overall basis."
)

FLAWED_MAJOR_MARKED = (
    "The results of the inspection indicate the sufficient supply of living necessities "
    "<v>on marketing</v> including cereals and oils, meat, fruits, vegetables, eggs and milk, "
    "and the basically stabilized commodity price. The inspection hasn’t found serious "
    "violation of laws and regulations. The market order is stable on an overall basis."
)

FLAWED_MINOR_MARKED = (
    "The results of the <v>inspection</v> indicate the sufficient supply of living necessities "
    "on marketing including cereals and oils, meat, fruits, vegetables, eggs and milk, "
    "and the basically stabilized commodity price. The inspection hasn’t found serious "
    "violation of laws and regulations. The market order is stable on an overall basis."
)

HINT_PREFERENCE = "We prefer to translate it to"
HINT_MAJOR = "A translation with major accuracy/mistranslation errors could be"
HINT_MINOR = "A translation with minor fluency/grammar errors could be"


def assemble(hint: str | None, completion: str) -> str:
    text = (
        PREFACE
        + "\n\n### Instruction:\n"
        + INSTRUCTION
        + "\n\n### Input:\n"
        + SOURCE
        + "\n\n"
    )
    if hint is not None:
        text += "### Hint: " + hint + "\n\n"
    text += "### Response:"
    return text + completion


GOLDENS = {
    "translation_zh-en.txt": assemble(None, GOOD),
    "contrastive_zh-en.txt": assemble(
        HINT_PREFERENCE, f"<p>{GOOD}</p> rather than <p>{FLAWED_PLAIN}</p>"
    ),
    "error_guided_major_zh-en.txt": assemble(HINT_MAJOR, FLAWED_MAJOR_MARKED),
    "error_guided_minor_zh-en.txt": assemble(HINT_MINOR, FLAWED_MINOR_MARKED),
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, text in GOLDENS.items():
        (OUT_DIR / name).write_bytes(text.encode("utf-8"))
        print(f"wrote {name} ({len(text)} chars)")


if __name__ == "__main__":
    main()
