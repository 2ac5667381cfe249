#!/usr/bin/env python3
"""One-time generator for tokenizer parity fixtures.

Loads the reference tokenizer implementation shipped under examples/ (the
upstream scoring tool's source), extracts just the tokenizer functions via
the AST (the module itself has unrelated import-time dependencies), runs a
fixed case list through them, and freezes input/output pairs as JSON.

Run from the repository root:

    python3 tools/gen_tok_oracle.py
"""

from __future__ import annotations

import ast
import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
REFERENCE = (
    ROOT
    / "examples"
    / "sacrebleu_compatible_corpus_bleu_implementation_"
    / "r005__mjpost__sacrebleu__sacrebleu.py"
)
OUT_DIR = ROOT / "tests" / "fixtures"

# Wanted top-level defs: the two tokenizers plus their helpers.
WANTED = {"tokenize_13a", "tokenize_v14_international", "tokenize_zh", "UnicodeRegex"}

CASES_13A = [
    "Hello, world!",
    "",
    "   ",
    "It's a test-case, isn't it? Yes!",
    "Prices rose 3.5% in 2019, then fell.",
    "A 7-year-old girl ran 5-km.",
    "x < y &amp; y > z &quot;quoted&quot; &lt;tag&gt;",
    "The U.S. economy grew 2.3 percent.",
    "word<skipped>word",
    "hyphen-\nated line",
    "line one\nline two",
    "(parentheses) [brackets] {braces}",
    "semi;colon: and/slash\\back",
    "e.g. etc., i.e., 1,000,000.00 items",
    "Ümlauts über alles — naïve façade",
    "quotes \"double\" and 'single' mix",
    "tabs\tand  multiple   spaces",
    "ends with period.",
    ".starts with period",
    "digits 42 and commas 1,234 and 5.6.7",
    "mixed CJK 漢字 inside latin text",
    "email-like a@b.c and url http://x.y/z?q=1",
    "dash-dash--double and under_score",
    "¡Exclamación! ¿Pregunta? «guillemets»",
    "Die Häuser, die 1990 gebaut wurden, stehen noch.",
    "No. 5 costs $3.99/unit; 10% off!",
]

CASES_ZH = [
    "你好world",
    "",
    "检查情况显示，市场销售的粮油、肉类、水果、蔬菜、蛋奶等生活必需品供应充足。",
    "他说：「今天天气很好。」",
    "混合 mixed 文本 text 123",
    "２０２０年的全形数字",
    "标点，。！？；：（）【】",
    "English only line",
    "数字123和english混排,还有ASCII标点.",
    "　全形空格　分隔",
    "特殊符号★☆✈©次要",
    "简单句子",
]


def load_reference_tokenizers():
    source = REFERENCE.read_text(encoding="utf-8")
    tree = ast.parse(source)
    keep = [
        node
        for node in tree.body
        if isinstance(node, (ast.FunctionDef, ast.ClassDef)) and node.name in WANTED
    ]
    module = ast.Module(body=keep, type_ignores=[])
    namespace: dict = {}
    # The reference functions only need these imports.
    exec("import re, sys, unicodedata, functools, logging, math", namespace)
    exec(compile(module, str(REFERENCE), "exec"), namespace)
    return namespace["tokenize_13a"], namespace["tokenize_zh"]


def main() -> None:
    tokenize_13a, tokenize_zh = load_reference_tokenizers()
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    note = (
        "Frozen reference tokenizations, generated once by tools/gen_tok_oracle.py "
        "from the upstream tokenizer source vendored under examples/. "
        "Outputs are the tokenizer's space-joined form."
    )
    with open(OUT_DIR / "tok_13a_cases.json", "w", encoding="utf-8") as f:
        json.dump(
            {"note": note, "cases": [[c, tokenize_13a(c)] for c in CASES_13A]},
            f,
            ensure_ascii=False,
            indent=1,
        )
        f.write("\n")
    with open(OUT_DIR / "tok_zh_cases.json", "w", encoding="utf-8") as f:
        json.dump(
            {"note": note, "cases": [[c, tokenize_zh(c)] for c in CASES_ZH]},
            f,
            ensure_ascii=False,
            indent=1,
        )
        f.write("\n")
    print(f"wrote {len(CASES_13A)} + {len(CASES_ZH)} cases to {OUT_DIR}")


if __name__ == "__main__":
    main()
