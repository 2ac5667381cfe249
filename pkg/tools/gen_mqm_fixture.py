#!/usr/bin/env python3
"""Deterministically generate the error-annotation TSV fixture.

Produces tests/fixtures/mqm_sample.tsv: a realistic multi-rater export with
span markup in the target column, covering every case the parser must handle
(multiple spans per row, spans at the edges, adjacent spans, whole-segment
non-translations, punctuation-severity rows, clean rows, an extra column that
must be ignored, and non-ASCII text). Regenerating yields the same bytes.

Run from the repository root:

    python3 tools/gen_mqm_fixture.py
"""

from __future__ import annotations

import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures" / "mqm_sample.tsv"

HEADER = ["system", "doc", "doc_id", "seg_id", "rater", "source", "target", "category", "severity", "extra"]

SYSTEMS = ["Online-A", "Online-B", "ref-C"]
RATERS = ["rater1", "rater2", "rater3"]

SOURCES = [
    "检查情况显示，市场销售的生活必需品供应充足。",
    "今天的会议讨论了明年的预算安排。",
    "他说：「天气预报说明天有雨。」",
    "这家公司去年发布了三款新产品。",
    "火车因为大雪晚点了两个小时。",
    "学生们正在准备下周的期末考试。",
    "新的图书馆将于九月正式开放。",
    "这条河流经三个省份，最终汇入大海。",
    "医生建议他每天至少步行三十分钟。",
    "市政府宣布将扩建地铁二号线。",
    "研究人员发现了一种新的治疗方法。",
    "昨晚的音乐会吸引了上千名观众。",
    "农民们正在田里收割今年的小麦。",
    "博物馆里展出了许多珍贵的文物。",
    "工厂的新生产线下个月开始运行。",
    "孩子们在公园里放风筝，笑声不断。",
    "这部电影改编自一部著名的小说。",
    "旅游局预计今年夏天游客会增加。",
    "志愿者们为老人送去了米和食用油。",
    "气象台发布了高温橙色预警信号。",
    "两国代表签署了新的贸易协议。",
    "这座古桥已经有四百多年的历史。",
    "超市里的水果和蔬菜价格基本稳定。",
    "科学家们正在监测火山的活动情况。",
    "他的发言赢得了现场热烈的掌声。",
]

TARGETS = [
    "The inspection shows that daily necessities in the market are in adequate supply.",
    "Today's meeting discussed the budget arrangements for next year.",
    "He said: \"The weather forecast says it will rain tomorrow.\"",
    "The company released three new products last year.",
    "The train was delayed for two hours because of the heavy snow.",
    "The students are preparing for next week's final exams.",
    "The new library will officially open in September.",
    "The river flows through three provinces and finally joins the sea.",
    "The doctor advised him to walk at least thirty minutes every day.",
    "The city government announced it would extend metro line two.",
    "Researchers have discovered a new method of treatment.",
    "Last night's concert attracted more than a thousand listeners.",
    "The farmers are harvesting this year's wheat in the fields.",
    "Many precious cultural relics are on display in the museum.",
    "The factory's new production line starts running next month.",
    "The children are flying kites in the park, laughing all the time.",
    "The film is adapted from a famous novel.",
    "The tourism bureau expects more visitors this summer.",
    "The volunteers brought rice and cooking oil to the elderly people.",
    "The weather station issued an orange alert for high temperatures.",
    "Representatives of the two countries signed a new trade agreement.",
    "This ancient bridge has a history of more than four hundred years.",
    "Fruit and vegetable prices in the supermarket remain basically stable, he said.",
    "Scientists are monitoring the volcano’s activity.",
    "His speech won warm applause from the audience.",
]

ERROR_CATEGORIES = [
    ("Accuracy/Mistranslation", "major"),
    ("Accuracy/Mistranslation", "minor"),
    ("Accuracy/Omission", "major"),
    ("Accuracy/Addition", "minor"),
    ("Fluency/Grammar", "minor"),
    ("Fluency/Grammar", "major"),
    ("Fluency/Punctuation", "minor"),
    ("Fluency/Spelling", "minor"),
    ("Terminology/Inappropriate for context", "minor"),
    ("Style/Awkward", "minor"),
    ("Style/Awkward", "neutral"),
    ("Fluency/Register", "neutral"),
]


def mark_spans(words: list[str], spans: list[tuple[int, int]]) -> str:
    """Wrap word ranges [i, j) in markers; ranges must be disjoint ascending."""
    out = []
    starts = {i for i, _ in spans}
    ends = {j - 1 for _, j in spans}
    for idx, word in enumerate(words):
        token = word
        if idx in starts:
            token = "<v>" + token
        if idx in ends:
            token = token + "</v>"
        out.append(token)
    return " ".join(out)


def main() -> None:
    rng = random.Random(20240517)
    rows: list[list[str]] = []
    for seg_index, (source, target) in enumerate(zip(SOURCES, TARGETS)):
        seg_id = str(seg_index + 1)
        doc = f"doc{seg_index // 5 + 1}"
        doc_id = str(seg_index // 5 + 1)
        for system in SYSTEMS:
            for rater in RATERS:
                words = target.split(" ")
                roll = rng.random()
                if roll < 0.35:
                    category, severity = "No-error", "no-error"
                    marked = target
                elif roll < 0.42:
                    category, severity = "Non-translation!", "major"
                    marked = "<v>" + target + "</v>"
                else:
                    category, severity = ERROR_CATEGORIES[rng.randrange(len(ERROR_CATEGORIES))]
                    n_spans = 1 if rng.random() < 0.7 else (2 if rng.random() < 0.8 else 3)
                    n_spans = min(n_spans, max(1, len(words) // 3))
                    cuts = sorted(rng.sample(range(len(words) + 1), 2 * n_spans))
                    spans = []
                    for k in range(n_spans):
                        i, j = cuts[2 * k], cuts[2 * k + 1]
                        if i == j:
                            j = min(j + 1, len(words))
                        if i == j:
                            continue
                        if spans and i < spans[-1][1]:
                            continue
                        spans.append((i, j))
                    if not spans:
                        spans = [(0, 1)]
                    marked = mark_spans(words, spans)
                rows.append(
                    [system, doc, doc_id, seg_id, rater, source, marked, category, severity, "x"]
                )

    # A few handcrafted edge rows on an extra segment.
    edge_source = "志愿者们把书送到了山区的学校。"
    edge_seg = str(len(SOURCES) + 1)
    rows += [
        ["Online-A", "doc6", "6", edge_seg, "rater1", edge_source,
         "<v>The</v> volunteers took the books to schools in the mountains.",
         "Fluency/Grammar", "minor", "x"],
        ["Online-A", "doc6", "6", edge_seg, "rater2", edge_source,
         "The volunteers took the books to schools in the <v>mountains.</v>",
         "Accuracy/Mistranslation", "major", "x"],
        ["Online-B", "doc6", "6", edge_seg, "rater1", edge_source,
         "The <v>volunteers</v><v> took</v> the books to mountain schools.",
         "Style/Awkward", "minor", "x"],
        ["Online-B", "doc6", "6", edge_seg, "rater2", edge_source,
         "The volunteers brought books to mountain schools—finally<v>,</v> they arrived.",
         "Fluency/Punctuation", "minor", "x"],
        ["ref-C", "doc6", "6", edge_seg, "rater1", edge_source,
         "志愿者 volunteers took <v>书 books</v> to the schools.",
         "Accuracy/Mistranslation", "major", "x"],
        ["ref-C", "doc6", "6", edge_seg, "rater2", edge_source,
         "The volunteers took the books to schools in the mountains.",
         "No-error", "no-error", "x"],
    ]

    lines = ["\t".join(HEADER)] + ["\t".join(row) for row in rows]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} data rows to {OUT}")


if __name__ == "__main__":
    main()
