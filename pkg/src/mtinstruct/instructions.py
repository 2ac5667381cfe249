"""Instruction-example construction: plain translation, preference, error-guided.

All builders are deterministic for a given seed. Instruction wording is drawn
from a pool of templates with one ``random.Random(seed)`` generator advanced
once per record in input order, so datasets are reproducible and selection
frequencies are uniform in expectation. For anything sampled per segment the
generator is seeded from ``(seed, segment_id)``, keeping segments independent
of one another.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .bucketing import ContrastivePair, ErrorLevel, ScoredTranslation
from .corpus import SentencePair, read_jsonl
from .errors import ValidationError
from .langs import Direction
from .mqm import AnnotatedTranslation, Severity, reinsert_spans
from .prompts import format_preferred, extract_preferred, strip_error_markup

SRC_SLOT = "{SRC}"
TGT_SLOT = "{TGT}"


class Kind(enum.Enum):
    TRANSLATION = "translation"
    CONTRASTIVE = "contrastive"
    ERROR_GUIDED = "error_guided"
    GENERAL = "general"

    @classmethod
    def parse(cls, raw: str) -> "Kind":
        key = raw.strip().lower().replace("-", "_")
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown example kind {raw!r}")


@dataclass(frozen=True)
class InstructionExample:
    """One training record: instruction, input, optional hint, response."""

    instruction: str
    input: str
    hint: str | None
    response: str
    kind: Kind
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.response or not self.response.strip():
            raise ValidationError("example with empty response")
        if self.kind is Kind.CONTRASTIVE:
            preferred, rejected = extract_preferred(self.response)
            if rejected is None:
                raise ValidationError(
                    "contrastive example whose response does not parse into two sides"
                )
        if self.kind is Kind.ERROR_GUIDED:
            expected = self.meta.get("span_count")
            if isinstance(expected, int) and expected > 0:
                stripped = strip_error_markup(self.response)
                if stripped.had_orphans or len(stripped.spans) != expected:
                    raise ValidationError(
                        f"error-guided example should carry {expected} marked spans, "
                        f"found {len(stripped.spans)}"
                    )

    def with_hint(self, hint: str | None) -> "InstructionExample":
        return InstructionExample(
            instruction=self.instruction,
            input=self.input,
            hint=hint,
            response=self.response,
            kind=self.kind,
            meta=self.meta,
        )

    def to_dict(self) -> dict:
        return {
            "instruction": self.instruction,
            "input": self.input,
            "hint": self.hint,
            "response": self.response,
            "kind": self.kind.value,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "InstructionExample":
        try:
            return cls(
                instruction=obj["instruction"],
                input=obj["input"],
                hint=obj.get("hint"),
                response=obj["response"],
                kind=Kind.parse(obj["kind"]),
                meta=obj.get("meta", {}),
            )
        except KeyError as exc:
            raise ValidationError(f"example record missing key {exc}") from exc


DEFAULT_POOL_ENTRIES = (
    f"Translate the following sentences from {SRC_SLOT} to {TGT_SLOT}.",
    f"Please provide the {TGT_SLOT} translation for the following sentences.",
    f"What do the following sentences mean in {TGT_SLOT}?",
)


@dataclass(frozen=True)
class InstructionPool:
    """Instruction templates with ``{SRC}``/``{TGT}`` placeholders.

    Every entry must mention ``{TGT}`` exactly once; ``{SRC}`` is optional
    (at most once), since a target-only phrasing still identifies the task.
    """

    entries: tuple[str, ...] = DEFAULT_POOL_ENTRIES

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValidationError("empty instruction pool")
        for entry in self.entries:
            if entry.count(TGT_SLOT) != 1:
                raise ValidationError(
                    f"pool entry must mention {TGT_SLOT} exactly once: {entry!r}"
                )
            if entry.count(SRC_SLOT) > 1:
                raise ValidationError(
                    f"pool entry may mention {SRC_SLOT} at most once: {entry!r}"
                )

    @classmethod
    def default(cls) -> "InstructionPool":
        return cls()

    @classmethod
    def from_file(cls, path: str | Path) -> "InstructionPool":
        lines = [
            line.strip()
            for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        return cls(entries=tuple(lines))

    @property
    def digest(self) -> str:
        joined = "\n".join(self.entries).encode("utf-8")
        return "sha256:" + hashlib.sha256(joined).hexdigest()

    def fill(self, entry: str, direction: Direction) -> str:
        return entry.replace(SRC_SLOT, direction.src.display).replace(
            TGT_SLOT, direction.tgt.display
        )

    def pick(self, rng: random.Random, direction: Direction) -> str:
        return self.fill(self.entries[rng.randrange(len(self.entries))], direction)


@dataclass(frozen=True)
class HintTemplate:
    """Wording for the optional hint line.

    ``errored`` takes ``{severity}`` and ``{category}``; level-only hints drop
    the category slot. Categories are lowercased when instantiated so hints
    read as prose.
    """

    preference: str = "We prefer to translate it to"
    errored: str = "A translation with {severity} {category} errors could be"
    clean: str = "A translation with no errors could be"

    def for_span(self, severity: Severity, category_raw: str) -> str:
        return self.errored.format(severity=severity.value, category=category_raw.lower())

    def for_level(self, level: ErrorLevel) -> str:
        if level is ErrorLevel.NO_ERROR:
            return self.clean
        template = self.errored
        if f" {{category}}" in template:
            template = template.replace(" {category}", "", 1)
        else:
            template = template.replace("{category}", "", 1)
        return template.format(severity=level.value)


def build_translation(
    pairs: Sequence[SentencePair],
    pool: InstructionPool,
    seed: int,
) -> list[InstructionExample]:
    """One plain translation example per sentence pair, in input order."""
    rng = random.Random(seed)
    out = []
    for pair in pairs:
        out.append(
            InstructionExample(
                instruction=pool.pick(rng, pair.direction),
                input=pair.source,
                hint=None,
                response=pair.target,
                kind=Kind.TRANSLATION,
                meta={
                    "segment_id": pair.id,
                    "direction": pair.direction.pair,
                    "origin": pair.origin,
                },
            )
        )
    return out


def build_contrastive(
    pairs: Sequence[ContrastivePair],
    pool: InstructionPool,
    hints: HintTemplate,
    seed: int,
    *,
    sources: Mapping[str, str],
    direction: Direction,
) -> list[InstructionExample]:
    """One preference example per contrastive pair.

    ``sources`` maps segment ids to source text (the annotation files carry
    only translations). The response shows the preferred output first:
    ``<p>better</p> rather than <p>worse</p>``.
    """
    rng = random.Random(seed)
    out = []
    for pair in pairs:
        if pair.segment_id not in sources:
            raise ValidationError(f"no source text for segment {pair.segment_id}")
        out.append(
            InstructionExample(
                instruction=pool.pick(rng, direction),
                input=sources[pair.segment_id],
                hint=hints.preference,
                response=format_preferred(pair.preferred.text, pair.rejected.text),
                kind=Kind.CONTRASTIVE,
                meta={
                    "segment_id": pair.segment_id,
                    "direction": direction.pair,
                    "systems": [pair.preferred.system, pair.rejected.system],
                    "scores": [pair.preferred.score, pair.rejected.score],
                    "score_source": pair.preferred.source.value,
                },
            )
        )
    return out


def build_error_guided_from_annotations(
    annotations: Sequence[AnnotatedTranslation],
    pool: InstructionPool,
    hints: HintTemplate,
    seed: int,
) -> list[InstructionExample]:
    """Error-guided examples from span-level human annotations.

    The response keeps the ``<v>`` markers; the hint names the severity and
    category of the worst span (clean rows get the no-error hint).
    """
    rng = random.Random(seed)
    out = []
    for ann in annotations:
        worst = ann.worst_span
        if worst is None:
            hint = hints.clean
            level = ErrorLevel.NO_ERROR.value
        else:
            hint = hints.for_span(worst.severity, worst.category.raw)
            level = worst.severity.value
        out.append(
            InstructionExample(
                instruction=pool.pick(rng, ann.direction),
                input=ann.source,
                hint=hint,
                response=reinsert_spans(ann),
                kind=Kind.ERROR_GUIDED,
                meta={
                    "segment_id": ann.segment_id,
                    "direction": ann.direction.pair,
                    "systems": [ann.system],
                    "rater": ann.rater,
                    "error_level": level,
                    "span_count": len(ann.spans),
                },
            )
        )
    return out


def build_error_guided_from_levels(
    leveled: Sequence[tuple[ScoredTranslation, ErrorLevel]],
    pool: InstructionPool,
    hints: HintTemplate,
    seed: int,
    *,
    sources: Mapping[str, str],
    direction: Direction,
) -> list[InstructionExample]:
    """Error-guided examples from bucketed automatic scores.

    No span information exists here, so responses are the plain translations
    and hints name only the coarse level.
    """
    rng = random.Random(seed)
    out = []
    for st, level in leveled:
        if st.segment_id not in sources:
            raise ValidationError(f"no source text for segment {st.segment_id}")
        out.append(
            InstructionExample(
                instruction=pool.pick(rng, direction),
                input=sources[st.segment_id],
                hint=hints.for_level(level),
                response=st.text,
                kind=Kind.ERROR_GUIDED,
                meta={
                    "segment_id": st.segment_id,
                    "direction": direction.pair,
                    "systems": [st.system],
                    "error_level": level.value,
                    "score": st.score,
                    "span_count": 0,
                },
            )
        )
    return out


def mix_dataset(
    parts: Sequence[tuple[Sequence[InstructionExample], float]],
    seed: int,
) -> list[InstructionExample]:
    """Combine example lists with per-part weights and shuffle globally.

    Weight 1 keeps a part as is; w < 1 keeps a seeded sample of round(w * n);
    w > 1 duplicates the part floor(w) times plus a sampled remainder. The
    final order is a single seeded shuffle, so the same inputs and seed give
    the same file.
    """
    rng = random.Random(seed)
    combined: list[InstructionExample] = []
    for examples, weight in parts:
        examples = list(examples)
        if weight < 0 or not math.isfinite(weight):
            raise ValidationError(f"bad mix weight {weight!r}")
        if weight == 1.0 or not examples:
            combined.extend(examples)
            continue
        whole = int(weight)
        fraction = weight - whole
        combined.extend(examples * whole)
        remainder = round(fraction * len(examples))
        if remainder:
            combined.extend(rng.sample(examples, remainder))
    rng.shuffle(combined)
    return combined


def count_kinds(examples: Iterable[InstructionExample]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for ex in examples:
        counts[ex.kind.value] = counts.get(ex.kind.value, 0) + 1
    return dict(sorted(counts.items()))


def write_examples_jsonl(path: str | Path, examples: Iterable[InstructionExample]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for ex in examples:
            json.dump(ex.to_dict(), f, ensure_ascii=False)
            f.write("\n")
            n += 1
    return n


def read_examples_jsonl(path: str | Path) -> list[InstructionExample]:
    return [InstructionExample.from_dict(obj) for obj in read_jsonl(path)]
