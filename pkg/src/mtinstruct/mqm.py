"""Error-annotated translations: TSV ingestion, span markup, and penalty scores.

Annotation rows mark error spans inside the translation with ``<v>...</v>``.
Parsing records spans as offsets into the unmarked text so that reinserting
the markers reproduces the original cell byte for byte. Targets are kept
exactly as found in the file (no Unicode normalization) to preserve that
round trip. Offsets are Unicode scalar positions, not bytes.

Per-segment penalties follow the common weighting scheme for human error
annotations: each marked span costs its severity weight, a rater's penalty is
the sum over their spans, and the segment score is the mean over raters
(lower is better).
"""

from __future__ import annotations

import csv
import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import read_jsonl
from .errors import ValidationError
from .langs import Direction, LangCode

OPEN_MARK = "<v>"
CLOSE_MARK = "</v>"

_REQUIRED_COLUMNS = ("system", "seg_id", "rater", "source", "target", "category", "severity")


class Severity(enum.Enum):
    MAJOR = "major"
    MINOR = "minor"
    NEUTRAL = "neutral"

    @classmethod
    def parse(cls, raw: str) -> "Severity":
        """Parse a severity cell, case-insensitively.

        ``no-error`` is accepted as an alias for ``neutral`` because error-free
        rows in annotation exports commonly carry it in the severity column.
        """
        key = raw.strip().lower()
        if key == "no-error":
            return cls.NEUTRAL
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown severity {raw!r}")

    @property
    def rank(self) -> int:
        """Higher is worse."""
        return {"neutral": 0, "minor": 1, "major": 2}[self.value]


@dataclass(frozen=True)
class ErrorCategory:
    """An annotation category path such as ``Accuracy/Mistranslation``."""

    raw: str

    def __post_init__(self) -> None:
        if not self.raw.strip():
            raise ValidationError("empty error category")

    @property
    def top_level(self) -> str:
        return self.raw.split("/", 1)[0]

    @property
    def no_error(self) -> bool:
        return self.raw.strip().lower() == "no-error"


@dataclass(frozen=True)
class ErrorSpan:
    """A marked span, as offsets into the unmarked target text."""

    start: int
    end: int
    category: ErrorCategory
    severity: Severity

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValidationError(f"bad span offsets ({self.start}, {self.end})")

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "category": self.category.raw,
            "severity": self.severity.value,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ErrorSpan":
        return cls(
            start=obj["start"],
            end=obj["end"],
            category=ErrorCategory(obj["category"]),
            severity=Severity.parse(obj["severity"]),
        )


@dataclass(frozen=True)
class AnnotatedTranslation:
    """One rater's annotation of one system output for one segment."""

    segment_id: str
    system: str
    rater: str
    direction: Direction
    source: str
    target_plain: str
    spans: tuple[ErrorSpan, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.segment_id:
            raise ValidationError("annotation with empty segment_id")
        last_end = 0
        for span in self.spans:
            if span.start < last_end:
                raise ValidationError(
                    f"{self.segment_id}/{self.system}: spans overlap or are out of order"
                )
            if span.end > len(self.target_plain):
                raise ValidationError(
                    f"{self.segment_id}/{self.system}: span ({span.start}, {span.end}) "
                    f"exceeds text length {len(self.target_plain)}"
                )
            last_end = span.end

    @property
    def worst_span(self) -> ErrorSpan | None:
        """The earliest span of maximal severity, or None when clean."""
        if not self.spans:
            return None
        return max(self.spans, key=lambda s: s.severity.rank)

    def to_dict(self) -> dict:
        return {
            "segment_id": self.segment_id,
            "system": self.system,
            "rater": self.rater,
            "direction": {"src": self.direction.src.code, "tgt": self.direction.tgt.code},
            "source": self.source,
            "target_plain": self.target_plain,
            "spans": [span.to_dict() for span in self.spans],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AnnotatedTranslation":
        try:
            return cls(
                segment_id=obj["segment_id"],
                system=obj["system"],
                rater=obj["rater"],
                direction=Direction(
                    LangCode(obj["direction"]["src"]), LangCode(obj["direction"]["tgt"])
                ),
                source=obj["source"],
                target_plain=obj["target_plain"],
                spans=tuple(ErrorSpan.from_dict(s) for s in obj["spans"]),
            )
        except KeyError as exc:
            raise ValidationError(f"annotation record missing key {exc}") from exc


def split_marked_text(
    marked: str, category: ErrorCategory, severity: Severity, where: str = "text"
) -> tuple[str, tuple[ErrorSpan, ...]]:
    """Split ``<v>``-marked text into (plain text, spans).

    Markers must be balanced and non-nested; every span carries the row's
    category and severity.
    """
    plain: list[str] = []
    spans: list[ErrorSpan] = []
    open_start: int | None = None
    i = 0
    while i < len(marked):
        if marked.startswith(OPEN_MARK, i):
            if open_start is not None:
                raise ValidationError(f"{where}: nested {OPEN_MARK} marker")
            open_start = len(plain)
            i += len(OPEN_MARK)
        elif marked.startswith(CLOSE_MARK, i):
            if open_start is None:
                raise ValidationError(f"{where}: {CLOSE_MARK} without opener")
            spans.append(ErrorSpan(open_start, len(plain), category, severity))
            open_start = None
            i += len(CLOSE_MARK)
        else:
            plain.append(marked[i])
            i += 1
    if open_start is not None:
        raise ValidationError(f"{where}: unclosed {OPEN_MARK} marker")
    return "".join(plain), tuple(spans)


def reinsert_spans(annotation: AnnotatedTranslation) -> str:
    """Rebuild the marked-up target from plain text plus spans.

    Inverse of parsing: for any annotation read from a TSV row, this returns
    the original target cell exactly.
    """
    text = annotation.target_plain
    for span in reversed(annotation.spans):
        text = (
            text[: span.start]
            + OPEN_MARK
            + text[span.start : span.end]
            + CLOSE_MARK
            + text[span.end :]
        )
    return text


def parse_mqm_tsv(path: str | Path, direction: Direction) -> list[AnnotatedTranslation]:
    """Parse an error-annotation TSV export into one record per row.

    The header must contain the columns ``system doc doc_id seg_id rater
    source target category severity`` (``doc``/``doc_id`` may be absent;
    unknown extra columns are ignored). The annotated files do not carry a
    language pair, so the caller supplies ``direction``.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f, delimiter="\t", quoting=csv.QUOTE_NONE)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path.name}: empty file") from None
        col = {name: idx for idx, name in enumerate(header)}
        for required in _REQUIRED_COLUMNS:
            if required not in col:
                raise ValidationError(f"{path.name}: missing column {required!r}")
        out: list[AnnotatedTranslation] = []
        for row_no, row in enumerate(reader, start=2):
            if not any(cell.strip() for cell in row):
                continue
            if len(row) < len(header):
                raise ValidationError(
                    f"{path.name} row {row_no}: {len(row)} cells for {len(header)} columns"
                )
            where = f"{path.name} row {row_no}"
            category = ErrorCategory(row[col["category"]])
            severity = Severity.parse(row[col["severity"]])
            plain, spans = split_marked_text(row[col["target"]], category, severity, where)
            out.append(
                AnnotatedTranslation(
                    segment_id=row[col["seg_id"]],
                    system=row[col["system"]],
                    rater=row[col["rater"]],
                    direction=direction,
                    source=row[col["source"]],
                    target_plain=plain,
                    spans=spans,
                )
            )
    return out


@dataclass(frozen=True)
class MqmWeights:
    """Severity weights for penalty scoring.

    Two category-specific exceptions mirror common practice: an outright
    non-translation outweighs an ordinary major error, and punctuation-level
    fluency slips cost almost nothing.
    """

    major: float = 5.0
    minor: float = 1.0
    neutral: float = 0.0
    non_translation: float = 25.0
    minor_punctuation: float = 0.1

    def __post_init__(self) -> None:
        for name in ("major", "minor", "neutral", "non_translation", "minor_punctuation"):
            if getattr(self, name) < 0:
                raise ValidationError(f"negative weight for {name}")

    def span_weight(self, span: ErrorSpan) -> float:
        cat = span.category.raw.strip().lower()
        if span.severity is Severity.MAJOR:
            return self.non_translation if cat == "non-translation!" else self.major
        if span.severity is Severity.MINOR:
            return self.minor_punctuation if cat == "fluency/punctuation" else self.minor
        return self.neutral


@dataclass(frozen=True)
class SegmentScore:
    """Mean per-rater penalty for one (segment, system); lower is better."""

    segment_id: str
    system: str
    score: float
    raters: int

    def to_dict(self) -> dict:
        return {
            "segment_id": self.segment_id,
            "system": self.system,
            "score": self.score,
            "raters": self.raters,
        }


def score_segments(
    annotations: Iterable[AnnotatedTranslation], weights: MqmWeights | None = None
) -> list[SegmentScore]:
    """Aggregate annotations into per-(segment, system) penalties.

    Each rater's penalty is the sum of span weights over all of their rows for
    that segment and system (a clean row contributes 0 but still counts the
    rater); the segment score is the mean over raters. Results are sorted by
    (segment_id, system).
    """
    weights = weights or MqmWeights()
    per_rater: dict[tuple[str, str], dict[str, float]] = defaultdict(lambda: defaultdict(float))
    for ann in annotations:
        rater_totals = per_rater[(ann.segment_id, ann.system)]
        rater_totals[ann.rater] += sum(weights.span_weight(span) for span in ann.spans)
    scores = []
    for (segment_id, system), rater_totals in per_rater.items():
        mean = sum(rater_totals.values()) / len(rater_totals)
        scores.append(
            SegmentScore(segment_id=segment_id, system=system, score=mean, raters=len(rater_totals))
        )
    scores.sort(key=lambda s: (s.segment_id, s.system))
    return scores


def write_annotations_jsonl(path: str | Path, annotations: Iterable[AnnotatedTranslation]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for ann in annotations:
            json.dump(ann.to_dict(), f, ensure_ascii=False)
            f.write("\n")
            n += 1
    return n


def read_annotations_jsonl(path: str | Path) -> list[AnnotatedTranslation]:
    return [AnnotatedTranslation.from_dict(obj) for obj in read_jsonl(path)]


def dedupe_targets(annotations: Sequence[AnnotatedTranslation]) -> dict[tuple[str, str], str]:
    """Map (segment_id, system) to the first rater's plain target text."""
    texts: dict[tuple[str, str], str] = {}
    for ann in annotations:
        texts.setdefault((ann.segment_id, ann.system), ann.target_plain)
    return texts
