"""Quality-score bucketing and contrastive pair selection.

Automatic quality scores on a 0-100 scale are mapped to coarse error levels
with fixed thresholds: 85 and below is treated as having major errors, above
85 up to 90 as minor, and above 90 as error-free. Scores outside [0, 100]
are accepted and clamp to the nearest bucket; non-finite scores are rejected.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import read_jsonl
from .errors import ValidationError

MAJOR_CEILING = 85.0
MINOR_CEILING = 90.0


class ErrorLevel(enum.Enum):
    NO_ERROR = "no_error"
    MINOR = "minor"
    MAJOR = "major"

    @property
    def quality_rank(self) -> int:
        """Higher is better."""
        return {"major": 0, "minor": 1, "no_error": 2}[self.value]

    @classmethod
    def parse(cls, raw: str) -> "ErrorLevel":
        key = raw.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown error level {raw!r}")


class ScoreSource(enum.Enum):
    """Whether a score came from an automatic metric or human annotation.

    Automatic metric scores are quality scores (higher is better); human
    annotation scores are penalties (lower is better). Comparisons take this
    into account.
    """

    AUTOMATIC = "automatic"
    HUMAN = "human"

    @classmethod
    def parse(cls, raw: str) -> "ScoreSource":
        key = raw.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown score source {raw!r}")


def bucket(score: float) -> ErrorLevel:
    """Map an automatic 0-100 quality score to an error level."""
    if not math.isfinite(score):
        raise ValidationError(f"non-finite score {score!r}")
    if score <= MAJOR_CEILING:
        return ErrorLevel.MAJOR
    if score <= MINOR_CEILING:
        return ErrorLevel.MINOR
    return ErrorLevel.NO_ERROR


@dataclass(frozen=True)
class ScoredTranslation:
    """A system output with a quality score attached."""

    segment_id: str
    system: str
    text: str
    score: float
    source: ScoreSource

    def __post_init__(self) -> None:
        if not self.segment_id:
            raise ValidationError("scored translation with empty segment_id")
        if not math.isfinite(self.score):
            raise ValidationError(f"{self.segment_id}/{self.system}: non-finite score")

    def better_than(self, other: "ScoredTranslation") -> bool:
        """Strictly better quality than ``other`` (direction depends on source)."""
        if self.source is not other.source:
            raise ValidationError(
                f"{self.segment_id}: cannot compare {self.source.value} and "
                f"{other.source.value} scores"
            )
        if self.source is ScoreSource.HUMAN:
            return self.score < other.score
        return self.score > other.score

    def to_dict(self) -> dict:
        return {
            "segment_id": self.segment_id,
            "system": self.system,
            "text": self.text,
            "score": self.score,
            "source": self.source.value,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ScoredTranslation":
        try:
            return cls(
                segment_id=obj["segment_id"],
                system=obj["system"],
                text=obj["text"],
                score=float(obj["score"]),
                source=ScoreSource.parse(obj["source"]),
            )
        except KeyError as exc:
            raise ValidationError(f"scored translation record missing key {exc}") from exc


@dataclass(frozen=True)
class ContrastivePair:
    """Two outputs for the same segment where one is strictly better."""

    segment_id: str
    preferred: ScoredTranslation
    rejected: ScoredTranslation

    def __post_init__(self) -> None:
        if self.preferred.segment_id != self.segment_id or self.rejected.segment_id != self.segment_id:
            raise ValidationError(f"{self.segment_id}: pair members from different segments")
        if not self.preferred.better_than(self.rejected):
            raise ValidationError(
                f"{self.segment_id}: preferred output is not strictly better "
                f"({self.preferred.score} vs {self.rejected.score})"
            )

    @property
    def gap(self) -> float:
        return abs(self.preferred.score - self.rejected.score)


def assign_levels(
    scored: Iterable[ScoredTranslation],
) -> list[tuple[ScoredTranslation, ErrorLevel]]:
    """Bucket every automatic score; rejects human penalty scores."""
    out = []
    for st in scored:
        if st.source is not ScoreSource.AUTOMATIC:
            raise ValidationError(
                f"{st.segment_id}/{st.system}: bucketing applies to automatic scores only"
            )
        out.append((st, bucket(st.score)))
    return out


def make_pairs(
    scored: Sequence[ScoredTranslation],
    *,
    seed: int,
    min_gap: float | None = None,
    max_per_segment: int = 1,
) -> list[ContrastivePair]:
    """Build contrastive pairs per segment from scored system outputs.

    Candidates are all two-element combinations with a strict quality
    difference of at least ``min_gap`` (exact ties are always dropped). When a
    segment has more candidates than ``max_per_segment``, a uniform sample is
    drawn with a per-segment generator seeded from ``(seed, segment_id)``, so
    a segment's selection never depends on other segments. ``min_gap``
    defaults to 1.0 for automatic scores and 0.0 for human penalties.

    Output is ordered by segment id, then by candidate order within the
    segment.
    """
    if max_per_segment < 1:
        raise ValidationError(f"max_per_segment must be >= 1, got {max_per_segment}")
    if min_gap is not None and min_gap < 0:
        raise ValidationError(f"min_gap must be >= 0, got {min_gap}")
    by_segment: dict[str, list[ScoredTranslation]] = {}
    for st in scored:
        by_segment.setdefault(st.segment_id, []).append(st)
    pairs: list[ContrastivePair] = []
    for segment_id in sorted(by_segment):
        items = by_segment[segment_id]
        candidates: list[ContrastivePair] = []
        for a, b in itertools.combinations(items, 2):
            gap = min_gap
            if gap is None:
                gap = 0.0 if a.source is ScoreSource.HUMAN else 1.0
            if a.score == b.score or abs(a.score - b.score) < gap:
                continue
            preferred, rejected = (a, b) if a.better_than(b) else (b, a)
            candidates.append(ContrastivePair(segment_id, preferred, rejected))
        if len(candidates) > max_per_segment:
            rng = random.Random(f"{seed}:{segment_id}")
            keep = sorted(rng.sample(range(len(candidates)), max_per_segment))
            candidates = [candidates[i] for i in keep]
        pairs.extend(candidates)
    return pairs


def write_scores_jsonl(
    path: str | Path,
    scored: Iterable[ScoredTranslation],
    levels: dict[tuple[str, str], ErrorLevel] | None = None,
) -> int:
    """Write scored translations, optionally with an assigned ``level`` field."""
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for st in scored:
            obj = st.to_dict()
            if levels is not None:
                level = levels.get((st.segment_id, st.system))
                if level is not None:
                    obj["level"] = level.value
            json.dump(obj, f, ensure_ascii=False)
            f.write("\n")
            n += 1
    return n


def read_scores_jsonl(path: str | Path) -> list[ScoredTranslation]:
    return [ScoredTranslation.from_dict(obj) for obj in read_jsonl(path)]
