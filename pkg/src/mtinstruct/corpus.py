"""Parallel-corpus and system-output ingestion.

Text is normalized to Unicode NFC when it enters the toolkit, and only
trailing whitespace is stripped (leading whitespace may be meaningful for
markup-ish content). Sentence ids are ``{origin}:{index}`` with a zero-based
index, so the same file always yields the same ids.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ValidationError
from .langs import Direction, LangCode


def _clean(text: str) -> str:
    return unicodedata.normalize("NFC", text.rstrip())


@dataclass(frozen=True)
class SentencePair:
    """One aligned source/target segment."""

    id: str
    direction: Direction
    source: str
    target: str
    origin: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("sentence pair with empty id")
        if not self.source.strip():
            raise ValidationError(f"{self.id}: empty source text")
        if not self.target.strip():
            raise ValidationError(f"{self.id}: empty target text")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "direction": {"src": self.direction.src.code, "tgt": self.direction.tgt.code},
            "source": self.source,
            "target": self.target,
            "origin": self.origin,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SentencePair":
        try:
            direction = Direction(
                LangCode(obj["direction"]["src"]), LangCode(obj["direction"]["tgt"])
            )
            return cls(
                id=obj["id"],
                direction=direction,
                source=obj["source"],
                target=obj["target"],
                origin=obj.get("origin", ""),
            )
        except KeyError as exc:
            raise ValidationError(f"sentence pair record missing key {exc}") from exc


@dataclass(frozen=True)
class SystemTranslation:
    """One system's output for one segment."""

    segment_id: str
    system: str
    text: str

    def __post_init__(self) -> None:
        if not self.segment_id:
            raise ValidationError("system translation with empty segment_id")
        if not self.system:
            raise ValidationError(f"{self.segment_id}: empty system name")
        if not self.text.strip():
            raise ValidationError(f"{self.segment_id}/{self.system}: empty translation")


def load_parallel(
    src_path: str | Path,
    tgt_path: str | Path,
    direction: Direction,
    origin: str | None = None,
) -> list[SentencePair]:
    """Load an aligned pair of one-sentence-per-line files.

    The two files must have the same number of lines; an empty line on either
    side is an error. ``origin`` defaults to the source file's stem.
    """
    src_path, tgt_path = Path(src_path), Path(tgt_path)
    src_lines = src_path.read_text(encoding="utf-8").splitlines()
    tgt_lines = tgt_path.read_text(encoding="utf-8").splitlines()
    if len(src_lines) != len(tgt_lines):
        raise ValidationError(
            f"line count {len(src_lines)} ≠ {len(tgt_lines)} "
            f"({src_path.name} vs {tgt_path.name})"
        )
    if origin is None:
        origin = src_path.stem
    pairs = []
    for i, (src, tgt) in enumerate(zip(src_lines, tgt_lines)):
        src, tgt = _clean(src), _clean(tgt)
        if not src.strip():
            raise ValidationError(f"{src_path.name}: empty line {i + 1}")
        if not tgt.strip():
            raise ValidationError(f"{tgt_path.name}: empty line {i + 1}")
        pairs.append(
            SentencePair(
                id=f"{origin}:{i}", direction=direction, source=src, target=tgt, origin=origin
            )
        )
    return pairs


def load_system_translations(path: str | Path) -> list[SystemTranslation]:
    """Load a headerless tab-separated file of ``segment_id<TAB>system<TAB>text`` rows.

    Duplicate ``(segment_id, system)`` keys are rejected.
    """
    path = Path(path)
    rows: list[SystemTranslation] = []
    seen: set[tuple[str, str]] = set()
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValidationError(
                f"{path.name} row {i + 1}: expected 3 tab-separated columns, got {len(parts)}"
            )
        segment_id, system, text = parts
        key = (segment_id, system)
        if key in seen:
            raise ValidationError(f"{path.name} row {i + 1}: duplicate entry for {key}")
        seen.add(key)
        rows.append(SystemTranslation(segment_id=segment_id, system=system, text=_clean(text)))
    return rows


def write_pairs_jsonl(path: str | Path, pairs: Iterable[SentencePair]) -> int:
    """Write sentence pairs as JSON Lines; returns the record count."""
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for pair in pairs:
            json.dump(pair.to_dict(), f, ensure_ascii=False)
            f.write("\n")
            n += 1
    return n


def read_pairs_jsonl(path: str | Path) -> list[SentencePair]:
    return [SentencePair.from_dict(obj) for obj in read_jsonl(path)]


def read_jsonl(path: str | Path) -> Iterator[dict]:
    """Yield one parsed object per non-empty line."""
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f):
            if not line.strip():
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{Path(path).name} line {i + 1}: bad JSON ({exc})") from exc


def write_jsonl(path: str | Path, records: Iterable[dict]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            json.dump(rec, f, ensure_ascii=False)
            f.write("\n")
            n += 1
    return n
