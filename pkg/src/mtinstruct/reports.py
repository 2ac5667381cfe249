"""Analysis reports over inference outputs.

Two report families: a hint sweep (the same test set decoded under different
hint conditions, scored with BLEU and optionally a mean automatic quality
score) and a preference split (responses parsed into preferred/rejected sides
and each side scored separately, quantifying how much better the preferred
wording is lexically).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__
from .bleu import BleuScore, corpus_bleu
from .corpus import read_jsonl
from .errors import ValidationError
from .langs import Direction
from .prompts import extract_preferred
from .tokenizers import TokenizerKind, for_direction

CONDITION_ORDER = ("none", "no_error", "minor", "major", "preferred", "unpreferred")


def read_lines(path: str | Path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def _signature(kind: TokenizerKind, n_segments: int) -> str:
    return f"bleu|tok:{kind.value}|smooth:none|n:{n_segments}|v:{__version__}"


@dataclass(frozen=True)
class SweepRow:
    condition: str
    bleu: BleuScore
    delta_bleu: float | None
    mean_quality: float | None
    n: int

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "bleu": round(self.bleu.score, 4),
            "delta_bleu": None if self.delta_bleu is None else round(self.delta_bleu, 4),
            "mean_quality": None if self.mean_quality is None else round(self.mean_quality, 4),
            "n": self.n,
            "brevity_penalty": round(self.bleu.brevity_penalty, 4),
        }


@dataclass(frozen=True)
class SweepReport:
    direction: str
    tokenizer: str
    signature: str
    rows: tuple[SweepRow, ...]

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "tokenizer": self.tokenizer,
            "signature": self.signature,
            "rows": [row.to_dict() for row in self.rows],
        }

    def to_markdown(self) -> str:
        lines = [
            f"# Hint sweep ({self.direction})",
            "",
            "| condition | BLEU | ΔBLEU | mean quality | n |",
            "|---|---|---|---|---|",
        ]
        for row in self.rows:
            delta = "—" if row.delta_bleu is None else f"{row.delta_bleu:+.2f}"
            quality = "—" if row.mean_quality is None else f"{row.mean_quality:.2f}"
            lines.append(
                f"| {row.condition} | {row.bleu.score:.2f} | {delta} | {quality} | {row.n} |"
            )
        lines += ["", f"`{self.signature}`", ""]
        return "\n".join(lines)


def _mean_quality(path: str | Path) -> float:
    scores = []
    for obj in read_jsonl(path):
        if "score" not in obj:
            raise ValidationError(f"{Path(path).name}: quality record without 'score'")
        scores.append(float(obj["score"]))
    if not scores:
        raise ValidationError(f"{Path(path).name}: no quality scores")
    return sum(scores) / len(scores)


def hint_sweep_report(
    runs: Mapping[str, str | Path],
    references_path: str | Path,
    direction: Direction,
    quality: Mapping[str, str | Path] | None = None,
    kind: TokenizerKind | None = None,
) -> SweepReport:
    """Score one output file per hint condition against shared references.

    ``runs`` maps condition name to a translations file (one segment per
    line, aligned with the references). Rows come out in canonical condition
    order, then any extra conditions alphabetically; the ``none`` condition,
    when present, is the baseline for BLEU deltas.
    """
    if not runs:
        raise ValidationError("no runs to report on")
    kind = kind or for_direction(direction)
    references = read_lines(references_path)
    ordered = [c for c in CONDITION_ORDER if c in runs]
    ordered += sorted(set(runs) - set(ordered))
    scored: dict[str, BleuScore] = {}
    for condition in ordered:
        hyp = read_lines(runs[condition])
        if len(hyp) != len(references):
            raise ValidationError(
                f"run {condition!r}: {len(hyp)} outputs for {len(references)} references"
            )
        scored[condition] = corpus_bleu(hyp, references, kind)
    baseline = scored.get("none")
    rows = []
    for condition in ordered:
        bleu = scored[condition]
        delta = None
        if baseline is not None and condition != "none":
            delta = bleu.score - baseline.score
        mean_q = None
        if quality and condition in quality:
            mean_q = _mean_quality(quality[condition])
        rows.append(
            SweepRow(
                condition=condition,
                bleu=bleu,
                delta_bleu=delta,
                mean_quality=mean_q,
                n=len(references),
            )
        )
    return SweepReport(
        direction=direction.pair,
        tokenizer=kind.value,
        signature=_signature(kind, len(references)),
        rows=tuple(rows),
    )


@dataclass(frozen=True)
class PreferenceReport:
    direction: str
    tokenizer: str
    signature: str
    preferred: BleuScore
    rejected: BleuScore | None
    n_total: int
    n_with_rejected: int

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "tokenizer": self.tokenizer,
            "signature": self.signature,
            "preferred_bleu": round(self.preferred.score, 4),
            "rejected_bleu": None if self.rejected is None else round(self.rejected.score, 4),
            "n_total": self.n_total,
            "n_with_rejected": self.n_with_rejected,
        }

    def to_markdown(self) -> str:
        lines = [
            f"# Preference split ({self.direction})",
            "",
            "| side | BLEU | n |",
            "|---|---|---|",
            f"| preferred | {self.preferred.score:.2f} | {self.n_total} |",
        ]
        if self.rejected is not None:
            lines.append(f"| rejected | {self.rejected.score:.2f} | {self.n_with_rejected} |")
        else:
            lines.append(f"| rejected | — | {self.n_with_rejected} |")
        lines += ["", f"`{self.signature}`", ""]
        return "\n".join(lines)


def preference_split_report(
    responses: Sequence[str],
    references: Sequence[str],
    direction: Direction,
    kind: TokenizerKind | None = None,
) -> PreferenceReport:
    """Score the two sides of preference-shaped responses separately.

    Every response contributes its preferred side; the rejected side is scored
    only over responses that actually parse into two sides (reported as
    ``n_with_rejected``).
    """
    if len(responses) != len(references):
        raise ValidationError(
            f"responses/references length mismatch: {len(responses)} ≠ {len(references)}"
        )
    if not responses:
        raise ValidationError("empty corpus")
    kind = kind or for_direction(direction)
    preferred_side = []
    rejected_side = []
    rejected_refs = []
    for response, reference in zip(responses, references):
        preferred, rejected = extract_preferred(response)
        preferred_side.append(preferred)
        if rejected is not None:
            rejected_side.append(rejected)
            rejected_refs.append(reference)
    preferred_bleu = corpus_bleu(preferred_side, references, kind)
    rejected_bleu = (
        corpus_bleu(rejected_side, rejected_refs, kind) if rejected_side else None
    )
    return PreferenceReport(
        direction=direction.pair,
        tokenizer=kind.value,
        signature=_signature(kind, len(references)),
        preferred=preferred_bleu,
        rejected=rejected_bleu,
        n_total=len(responses),
        n_with_rejected=len(rejected_side),
    )


def write_report_json(path: str | Path, report: SweepReport | PreferenceReport) -> None:
    Path(path).write_text(
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
