"""Quality metrics and batch scoring.

The builtin metric (``builtin/charf-v1``) is a character n-gram F-score:
fully deterministic, dependency-free, and pinned by regression fixtures, so
pipelines can be exercised without downloading a neural checkpoint. Neural
metrics are resolved lazily through the ``comet`` library when it is
installed; otherwise requesting one is a protocol error.

Scores live on a 0-100 scale throughout (neural metrics report 0-1 natively
and are rescaled) so downstream bucketing thresholds apply unchanged.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

BUILTIN_MODEL = "builtin/charf-v1"
DEFAULT_MODEL = "Unbabel/wmt22-comet-da"

CHARF_MAX_ORDER = 6
CHARF_BETA = 2.0


class ProtocolError(ValueError):
    """Request-level violation: the whole batch is rejected."""


def _normalize(text: str) -> str:
    text = unicodedata.normalize("NFC", text)
    return " ".join(text.split())


def _char_ngrams(text: str, order: int) -> Counter:
    return Counter(text[i : i + order] for i in range(len(text) - order + 1))


def char_fscore(
    hypothesis: str,
    basis: str,
    max_order: int = CHARF_MAX_ORDER,
    beta: float = CHARF_BETA,
) -> float:
    """Character n-gram F-score of ``hypothesis`` against ``basis``, 0-100.

    Precision and recall are averaged over n-gram orders 1..``max_order``
    (orders the shorter side cannot reach count as zero, so near-identical
    long texts score high and fragments score low). ``beta`` weights recall,
    as usual for character F-scores.
    """
    hyp = _normalize(hypothesis)
    ref = _normalize(basis)
    if not hyp or not ref:
        return 100.0 if hyp == ref else 0.0
    precisions = []
    recalls = []
    for order in range(1, max_order + 1):
        hyp_grams = _char_ngrams(hyp, order)
        ref_grams = _char_ngrams(ref, order)
        if not hyp_grams and not ref_grams:
            continue
        overlap = sum((hyp_grams & ref_grams).values())
        precisions.append(overlap / max(sum(hyp_grams.values()), 1))
        recalls.append(overlap / max(sum(ref_grams.values()), 1))
    if not precisions:
        return 0.0
    precision = sum(precisions) / len(precisions)
    recall = sum(recalls) / len(recalls)
    if precision == 0.0 and recall == 0.0:
        return 0.0
    beta2 = beta * beta
    return 100.0 * (1.0 + beta2) * precision * recall / (beta2 * precision + recall)


class BuiltinCharF:
    """Reference-based when a reference is present, else scored against the source."""

    name = BUILTIN_MODEL

    def score_many(self, items: Sequence[tuple[str, str, str | None]]) -> list[float]:
        return [
            char_fscore(hypothesis, reference if reference is not None else source)
            for source, hypothesis, reference in items
        ]


class NeuralMetric:
    """Thin adapter over the ``comet`` library for checkpoint-based metrics."""

    def __init__(self, name: str):
        try:
            from comet import download_model, load_from_checkpoint
        except ImportError as exc:
            raise ProtocolError(
                f"model {name!r} is not available: neural metrics need the "
                f"'unbabel-comet' package; the builtin metric is {BUILTIN_MODEL!r}"
            ) from exc
        self.name = name
        self._model = load_from_checkpoint(download_model(name))

    def score_many(self, items: Sequence[tuple[str, str, str | None]]) -> list[float]:
        data = []
        for source, hypothesis, reference in items:
            row = {"src": source, "mt": hypothesis}
            if reference is not None:
                row["ref"] = reference
            data.append(row)
        output = self._model.predict(data, progress_bar=False)
        return [float(s) * 100.0 for s in output.scores]


def resolve_metric(name: str):
    if name == BUILTIN_MODEL:
        return BuiltinCharF()
    return NeuralMetric(name)


@dataclass(frozen=True)
class BatchResult:
    model: str
    mode: str  # reference | source_only | mixed
    items: list[dict]


def _item_problem(item) -> str | None:
    if not isinstance(item, dict):
        return "item must be an object"
    for field in ("source", "hypothesis"):
        if not isinstance(item.get(field), str):
            return f"missing or non-string {field!r}"
    if "reference" in item and item["reference"] is not None and not isinstance(item["reference"], str):
        return "reference must be a string when present"
    return None


def score_batch(items, model: str | None = None) -> BatchResult:
    """Score a batch of ``{id, source, hypothesis, reference?}`` items.

    Batch-level violations (empty batch, missing/duplicate ids, unknown
    model) raise :class:`ProtocolError`. Per-item data problems become
    ``{id, error}`` entries while the rest of the batch is scored. Result
    items keep the request order, one entry per request id.
    """
    if not isinstance(items, list) or not items:
        raise ProtocolError("items must be a non-empty list")
    if model is not None and not isinstance(model, str):
        raise ProtocolError("model must be a string")
    name = model or DEFAULT_MODEL

    ids = []
    for position, item in enumerate(items):
        item_id = item.get("id") if isinstance(item, dict) else None
        if not isinstance(item_id, str) or not item_id:
            raise ProtocolError(f"item {position} needs a non-empty string id")
        ids.append(item_id)
    duplicates = sorted(item_id for item_id, count in Counter(ids).items() if count > 1)
    if duplicates:
        raise ProtocolError(f"duplicate ids: {duplicates[:5]}")

    metric = resolve_metric(name)

    with_reference = [isinstance(item.get("reference"), str) for item in items]
    if all(with_reference):
        mode = "reference"
    elif not any(with_reference):
        mode = "source_only"
    else:
        mode = "mixed"

    results: list[dict | None] = [None] * len(items)
    scoreable: list[tuple[str, str, str | None]] = []
    scoreable_positions: list[int] = []
    for position, item in enumerate(items):
        problem = _item_problem(item)
        if problem:
            results[position] = {"id": ids[position], "error": problem}
            continue
        reference = item.get("reference")
        scoreable.append((item["source"], item["hypothesis"], reference))
        scoreable_positions.append(position)

    if scoreable:
        scores = metric.score_many(scoreable)
        for position, score in zip(scoreable_positions, scores):
            if not math.isfinite(score):
                results[position] = {"id": ids[position], "error": "metric returned a non-finite score"}
            else:
                results[position] = {"id": ids[position], "score": score}

    return BatchResult(model=name, mode=mode, items=[entry for entry in results if entry is not None])
