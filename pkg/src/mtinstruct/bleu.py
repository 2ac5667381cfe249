"""Corpus-level BLEU with a single reference.

Standard corpus BLEU: clipped n-gram precision for n = 1..4 pooled over the
whole corpus, a brevity penalty of exp(1 - ref_len/hyp_len) when the
hypothesis side is shorter, and the geometric mean of the four precisions
scaled to 0-100. No smoothing is applied by default, matching the common
evaluation setting; ``smoothing="exp"`` substitutes 1/(2^k * total) for empty
precision buckets, which only matters for very short corpora.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .tokenizers import TokenizerKind, tokenize

NGRAM_ORDER = 4


@dataclass(frozen=True)
class BleuScore:
    score: float
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    @property
    def signature(self) -> str:
        return f"bleu|n:{NGRAM_ORDER}|bp:{self.brevity_penalty:.4f}|hyp:{self.hyp_len}|ref:{self.ref_len}"

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_len": self.hyp_len,
            "ref_len": self.ref_len,
        }


def _ngram_counts(tokens: Sequence[str]) -> Counter:
    counts: Counter = Counter()
    for n in range(1, NGRAM_ORDER + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i : i + n])] += 1
    return counts


def corpus_bleu(
    hypotheses: Sequence[str],
    references: Sequence[str],
    kind: TokenizerKind = TokenizerKind.INTL,
    smoothing: str = "none",
) -> BleuScore:
    """Score a hypothesis corpus against an aligned reference corpus.

    Raises on length mismatch or an empty corpus. ``smoothing`` is ``none``
    (default) or ``exp``.
    """
    if smoothing not in ("none", "exp"):
        raise ValidationError(f"unknown smoothing {smoothing!r}; known: none, exp")
    if len(hypotheses) != len(references):
        raise ValidationError(
            f"hypothesis/reference length mismatch: {len(hypotheses)} ≠ {len(references)}"
        )
    if not hypotheses:
        raise ValidationError("empty corpus")

    correct = [0] * NGRAM_ORDER
    total = [0] * NGRAM_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_tokens = tokenize(hyp, kind)
        ref_tokens = tokenize(ref, kind)
        hyp_len += len(hyp_tokens)
        ref_len += len(ref_tokens)
        ref_counts = _ngram_counts(ref_tokens)
        for ngram, count in _ngram_counts(hyp_tokens).items():
            n = len(ngram)
            total[n - 1] += count
            correct[n - 1] += min(count, ref_counts.get(ngram, 0))

    smooth = 1.0
    precisions = []
    for n in range(NGRAM_ORDER):
        if total[n] == 0:
            precisions.append(0.0)
            continue
        if correct[n] == 0:
            if smoothing == "exp":
                smooth *= 2.0
                precisions.append(1.0 / (smooth * total[n]))
            else:
                precisions.append(0.0)
        else:
            precisions.append(correct[n] / total[n])

    if hyp_len == 0:
        brevity_penalty = 0.0
    elif hyp_len < ref_len:
        brevity_penalty = math.exp(1.0 - ref_len / hyp_len)
    else:
        brevity_penalty = 1.0

    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        log_mean = sum(math.log(p) for p in precisions) / NGRAM_ORDER
        score = brevity_penalty * math.exp(log_mean) * 100.0

    return BleuScore(
        score=score,
        precisions=tuple(precisions),  # type: ignore[arg-type]
        brevity_penalty=brevity_penalty,
        hyp_len=hyp_len,
        ref_len=ref_len,
    )
