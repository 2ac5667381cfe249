"""Reference tokenizers for BLEU scoring.

``13a`` reproduces the mteval-v13a.pl international tokenization used by the
WMT evaluation campaigns: unescape a handful of SGML entities, then split out
ASCII punctuation (keeping decimal points and commas inside numbers intact).
``zh`` splits every CJK character into its own token and applies the same
punctuation rules to the rest, which makes scores for Chinese independent of
word segmentation.

Both return token lists; scoring joins or counts them directly, so the exact
splitting behaviour is pinned by fixture tests against reference output.
"""

from __future__ import annotations

import enum
import re

from .errors import ValidationError
from .langs import Direction

_13A_PUNCT = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_13A_PERIOD_BEFORE = re.compile(r"([^0-9])([\.,])")
_13A_PERIOD_AFTER = re.compile(r"([\.,])([^0-9])")
_13A_DASH = re.compile(r"([0-9])(-)")
_WHITESPACE = re.compile(r"\s+")

# Unicode ranges treated as CJK for character-level splitting: the unified
# ideograph blocks and extensions, compatibility ideographs, CJK punctuation,
# fullwidth forms, radicals, strokes, enclosed/compat blocks, and the two
# misc-symbol blocks conventionally included by the WMT Chinese tokenizer.
_CJK_RANGES: tuple[tuple[int, int], ...] = (
    (0x3400, 0x4DB5),
    (0x4E00, 0x9FA5),
    (0x9FA6, 0x9FBB),
    (0xF900, 0xFA2D),
    (0xFA30, 0xFA6A),
    (0xFA70, 0xFAD9),
    (0x20000, 0x2A6D6),
    (0x2F800, 0x2FA1D),
    (0xFF00, 0xFFEF),
    (0x2E80, 0x2EFF),
    (0x3000, 0x303F),
    (0x31C0, 0x31EF),
    (0x2F00, 0x2FDF),
    (0x2FF0, 0x2FFF),
    (0x3100, 0x312F),
    (0x31A0, 0x31BF),
    (0xFE10, 0xFE1F),
    (0xFE30, 0xFE4F),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0x3200, 0x32FF),
    (0x3300, 0x33FF),
)


def _is_cjk(char: str) -> bool:
    cp = ord(char)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def _split_punct(text: str) -> str:
    # tokenize punctuation
    text = _13A_PUNCT.sub(" \\1 ", text)
    # tokenize period and comma unless preceded by a digit
    text = _13A_PERIOD_BEFORE.sub("\\1 \\2 ", text)
    # tokenize period and comma unless followed by a digit
    text = _13A_PERIOD_AFTER.sub(" \\1 \\2", text)
    # tokenize dash when preceded by a digit
    text = _13A_DASH.sub("\\1 \\2 ", text)
    return text


def tokenize_13a(line: str) -> list[str]:
    """Tokenize with the mteval-v13a scheme (international mode)."""
    norm = line
    norm = norm.replace("<skipped>", "")
    norm = norm.replace("-\n", "")
    norm = norm.replace("\n", " ")
    norm = norm.replace("&quot;", '"')
    norm = norm.replace("&amp;", "&")
    norm = norm.replace("&lt;", "<")
    norm = norm.replace("&gt;", ">")
    norm = f" {norm} "
    norm = _split_punct(norm)
    norm = _WHITESPACE.sub(" ", norm).strip()
    return norm.split(" ") if norm else []


def tokenize_zh(line: str) -> list[str]:
    """Tokenize Chinese text character by character.

    Every CJK character (per ``_CJK_RANGES``) becomes its own token; the
    remaining text goes through the same punctuation splitting as ``13a``.
    """
    line = line.strip()
    chunks = []
    for char in line:
        if _is_cjk(char):
            chunks.append(f" {char} ")
        else:
            chunks.append(char)
    norm = _split_punct("".join(chunks))
    norm = _WHITESPACE.sub(" ", norm).strip()
    return norm.split(" ") if norm else []


class TokenizerKind(enum.Enum):
    INTL = "13a"
    ZH = "zh"

    @classmethod
    def parse(cls, raw: str) -> "TokenizerKind":
        key = raw.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown tokenizer {raw!r}; known: 13a, zh")


def tokenize(line: str, kind: TokenizerKind) -> list[str]:
    if kind is TokenizerKind.ZH:
        return tokenize_zh(line)
    return tokenize_13a(line)


def for_direction(direction: Direction) -> TokenizerKind:
    """Pick the tokenizer for scoring into the target language."""
    return TokenizerKind.ZH if direction.tgt.code == "zh" else TokenizerKind.INTL
