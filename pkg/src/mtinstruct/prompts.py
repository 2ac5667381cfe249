"""Prompt rendering and model-output parsing.

The prompt layout is the widely used instruction-following template: a fixed
preface, then ``### Instruction:`` / ``### Input:`` blocks separated by blank
lines, an optional single-line ``### Hint:`` block between input and
response, and a trailing ``### Response:`` marker. Training text is the
prompt immediately followed by the completion. The exact bytes matter for
model compatibility, so rendering is pinned by golden-file tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ValidationError

PREFACE_WITH_INPUT = (
    "Below is an instruction that describes a task, paired with an input that provides "
    "further context. Write a response that appropriately completes the request."
)
PREFACE_NO_INPUT = (
    "Below is an instruction that describes a task. "
    "Write a response that appropriately completes the request."
)

INSTRUCTION_MARKER = "### Instruction:"
INPUT_MARKER = "### Input:"
HINT_MARKER = "### Hint:"
RESPONSE_MARKER = "### Response:"

_PREFERRED_RE = re.compile(r"<p>(.*?)</p> rather than <p>(.*)</p>\Z", re.DOTALL)

OPEN_MARK = "<v>"
CLOSE_MARK = "</v>"


@dataclass(frozen=True)
class PromptFormat:
    """Prompt layout configuration.

    ``variant`` is ``with_input`` (instruction and input in separate blocks)
    or ``no_input`` (input appended to the instruction block).
    """

    variant: str = "with_input"
    preface_with_input: str = PREFACE_WITH_INPUT
    preface_no_input: str = PREFACE_NO_INPUT

    def __post_init__(self) -> None:
        if self.variant not in ("with_input", "no_input"):
            raise ValidationError(f"unknown prompt variant {self.variant!r}")

    @classmethod
    def with_input(cls) -> "PromptFormat":
        return cls(variant="with_input")

    @classmethod
    def no_input(cls) -> "PromptFormat":
        return cls(variant="no_input")

    @classmethod
    def parse(cls, raw: str) -> "PromptFormat":
        key = raw.strip().lower().replace("-", "_")
        if key in ("with_input", "input"):
            return cls.with_input()
        if key in ("no_input", "noinput"):
            return cls.no_input()
        raise ValidationError(f"unknown prompt format {raw!r}; known: with_input, no_input")


@dataclass(frozen=True)
class RenderedPrompt:
    """A rendered prompt; ``completion`` is None when rendering for inference."""

    text: str
    completion: str | None

    @property
    def training_text(self) -> str:
        if self.completion is None:
            raise ValidationError("prompt was rendered without a completion")
        return self.text + self.completion

    def to_dict(self) -> dict:
        return {"prompt": self.text, "completion": self.completion}


def render(example, fmt: PromptFormat | None = None, mode: str = "train") -> RenderedPrompt:
    """Render an instruction example into prompt text.

    ``example`` needs ``instruction``, ``input``, ``hint`` and ``response``
    attributes. ``mode`` is ``train`` (completion attached) or ``infer``
    (completion None). The ``with_input`` variant requires non-empty input.
    """
    fmt = fmt or PromptFormat.with_input()
    if mode not in ("train", "infer"):
        raise ValidationError(f"unknown render mode {mode!r}; known: train, infer")
    instruction = example.instruction
    input_text = example.input
    hint = example.hint
    if not instruction or not instruction.strip():
        raise ValidationError("cannot render an example with an empty instruction")

    parts: list[str]
    if fmt.variant == "with_input":
        if not input_text or not input_text.strip():
            raise ValidationError("with_input format requires non-empty input text")
        parts = [
            fmt.preface_with_input,
            "\n\n",
            INSTRUCTION_MARKER,
            "\n",
            instruction,
            "\n\n",
            INPUT_MARKER,
            "\n",
            input_text,
            "\n\n",
        ]
    else:
        block = instruction if not input_text else f"{instruction}\n{input_text}"
        parts = [
            fmt.preface_no_input,
            "\n\n",
            INSTRUCTION_MARKER,
            "\n",
            block,
            "\n\n",
        ]
    if hint is not None:
        if not hint.strip():
            raise ValidationError("hint must be None or non-empty")
        parts += [HINT_MARKER, " ", hint, "\n\n"]
    parts.append(RESPONSE_MARKER)
    completion = example.response if mode == "train" else None
    return RenderedPrompt(text="".join(parts), completion=completion)


def extract_response(model_output: str) -> str:
    """Pull the response out of raw model output.

    Takes the text after the last ``### Response:`` marker (the whole output
    when the marker is absent), truncates at the first subsequent
    ``### Instruction:`` in case the model keeps generating, and strips
    surrounding whitespace.
    """
    idx = model_output.rfind(RESPONSE_MARKER)
    tail = model_output[idx + len(RESPONSE_MARKER) :] if idx != -1 else model_output
    cut = tail.find(INSTRUCTION_MARKER)
    if cut != -1:
        tail = tail[:cut]
    return tail.strip()


def format_preferred(preferred: str, rejected: str) -> str:
    """Compose the two-sided response used for preference examples."""
    return f"<p>{preferred}</p> rather than <p>{rejected}</p>"


def extract_preferred(response: str) -> tuple[str, str | None]:
    """Split a preference-style response into (preferred, rejected).

    Responses shaped like ``<p>A</p> rather than <p>B</p>`` yield ``(A, B)``;
    anything else has its ``<p>`` tags stripped and comes back as
    ``(text, None)``.
    """
    match = _PREFERRED_RE.match(response)
    if match:
        return match.group(1), match.group(2)
    cleaned = response.replace("<p>", "").replace("</p>", "")
    return cleaned, None


class MarkupStrip(NamedTuple):
    clean: str
    spans: tuple[tuple[int, int], ...]
    had_orphans: bool


def strip_error_markup(text: str) -> MarkupStrip:
    """Remove ``<v>...</v>`` error markers, recording span offsets.

    Balanced markers become (start, end) offsets into the cleaned text.
    Unbalanced or nested markers are removed best-effort and flagged via
    ``had_orphans`` instead of raising, since model output is untrusted.
    """
    clean: list[str] = []
    spans: list[tuple[int, int]] = []
    open_start: int | None = None
    had_orphans = False
    i = 0
    while i < len(text):
        if text.startswith(OPEN_MARK, i):
            if open_start is not None:
                had_orphans = True
            open_start = len(clean)
            i += len(OPEN_MARK)
        elif text.startswith(CLOSE_MARK, i):
            if open_start is None:
                had_orphans = True
            else:
                spans.append((open_start, len(clean)))
                open_start = None
            i += len(CLOSE_MARK)
        else:
            clean.append(text[i])
            i += 1
    if open_start is not None:
        had_orphans = True
    return MarkupStrip(clean="".join(clean), spans=tuple(spans), had_orphans=had_orphans)
