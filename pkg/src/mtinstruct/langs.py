"""Language codes, display names, and translation directions."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

# ISO 639-1 code -> English display name, as used inside instruction text.
_REGISTRY: dict[str, str] = {
    "en": "English",
    "de": "German",
    "zh": "Chinese",
    "ro": "Romanian",
}


def register_language(code: str, name: str) -> None:
    """Add (or override) a language in the registry.

    ``code`` must be a lowercase ISO-style tag without whitespace.
    """
    if not code or code != code.strip().lower() or " " in code:
        raise ValidationError(f"bad language code: {code!r}")
    if not name or not name.strip():
        raise ValidationError(f"bad display name for {code!r}: {name!r}")
    _REGISTRY[code] = name


def known_languages() -> dict[str, str]:
    """Return a copy of the registry (code -> display name)."""
    return dict(_REGISTRY)


@dataclass(frozen=True, order=True)
class LangCode:
    """A registered language code."""

    code: str

    def __post_init__(self) -> None:
        if self.code not in _REGISTRY:
            raise ValidationError(
                f"unknown language code {self.code!r}; known: {sorted(_REGISTRY)}"
            )

    @property
    def display(self) -> str:
        """English display name, e.g. ``Chinese`` for ``zh``."""
        return _REGISTRY[self.code]


@dataclass(frozen=True, order=True)
class Direction:
    """A translation direction between two distinct registered languages."""

    src: LangCode
    tgt: LangCode

    def __post_init__(self) -> None:
        if self.src == self.tgt:
            raise ValidationError(f"source and target language are both {self.src.code!r}")

    @classmethod
    def parse(cls, pair: str) -> "Direction":
        """Parse a ``src-tgt`` pair such as ``de-en``."""
        parts = pair.split("-")
        if len(parts) != 2 or not all(parts):
            raise ValidationError(f"bad language pair {pair!r}; expected e.g. 'de-en'")
        return cls(LangCode(parts[0]), LangCode(parts[1]))

    @property
    def pair(self) -> str:
        """The ``src-tgt`` form, e.g. ``de-en``."""
        return f"{self.src.code}-{self.tgt.code}"

    @property
    def label(self) -> str:
        """Compact display label, e.g. ``De⇒En``."""
        return f"{self.src.code.capitalize()}⇒{self.tgt.code.capitalize()}"

    def reversed(self) -> "Direction":
        return Direction(self.tgt, self.src)
