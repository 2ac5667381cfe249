"""Hint-conditioned inference against a text-completions endpoint.

Speaks the common completions wire shape: POST ``{model, prompt, max_tokens,
temperature, top_p, n, best_of, stop}`` and read back
``choices[0].text``. Beam search is approximated with ``best_of`` at
temperature 0 (flag ``strict_beam`` to fail instead when the endpoint should
really implement beams). Requests run through a bounded worker pool; every
finished segment is appended to a JSONL journal so an interrupted sweep can
resume without re-querying segments that already succeeded.
"""

from __future__ import annotations

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

import requests

from .errors import EndpointError, ValidationError
from .instructions import HintTemplate, InstructionExample
from .prompts import PromptFormat, extract_preferred, extract_response, render, strip_error_markup

HINT_CONDITIONS = ("none", "no_error", "minor", "major", "preferred")

DEFAULT_STOP = ["###"]


@dataclass(frozen=True)
class DecodeConfig:
    """Decoding parameters.

    ``strategy`` is ``beam`` (deterministic; sent as best_of at temperature 0)
    or ``sampling``.
    """

    strategy: str = "beam"
    beam_size: int = 4
    temperature: float = 0.7
    top_p: float = 0.9
    max_new_tokens: int = 512

    def __post_init__(self) -> None:
        if self.strategy not in ("beam", "sampling"):
            raise ValidationError(f"unknown decode strategy {self.strategy!r}")
        if self.strategy == "beam" and self.beam_size < 1:
            raise ValidationError(f"beam size must be >= 1, got {self.beam_size}")
        if self.strategy == "sampling" and self.temperature <= 0:
            raise ValidationError("sampling needs temperature > 0")
        if self.max_new_tokens < 1:
            raise ValidationError("max_new_tokens must be >= 1")

    @classmethod
    def parse(cls, raw: str) -> "DecodeConfig":
        """Parse ``beam:4`` or ``sample:0.7`` style settings."""
        kind, _, value = raw.strip().partition(":")
        kind = kind.lower()
        if kind == "beam":
            return cls(strategy="beam", beam_size=int(value) if value else 4)
        if kind in ("sample", "sampling"):
            return cls(strategy="sampling", temperature=float(value) if value else 0.7)
        raise ValidationError(f"unknown decode setting {raw!r}; use beam:N or sample:T")

    def wire_params(self) -> dict:
        if self.strategy == "beam":
            return {
                "max_tokens": self.max_new_tokens,
                "temperature": 0.0,
                "top_p": 1.0,
                "n": 1,
                "best_of": self.beam_size,
            }
        return {
            "max_tokens": self.max_new_tokens,
            "temperature": self.temperature,
            "top_p": self.top_p,
            "n": 1,
        }


def resolve_endpoint(endpoint: str) -> str:
    """Accept either a completions URL or a server base URL."""
    endpoint = endpoint.rstrip("/")
    if endpoint.endswith("/completions"):
        return endpoint
    return endpoint + "/v1/completions"


def apply_hint_condition(
    example: InstructionExample, condition: str, hints: HintTemplate | None = None
) -> InstructionExample:
    """Return the example with its hint forced to a sweep condition.

    ``none`` removes the hint; ``no_error``/``minor``/``major`` install the
    level hints; ``preferred`` installs the preference hint.
    """
    hints = hints or HintTemplate()
    if condition == "none":
        return example.with_hint(None)
    if condition == "preferred":
        return example.with_hint(hints.preference)
    from .bucketing import ErrorLevel

    return example.with_hint(hints.for_level(ErrorLevel.parse(condition)))


@dataclass(frozen=True)
class InferenceJob:
    examples: Sequence[InstructionExample]
    endpoint: str
    model: str
    decode: DecodeConfig = field(default_factory=DecodeConfig)
    fmt: PromptFormat = field(default_factory=PromptFormat.with_input)
    hint_condition: str | None = None
    hints: HintTemplate = field(default_factory=HintTemplate)
    max_in_flight: int = 4
    retries: int = 3
    backoff_base: float = 0.5
    timeout: float = 60.0
    strict_beam: bool = False
    stop: tuple[str, ...] = tuple(DEFAULT_STOP)

    def __post_init__(self) -> None:
        if self.max_in_flight < 1:
            raise ValidationError("max_in_flight must be >= 1")
        if self.hint_condition is not None and self.hint_condition not in HINT_CONDITIONS:
            raise ValidationError(
                f"unknown hint condition {self.hint_condition!r}; known: {HINT_CONDITIONS}"
            )
        if self.strict_beam and self.decode.strategy == "beam":
            raise EndpointError(
                "endpoint speaks the completions protocol, which has no true beam "
                "search; rerun without strict beam handling or use sampling"
            )

    def prompt_for(self, example: InstructionExample) -> str:
        ex = example
        if self.hint_condition is not None:
            ex = apply_hint_condition(ex, self.hint_condition, self.hints)
        return render(ex, self.fmt, mode="infer").text

    def request_body(self, example: InstructionExample) -> dict:
        body = {"model": self.model, "prompt": self.prompt_for(example)}
        body.update(self.decode.wire_params())
        if self.stop:
            body["stop"] = list(self.stop)
        return body


@dataclass(frozen=True)
class InferenceResult:
    index: int
    prompt: str
    raw_output: str | None
    response_text: str | None
    translation: str | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _derive_texts(raw_output: str) -> tuple[str, str]:
    """Raw completion -> (response text, final translation).

    The translation drops error markers and, for preference-shaped responses,
    keeps only the preferred side.
    """
    response_text = extract_response(raw_output)
    unmarked = strip_error_markup(response_text).clean
    translation = extract_preferred(unmarked)[0]
    return response_text, translation


class Journal:
    """Append-only JSONL progress log keyed by example index."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> dict[int, dict]:
        entries: dict[int, dict] = {}
        if not self.path.exists():
            return entries
        with open(self.path, encoding="utf-8") as f:
            for line in f:
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    continue  # partial trailing write after a hard interrupt
                if isinstance(obj.get("index"), int):
                    entries[obj["index"]] = obj
        return entries

    def append(self, entry: dict) -> None:
        line = json.dumps(entry, ensure_ascii=False)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line + "\n")


def _post_with_retries(job: InferenceJob, url: str, body: dict) -> dict:
    last_error: Exception | None = None
    for attempt in range(job.retries + 1):
        if attempt:
            time.sleep(job.backoff_base * (2 ** (attempt - 1)))
        try:
            resp = requests.post(url, json=body, timeout=job.timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if resp.status_code >= 500:
            last_error = EndpointError(f"server error {resp.status_code}: {resp.text[:200]}")
            continue
        if resp.status_code != 200:
            raise EndpointError(f"endpoint rejected request ({resp.status_code}): {resp.text[:200]}")
        try:
            payload = resp.json()
            choice_text = payload["choices"][0]["text"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise EndpointError(f"malformed completion payload: {exc}") from exc
        if not isinstance(choice_text, str):
            raise EndpointError("malformed completion payload: choices[0].text is not text")
        return {"text": choice_text, "payload": payload}
    raise EndpointError(f"request failed after {job.retries + 1} attempts: {last_error}")


def run_job(
    job: InferenceJob,
    journal_path: str | Path,
    progress: Callable[[int, int], None] | None = None,
) -> list[InferenceResult]:
    """Run every example through the endpoint, journaling as results land.

    Already-journaled successes are not re-queried, so rerunning with the same
    journal resumes an interrupted job. Failures are journaled too (and retried
    on resume) but never abort the sweep. Results come back in example order.
    """
    url = resolve_endpoint(job.endpoint)
    journal = Journal(journal_path)
    done = {idx: e for idx, e in journal.load().items() if e.get("status") == "ok"}
    pending = [i for i in range(len(job.examples)) if i not in done]
    completed = len(done)
    total = len(job.examples)

    def work(index: int) -> None:
        body = job.request_body(job.examples[index])
        try:
            outcome = _post_with_retries(job, url, body)
            journal.append({"index": index, "status": "ok", "output": outcome["text"]})
        except EndpointError as exc:
            journal.append({"index": index, "status": "error", "error": str(exc)})

    if pending:
        with ThreadPoolExecutor(max_workers=job.max_in_flight) as pool:
            futures = [pool.submit(work, i) for i in pending]
            for future in as_completed(futures):
                future.result()
                completed += 1
                if progress:
                    progress(completed, total)

    entries = journal.load()
    results = []
    for index in range(total):
        prompt = job.prompt_for(job.examples[index])
        entry = entries.get(index)
        if entry is None or entry.get("status") != "ok":
            error = (entry or {}).get("error", "missing journal entry")
            results.append(
                InferenceResult(
                    index=index,
                    prompt=prompt,
                    raw_output=None,
                    response_text=None,
                    translation=None,
                    error=str(error),
                )
            )
            continue
        raw = entry["output"]
        response_text, translation = _derive_texts(raw)
        results.append(
            InferenceResult(
                index=index,
                prompt=prompt,
                raw_output=raw,
                response_text=response_text,
                translation=translation,
            )
        )
    return results


def _flatten(text: str) -> str:
    """Make text safe for one-record-per-line output files."""
    return " ".join(text.splitlines()) if "\n" in text else text


def write_translations(path: str | Path, results: Sequence[InferenceResult]) -> int:
    """Write one translation per line (empty line for failed segments)."""
    with open(path, "w", encoding="utf-8") as f:
        for res in results:
            f.write(_flatten(res.translation or "") + "\n")
    return len(results)


def write_responses_jsonl(path: str | Path, results: Sequence[InferenceResult]) -> int:
    with open(path, "w", encoding="utf-8") as f:
        for res in results:
            json.dump(
                {
                    "index": res.index,
                    "response": res.response_text,
                    "translation": res.translation,
                    "error": res.error,
                },
                f,
                ensure_ascii=False,
            )
            f.write("\n")
    return len(results)


def hint_matrix(
    base_job: InferenceJob,
    conditions: Sequence[str],
    out_dir: str | Path,
    progress: Callable[[str, int, int], None] | None = None,
) -> dict[str, dict[str, Path]]:
    """Run the same examples once per hint condition.

    Produces ``<condition>.txt`` (one translation per line),
    ``<condition>.responses.jsonl`` and ``<condition>.journal.jsonl`` under
    ``out_dir``; returns the paths per condition.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seen = set()
    for condition in conditions:
        if condition not in HINT_CONDITIONS:
            raise ValidationError(f"unknown hint condition {condition!r}")
        if condition in seen:
            raise ValidationError(f"duplicate hint condition {condition!r}")
        seen.add(condition)
    outputs: dict[str, dict[str, Path]] = {}
    for condition in conditions:
        job = replace(base_job, hint_condition=condition)
        journal_path = out_dir / f"{condition}.journal.jsonl"
        results = run_job(
            job,
            journal_path,
            progress=(lambda done, total, c=condition: progress(c, done, total))
            if progress
            else None,
        )
        translations_path = out_dir / f"{condition}.txt"
        responses_path = out_dir / f"{condition}.responses.jsonl"
        write_translations(translations_path, results)
        write_responses_jsonl(responses_path, results)
        outputs[condition] = {
            "translations": translations_path,
            "responses": responses_path,
            "journal": journal_path,
        }
    return outputs
