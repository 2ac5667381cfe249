import json
import threading

import pytest

from mtinstruct.errors import EndpointError, ValidationError
from mtinstruct.inference import (
    DecodeConfig,
    InferenceJob,
    Journal,
    apply_hint_condition,
    hint_matrix,
    resolve_endpoint,
    run_job,
    write_translations,
)
from mtinstruct.instructions import HintTemplate, InstructionExample, Kind
from mtinstruct.prompts import format_preferred

from conftest import extract_hint_line, extract_input_block


def _examples(n=4):
    return [
        InstructionExample(
            instruction="Translate the following sentences from German to English.",
            input=f"Satz nummer {i}.",
            hint=None,
            response=f"Sentence number {i}.",
            kind=Kind.TRANSLATION,
            meta={"segment_id": f"t:{i}"},
        )
        for i in range(n)
    ]


def _job(server, n=4, **kwargs):
    defaults = dict(
        examples=_examples(n),
        endpoint=server.url,
        model="test-model",
        decode=DecodeConfig(strategy="beam", beam_size=4),
        backoff_base=0.01,
    )
    defaults.update(kwargs)
    return InferenceJob(**defaults)


# ------------------------------------------------------------- config


def test_decode_parse():
    beam = DecodeConfig.parse("beam:8")
    assert beam.strategy == "beam" and beam.beam_size == 8
    sample = DecodeConfig.parse("sample:0.5")
    assert sample.strategy == "sampling" and sample.temperature == 0.5
    with pytest.raises(ValidationError):
        DecodeConfig.parse("greedy")


def test_beam_wire_params_use_best_of():
    params = DecodeConfig(strategy="beam", beam_size=4).wire_params()
    assert params == {"max_tokens": 512, "temperature": 0.0, "top_p": 1.0, "n": 1, "best_of": 4}


def test_sampling_wire_params():
    params = DecodeConfig(strategy="sampling", temperature=0.7, top_p=0.9).wire_params()
    assert params == {"max_tokens": 512, "temperature": 0.7, "top_p": 0.9, "n": 1}
    assert "best_of" not in params


def test_strict_beam_fails_fast():
    with pytest.raises(EndpointError, match="beam"):
        InferenceJob(
            examples=_examples(1),
            endpoint="http://localhost:1",
            model="m",
            decode=DecodeConfig(strategy="beam"),
            strict_beam=True,
        )


def test_resolve_endpoint():
    assert resolve_endpoint("http://h:1/v1/completions") == "http://h:1/v1/completions"
    assert resolve_endpoint("http://h:1") == "http://h:1/v1/completions"
    assert resolve_endpoint("http://h:1/") == "http://h:1/v1/completions"


def test_apply_hint_condition():
    ex = _examples(1)[0].with_hint("existing")
    assert apply_hint_condition(ex, "none").hint is None
    assert apply_hint_condition(ex, "no_error").hint == "A translation with no errors could be"
    assert apply_hint_condition(ex, "minor").hint == "A translation with minor errors could be"
    assert apply_hint_condition(ex, "major").hint == "A translation with major errors could be"
    assert apply_hint_condition(ex, "preferred").hint == "We prefer to translate it to"


# ------------------------------------------------------------- happy path


def test_run_job_returns_ordered_translations(mock_server, tmp_path):
    job = _job(mock_server)
    results = run_job(job, tmp_path / "journal.jsonl")
    assert [r.index for r in results] == [0, 1, 2, 3]
    assert all(r.ok for r in results)
    assert results[2].translation == "mock translation of: Satz nummer 2."


def test_request_bodies_have_wire_shape(mock_server, tmp_path):
    job = _job(mock_server, n=1)
    run_job(job, tmp_path / "journal.jsonl")
    [request] = mock_server.requests
    assert request["path"] == "/v1/completions"
    body = request["body"]
    assert body["model"] == "test-model"
    assert body["best_of"] == 4
    assert body["temperature"] == 0.0
    assert body["n"] == 1
    assert body["stop"] == ["###"]
    assert body["prompt"].endswith("### Response:")


def test_hint_override_visible_at_the_wire(mock_server, tmp_path):
    for condition, expected in [
        ("none", None),
        ("no_error", "A translation with no errors could be"),
        ("minor", "A translation with minor errors could be"),
        ("major", "A translation with major errors could be"),
        ("preferred", "We prefer to translate it to"),
    ]:
        mock_server.reset_log()
        job = _job(mock_server, n=2, hint_condition=condition)
        run_job(job, tmp_path / f"{condition}.journal.jsonl")
        for prompt in mock_server.prompts():
            assert extract_hint_line(prompt) == expected


def test_preference_shaped_output_keeps_preferred_side(mock_server, tmp_path):
    def behavior(body):
        source = extract_input_block(body["prompt"])
        return 200, {"choices": [{"text": format_preferred(f"good {source}", "bad side")}]}

    mock_server.behavior = behavior
    results = run_job(_job(mock_server, n=2), tmp_path / "journal.jsonl")
    assert results[0].translation == "good Satz nummer 0."
    assert "rather than" not in results[0].translation


def test_error_markup_stripped_from_translation(mock_server, tmp_path):
    mock_server.behavior = lambda body: (
        200,
        {"choices": [{"text": "clean <v>marked</v> output"}]},
    )
    results = run_job(_job(mock_server, n=1), tmp_path / "journal.jsonl")
    assert results[0].translation == "clean marked output"
    assert results[0].response_text == "clean <v>marked</v> output"


# ------------------------------------------------------------- resilience


def test_transient_500_is_retried(mock_server, tmp_path):
    failures = {"left": 2}
    lock = threading.Lock()

    def behavior(body):
        with lock:
            if failures["left"] > 0:
                failures["left"] -= 1
                return 500, {"error": "boom"}
        return 200, {"choices": [{"text": "recovered"}]}

    mock_server.behavior = behavior
    results = run_job(_job(mock_server, n=1, retries=3), tmp_path / "journal.jsonl")
    assert results[0].ok
    assert results[0].translation == "recovered"
    assert len(mock_server.requests) == 3


def test_permanent_failure_recorded_not_fatal(mock_server, tmp_path):
    def behavior(body):
        if "nummer 2" in body.get("prompt", ""):
            return 500, {"error": "always down"}
        return mock_server.default_behavior(body)

    mock_server.behavior = behavior
    results = run_job(_job(mock_server, n=4, retries=1), tmp_path / "journal.jsonl")
    assert [r.ok for r in results] == [True, True, False, True]
    assert results[2].translation is None
    assert "server error 500" in results[2].error


def test_4xx_fails_without_retry(mock_server, tmp_path):
    mock_server.behavior = lambda body: (404, {"error": "no such model"})
    results = run_job(_job(mock_server, n=1, retries=3), tmp_path / "journal.jsonl")
    assert not results[0].ok
    assert len(mock_server.requests) == 1  # client errors are not retried


def test_resume_skips_completed_segments(mock_server, tmp_path):
    journal_path = tmp_path / "journal.jsonl"

    def flaky(body):
        if "nummer 3" in body.get("prompt", ""):
            return 500, {"error": "down"}
        return mock_server.default_behavior(body)

    mock_server.behavior = flaky
    first = run_job(_job(mock_server, retries=0), journal_path)
    assert [r.ok for r in first] == [True, True, True, False]
    first_count = len(mock_server.requests)
    assert first_count == 4

    mock_server.behavior = mock_server.default_behavior
    second = run_job(_job(mock_server, retries=0), journal_path)
    assert all(r.ok for r in second)
    # only the failed segment was re-queried
    assert len(mock_server.requests) == first_count + 1
    assert [r.translation for r in second] == [
        f"mock translation of: Satz nummer {i}." for i in range(4)
    ]


def test_resume_after_interrupt_produces_identical_outputs(mock_server, tmp_path):
    # complete run in one go
    full = run_job(_job(mock_server), tmp_path / "full.jsonl")
    full_path = tmp_path / "full.txt"
    write_translations(full_path, full)

    # interrupted run: first attempt only journals half, then a resume finishes
    journal = Journal(tmp_path / "partial.jsonl")
    for index in (0, 2):
        journal.append(
            {"index": index, "status": "ok", "output": f"mock translation of: Satz nummer {index}."}
        )
    mock_server.reset_log()
    resumed = run_job(_job(mock_server), tmp_path / "partial.jsonl")
    resumed_path = tmp_path / "resumed.txt"
    write_translations(resumed_path, resumed)
    assert len(mock_server.requests) == 2  # only 1 and 3 were queried
    assert resumed_path.read_bytes() == full_path.read_bytes()


def test_concurrency_respects_max_in_flight(mock_server, tmp_path):
    mock_server.latency = 0.05
    run_job(_job(mock_server, n=8, max_in_flight=2), tmp_path / "journal.jsonl")
    assert mock_server.max_concurrent <= 2


def test_journal_survives_garbage_lines(tmp_path, mock_server):
    journal_path = tmp_path / "journal.jsonl"
    journal_path.write_text(
        json.dumps({"index": 0, "status": "ok", "output": "kept"}) + "\n" + "{broken json\n",
        encoding="utf-8",
    )
    results = run_job(_job(mock_server, n=2), journal_path)
    assert results[0].translation == "kept"
    assert results[1].ok
    assert len(mock_server.requests) == 1


# ------------------------------------------------------------- sweeps


def test_hint_matrix_writes_one_set_per_condition(mock_server, tmp_path):
    job = _job(mock_server)
    outputs = hint_matrix(job, ["none", "no_error", "minor", "major"], tmp_path / "sweep")
    assert set(outputs) == {"none", "no_error", "minor", "major"}
    for condition, paths in outputs.items():
        lines = paths["translations"].read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4
        assert paths["journal"].exists()
        responses = [
            json.loads(line)
            for line in paths["responses"].read_text(encoding="utf-8").splitlines()
        ]
        assert [r["index"] for r in responses] == [0, 1, 2, 3]


def test_hint_matrix_rejects_bad_conditions(mock_server, tmp_path):
    with pytest.raises(ValidationError):
        hint_matrix(_job(mock_server), ["none", "none"], tmp_path / "s")
    with pytest.raises(ValidationError):
        hint_matrix(_job(mock_server), ["wild"], tmp_path / "s")


def test_translations_file_flattens_newlines(tmp_path, mock_server):
    mock_server.behavior = lambda body: (200, {"choices": [{"text": "two\nlines"}]})
    results = run_job(_job(mock_server, n=1), tmp_path / "j.jsonl")
    out = tmp_path / "out.txt"
    write_translations(out, results)
    assert out.read_text(encoding="utf-8") == "two lines\n"
