"""Live-service integration with the dataset-building pipeline.

Drives the ``mtinstruct`` CLI against a real ``mtscorer`` server over HTTP:
score system outputs, bucket them, build error-guided examples, and check
that every example's hint level agrees with its score under the documented
thresholds (major <= 85 < minor <= 90 < no error).
"""

import json
import threading
import time

import pytest
import requests
import uvicorn

from mtscorer.metric import BUILTIN_MODEL
from mtscorer.service import create_app

mtinstruct_cli = pytest.importorskip("mtinstruct.cli")


@pytest.fixture(scope="module")
def live_shim():
    config = uvicorn.Config(create_app(), host="127.0.0.1", port=0, log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if time.monotonic() > deadline:
            raise RuntimeError("scorer service did not start")
        time.sleep(0.02)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


def _run(*argv):
    return mtinstruct_cli.main([str(a) for a in argv])


def _expected_level(score: float) -> str:
    if score <= 85.0:
        return "major"
    if score <= 90.0:
        return "minor"
    return "no_error"


REFERENCES = [
    "the committee approved the annual budget and the new infrastructure plan on tuesday evening",
    "heavy rain flooded the northern part of the city during the early hours of wednesday",
]
SYSTEM_OUTPUTS = {
    # verbatim copies of the references: no-error territory
    "copycat": list(REFERENCES),
    # lightly degraded outputs
    "decent": [
        "a committee approved the annual budget and new infrastructure plan tuesday evening",
        "heavy rain flooded the northern half of the city during the early hours of wednesday",
    ],
    # unrelated text: major territory
    "garbler": [
        "seven purple owls negotiated quietly",
        "bricks dream of arithmetic",
    ],
}


def test_health_endpoint_live(live_shim):
    body = requests.get(live_shim + "/health", timeout=5).json()
    assert body["status"] == "ok"


def test_scores_buckets_and_hints_agree_end_to_end(live_shim, tmp_path):
    src = tmp_path / "mini.de"
    tgt = tmp_path / "mini.en"
    src.write_text("Erste Zeile hier.\nZweite Zeile hier.\n", encoding="utf-8")
    tgt.write_text("".join(line + "\n" for line in REFERENCES), encoding="utf-8")
    pairs = tmp_path / "pairs.jsonl"
    assert _run("ingest-parallel", "--src", src, "--tgt", tgt, "--direction", "de-en", "--out", pairs) == 0

    systems = tmp_path / "systems.tsv"
    rows = []
    for system, outputs in SYSTEM_OUTPUTS.items():
        for i, text in enumerate(outputs):
            rows.append(f"mini:{i}\t{system}\t{text}")
    systems.write_text("\n".join(rows) + "\n", encoding="utf-8")

    scored = tmp_path / "scored.jsonl"
    code = _run(
        "score",
        "--pairs", pairs,
        "--systems", systems,
        "--endpoint", live_shim,
        "--model", BUILTIN_MODEL,
        "--out", scored,
    )
    assert code == 0
    score_rows = [json.loads(line) for line in scored.read_text(encoding="utf-8").splitlines()]
    assert len(score_rows) == 6
    assert all(0.0 <= row["score"] <= 100.0 for row in score_rows)

    bucketed = tmp_path / "bucketed.jsonl"
    assert _run("bucket", "--scores", scored, "--out", bucketed) == 0

    examples_path = tmp_path / "error_guided.jsonl"
    code = _run(
        "build", "error-guided",
        "--scores", bucketed,
        "--pairs", pairs,
        "--direction", "de-en",
        "--seed", "2",
        "--out", examples_path,
    )
    assert code == 0
    examples = [json.loads(line) for line in examples_path.read_text(encoding="utf-8").splitlines()]
    assert len(examples) == 6

    score_by = {(row["segment_id"], row["system"]): row["score"] for row in score_rows}
    seen_levels = set()
    for example in examples:
        key = (example["meta"]["segment_id"], example["meta"]["systems"][0])
        level = _expected_level(score_by[key])
        assert example["meta"]["error_level"] == level
        seen_levels.add(level)
        if level == "no_error":
            assert example["hint"] == "A translation with no errors could be"
        else:
            assert example["hint"] == f"A translation with {level} errors could be"
    assert seen_levels == {"no_error", "minor", "major"}
