"""Run manifests: provenance sidecars for every produced artifact.

Each output file gets a sibling ``<name>.manifest.json`` recording the
command, a digest of the resolved configuration, digests of all inputs, the
seed, tool version, record counts, and a timestamp. The timestamp honours
``SOURCE_DATE_EPOCH`` (the reproducible-builds convention) so that two runs
with identical inputs can produce byte-identical manifests.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import __version__


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return "sha256:" + h.hexdigest()


def config_digest(config: Mapping[str, object]) -> str:
    canonical = json.dumps(config, sort_keys=True, ensure_ascii=False, default=str)
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(moment))


def manifest_path_for(output_path: str | Path) -> Path:
    output_path = Path(output_path)
    return output_path.with_name(output_path.name + ".manifest.json")


@dataclass(frozen=True)
class RunManifest:
    command: list[str]
    config: dict
    inputs: dict[str, str]
    seed: int | None
    counts: dict[str, int]
    version: str = __version__
    created_at: str = field(default_factory=build_timestamp)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config_digest": config_digest(self.config),
            "config": self.config,
            "inputs": self.inputs,
            "seed": self.seed,
            "counts": self.counts,
            "version": self.version,
            "created_at": self.created_at,
        }


def write_manifest(
    output_path: str | Path,
    *,
    command: list[str],
    config: Mapping[str, object],
    inputs: Mapping[str, str | Path],
    seed: int | None,
    counts: Mapping[str, int],
) -> Path:
    """Write the manifest sidecar for ``output_path`` atomically."""
    manifest = RunManifest(
        command=list(command),
        config=dict(config),
        inputs={str(name): file_digest(p) for name, p in inputs.items()},
        seed=seed,
        counts=dict(counts),
    )
    target = manifest_path_for(output_path)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(
        json.dumps(manifest.to_dict(), sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    os.replace(tmp, target)
    return target
