"""Command line: run the service or score a JSONL batch offline."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .metric import BUILTIN_MODEL, ProtocolError, score_batch


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level=args.log_level)
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    items = []
    with open(args.infile, encoding="utf-8") as f:
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                items.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ProtocolError(f"{args.infile} line {line_no}: {exc}") from exc
    batch = score_batch(items, args.model)
    with open(args.out, "w", encoding="utf-8") as f:
        for entry in batch.items:
            record = dict(entry)
            record["model"] = batch.model
            record["mode"] = batch.mode
            json.dump(record, f, ensure_ascii=False)
            f.write("\n")
    errors = sum(1 for entry in batch.items if "error" in entry)
    print(f"scored {len(batch.items) - errors}/{len(batch.items)} items -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtscorer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the scoring service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8017)
    p.add_argument("--log-level", default="info")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("score", help="score a JSONL batch offline")
    p.add_argument("--in", dest="infile", required=True, help="items JSONL: {id, source, hypothesis, reference?}")
    p.add_argument("--out", required=True, help="scores JSONL output")
    p.add_argument("--model", default=BUILTIN_MODEL)
    p.set_defaults(func=cmd_score)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProtocolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
