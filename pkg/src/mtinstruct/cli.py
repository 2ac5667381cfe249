"""Command-line interface.

Subcommands cover the full pipeline: ingest raw data, score and bucket system
outputs, build instruction datasets, render prompts, run inference sweeps,
and report scores. Every produced file gets a ``<name>.manifest.json``
sidecar recording inputs, configuration, seed, and counts. Inputs are never
modified.

Exit codes: 0 on success, 1 for validation/usage errors, 2 for I/O or
endpoint failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import requests

from . import __version__
from .bucketing import (
    ErrorLevel,
    ScoredTranslation,
    ScoreSource,
    assign_levels,
    bucket,
    make_pairs,
    read_scores_jsonl,
    write_scores_jsonl,
)
from .corpus import (
    load_parallel,
    load_system_translations,
    read_pairs_jsonl,
    read_jsonl,
    write_pairs_jsonl,
)
from .errors import EndpointError, ValidationError
from .inference import (
    HINT_CONDITIONS,
    DecodeConfig,
    InferenceJob,
    hint_matrix,
    run_job,
    write_responses_jsonl,
    write_translations,
)
from .instructions import (
    HintTemplate,
    InstructionPool,
    build_contrastive,
    build_error_guided_from_annotations,
    build_error_guided_from_levels,
    build_translation,
    count_kinds,
    mix_dataset,
    read_examples_jsonl,
    write_examples_jsonl,
)
from .langs import Direction
from .manifest import write_manifest
from .mqm import (
    dedupe_targets,
    parse_mqm_tsv,
    read_annotations_jsonl,
    score_segments,
    write_annotations_jsonl,
)
from .prompts import PromptFormat, render
from .reports import (
    hint_sweep_report,
    preference_split_report,
    read_lines,
    write_report_json,
)
from .bleu import corpus_bleu
from .tokenizers import TokenizerKind, for_direction


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _config_defaults(argv: Sequence[str]) -> dict[str, str]:
    """Read ``key=value`` lines from a ``--config`` file, if given."""
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    if path is None:
        return {}
    defaults = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path} line {line_no}: expected key=value")
        key, value = line.split("=", 1)
        defaults[key.strip().replace("-", "_")] = value.strip()
    return defaults


def _apply_config(args: argparse.Namespace, argv: Sequence[str], defaults: dict[str, str]) -> None:
    """Fill namespace attributes from config values; explicit flags win."""
    given = set()
    for arg in argv:
        if arg.startswith("--"):
            given.add(arg[2:].split("=", 1)[0].replace("-", "_"))
    for key, value in defaults.items():
        if key in given or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, value.lower() in ("1", "true", "yes", "on"))
        elif isinstance(current, int):
            setattr(args, key, int(value))
        elif isinstance(current, float):
            setattr(args, key, float(value))
        else:
            setattr(args, key, value)


def _manifest_config(args: argparse.Namespace) -> dict:
    config = {}
    for key, value in sorted(vars(args).items()):
        if key in ("func", "config"):
            continue
        if isinstance(value, (str, int, float, bool)) or value is None:
            config[key] = value
        elif isinstance(value, (list, tuple)):
            config[key] = [str(v) for v in value]
        else:
            config[key] = str(value)
    return config


def _write_manifest(args: argparse.Namespace, out_path: str | Path, inputs: dict, counts: dict) -> None:
    write_manifest(
        out_path,
        command=["mtinstruct", *sys.argv[1:]] if sys.argv[0] else list(sys.argv),
        config=_manifest_config(args),
        inputs=inputs,
        seed=getattr(args, "seed", None),
        counts=counts,
    )


def _pool_from_arg(value: str) -> InstructionPool:
    if value == "default":
        return InstructionPool.default()
    return InstructionPool.from_file(value)


def _tokenizer_from_args(args: argparse.Namespace, direction: Direction) -> TokenizerKind:
    if args.tokenizer == "auto":
        return for_direction(direction)
    return TokenizerKind.parse(args.tokenizer)


def _parse_kv_list(items: Sequence[str], flag: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in items:
        if "=" not in item:
            raise ValidationError(f"{flag} expects NAME=FILE, got {item!r}")
        name, path = item.split("=", 1)
        if name in out:
            raise ValidationError(f"{flag}: duplicate name {name!r}")
        out[name] = path
    return out


# ---------------------------------------------------------------- commands


def cmd_ingest_parallel(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    pairs = load_parallel(args.src, args.tgt, direction, origin=args.origin)
    n = write_pairs_jsonl(args.out, pairs)
    _write_manifest(args, args.out, {"src": args.src, "tgt": args.tgt}, {"pairs": n})
    print(f"wrote {n} sentence pairs to {args.out}")
    return 0


def cmd_ingest_mqm(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    annotations = parse_mqm_tsv(args.tsv, direction)
    n = write_annotations_jsonl(args.out, annotations)
    _write_manifest(args, args.out, {"tsv": args.tsv}, {"annotations": n})
    print(f"wrote {n} annotations to {args.out}")
    if args.scores_out:
        scores = score_segments(annotations)
        texts = dedupe_targets(annotations)
        scored = [
            ScoredTranslation(
                segment_id=s.segment_id,
                system=s.system,
                text=texts[(s.segment_id, s.system)],
                score=s.score,
                source=ScoreSource.HUMAN,
            )
            for s in scores
        ]
        m = write_scores_jsonl(args.scores_out, scored)
        _write_manifest(args, args.scores_out, {"tsv": args.tsv}, {"scores": m})
        print(f"wrote {m} segment penalties to {args.scores_out}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    pairs = read_pairs_jsonl(args.pairs)
    translations = load_system_translations(args.systems)
    by_id = {p.id: p for p in pairs}
    items = []
    for st in translations:
        if st.segment_id not in by_id:
            raise ValidationError(f"{args.systems}: unknown segment {st.segment_id!r}")
        pair = by_id[st.segment_id]
        item = {
            "id": f"{st.segment_id}␟{st.system}",
            "source": pair.source,
            "hypothesis": st.text,
        }
        if not args.no_reference:
            item["reference"] = pair.target
        items.append(item)

    if args.scores_from:
        raw = {obj["id"]: obj for obj in read_jsonl(args.scores_from)}
        inputs = {"pairs": args.pairs, "systems": args.systems, "scores_from": args.scores_from}
    elif args.endpoint:
        url = args.endpoint.rstrip("/")
        if not url.endswith("/score"):
            url = url + "/score"
        try:
            resp = requests.post(
                url,
                json={"items": items, "model": args.model} if args.model else {"items": items},
                timeout=args.timeout,
            )
        except requests.RequestException as exc:
            raise EndpointError(f"scoring endpoint unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise EndpointError(f"scoring endpoint error ({resp.status_code}): {resp.text[:300]}")
        body = resp.json()
        raw = {entry["id"]: entry for entry in body.get("items", [])}
        inputs = {"pairs": args.pairs, "systems": args.systems}
    else:
        raise ValidationError("score needs either --endpoint or --scores-from")

    scored = []
    for st in translations:
        key = f"{st.segment_id}␟{st.system}"
        entry = raw.get(key)
        if entry is None:
            raise ValidationError(f"no score returned for {st.segment_id}/{st.system}")
        if "score" not in entry:
            raise EndpointError(
                f"scoring failed for {st.segment_id}/{st.system}: {entry.get('error', 'no score')}"
            )
        scored.append(
            ScoredTranslation(
                segment_id=st.segment_id,
                system=st.system,
                text=st.text,
                score=float(entry["score"]),
                source=ScoreSource.AUTOMATIC,
            )
        )
    n = write_scores_jsonl(args.out, scored)
    _write_manifest(args, args.out, inputs, {"scores": n})
    print(f"wrote {n} scores to {args.out}")
    return 0


def cmd_bucket(args: argparse.Namespace) -> int:
    scored = read_scores_jsonl(args.scores)
    leveled = assign_levels(scored)
    levels = {(st.segment_id, st.system): level for st, level in leveled}
    n = write_scores_jsonl(args.out, scored, levels=levels)
    counts: dict[str, int] = {}
    for _, level in leveled:
        counts[level.value] = counts.get(level.value, 0) + 1
    _write_manifest(args, args.out, {"scores": args.scores}, counts)
    print(f"wrote {n} bucketed scores to {args.out}")
    return 0


def cmd_build_translation(args: argparse.Namespace) -> int:
    pairs = read_pairs_jsonl(args.pairs)
    pool = _pool_from_arg(args.pool)
    examples = build_translation(pairs, pool, args.seed)
    n = write_examples_jsonl(args.out, examples)
    _write_manifest(args, args.out, {"pairs": args.pairs}, count_kinds(examples))
    print(f"wrote {n} translation examples to {args.out}")
    return 0


def cmd_build_contrastive(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    scored = read_scores_jsonl(args.scores)
    pairs = read_pairs_jsonl(args.pairs)
    sources = {p.id: p.source for p in pairs}
    contrastive = make_pairs(
        scored,
        seed=args.seed,
        min_gap=args.min_gap,
        max_per_segment=args.max_per_segment,
    )
    pool = _pool_from_arg(args.pool)
    examples = build_contrastive(
        contrastive, pool, HintTemplate(), args.seed, sources=sources, direction=direction
    )
    n = write_examples_jsonl(args.out, examples)
    _write_manifest(
        args, args.out, {"scores": args.scores, "pairs": args.pairs}, count_kinds(examples)
    )
    print(f"wrote {n} contrastive examples to {args.out}")
    return 0


def cmd_build_error_guided(args: argparse.Namespace) -> int:
    pool = _pool_from_arg(args.pool)
    hints = HintTemplate()
    if args.annotations:
        annotations = read_annotations_jsonl(args.annotations)
        examples = build_error_guided_from_annotations(annotations, pool, hints, args.seed)
        inputs = {"annotations": args.annotations}
    else:
        if not args.scores or not args.pairs or not args.direction:
            raise ValidationError(
                "error-guided from scores needs --scores, --pairs and --direction"
            )
        direction = Direction.parse(args.direction)
        scored = read_scores_jsonl(args.scores)
        leveled = assign_levels(scored)
        pairs = read_pairs_jsonl(args.pairs)
        sources = {p.id: p.source for p in pairs}
        examples = build_error_guided_from_levels(
            leveled, pool, hints, args.seed, sources=sources, direction=direction
        )
        inputs = {"scores": args.scores, "pairs": args.pairs}
    n = write_examples_jsonl(args.out, examples)
    _write_manifest(args, args.out, inputs, count_kinds(examples))
    print(f"wrote {n} error-guided examples to {args.out}")
    return 0


def cmd_mix(args: argparse.Namespace) -> int:
    parts = []
    inputs = {}
    for i, spec_item in enumerate(args.part):
        path, _, weight_text = spec_item.rpartition(":")
        if not path:
            path, weight_text = spec_item, "1"
        try:
            weight = float(weight_text)
        except ValueError:
            path, weight = spec_item, 1.0
        parts.append((read_examples_jsonl(path), weight))
        inputs[f"part{i}"] = path
    mixed = mix_dataset(parts, args.seed)
    n = write_examples_jsonl(args.out, mixed)
    _write_manifest(args, args.out, inputs, count_kinds(mixed))
    print(f"wrote {n} mixed examples to {args.out}")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    examples = read_examples_jsonl(args.dataset)
    fmt = PromptFormat.parse(args.format)
    records = []
    for ex in examples:
        rendered = render(ex, fmt, mode=args.mode)
        records.append(rendered.to_dict())
    with open(args.out, "w", encoding="utf-8") as f:
        for rec in records:
            json.dump(rec, f, ensure_ascii=False)
            f.write("\n")
    _write_manifest(args, args.out, {"dataset": args.dataset}, {"prompts": len(records)})
    print(f"wrote {len(records)} prompts to {args.out}")
    return 0


def _progress(label: str):
    def report(done: int, total: int) -> None:
        print(f"{label}: {done}/{total}", file=sys.stderr)

    return report


def cmd_infer(args: argparse.Namespace) -> int:
    examples = read_examples_jsonl(args.dataset)
    job = InferenceJob(
        examples=examples,
        endpoint=args.endpoint,
        model=args.model,
        decode=DecodeConfig.parse(args.decode),
        fmt=PromptFormat.parse(args.format),
        hint_condition=None,
        max_in_flight=args.max_in_flight,
        retries=args.retries,
        timeout=args.timeout,
        strict_beam=args.strict_beam,
    )
    if args.sweep:
        conditions = [c.strip() for c in args.sweep.split(",") if c.strip()]
        out_dir = Path(args.out_dir or "sweep")
        if args.no_resume:
            for condition in conditions:
                journal = out_dir / f"{condition}.journal.jsonl"
                journal.unlink(missing_ok=True)
        outputs = hint_matrix(
            job,
            conditions,
            out_dir,
            progress=(lambda c, done, total: print(f"{c}: {done}/{total}", file=sys.stderr)),
        )
        for condition, paths in outputs.items():
            _write_manifest(
                args,
                paths["translations"],
                {"dataset": args.dataset},
                {"segments": len(examples)},
            )
            print(f"{condition}: {paths['translations']}")
        return 0
    if args.hint:
        job = InferenceJob(
            examples=examples,
            endpoint=args.endpoint,
            model=args.model,
            decode=job.decode,
            fmt=job.fmt,
            hint_condition=args.hint,
            max_in_flight=args.max_in_flight,
            retries=args.retries,
            timeout=args.timeout,
            strict_beam=args.strict_beam,
        )
    if not args.out:
        raise ValidationError("infer needs --out (or --sweep with --out-dir)")
    journal_path = Path(args.journal or (str(args.out) + ".journal.jsonl"))
    if args.no_resume:
        journal_path.unlink(missing_ok=True)
    results = run_job(job, journal_path, progress=_progress("infer"))
    write_translations(args.out, results)
    responses_path = args.responses_out or (str(args.out) + ".responses.jsonl")
    write_responses_jsonl(responses_path, results)
    failed = sum(1 for r in results if not r.ok)
    _write_manifest(
        args,
        args.out,
        {"dataset": args.dataset},
        {"segments": len(results), "failed": failed},
    )
    print(f"wrote {len(results)} translations to {args.out} ({failed} failed)")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    kind = _tokenizer_from_args(args, direction)
    hyp = read_lines(args.hyp)
    ref = read_lines(args.ref)
    result = corpus_bleu(hyp, ref, kind, smoothing=args.smoothing)
    payload = {
        "bleu": result.to_dict(),
        "tokenizer": kind.value,
        "direction": direction.pair,
        "n": len(hyp),
    }
    text = json.dumps(payload, ensure_ascii=False, indent=2)
    print(text)
    if args.json:
        Path(args.json).write_text(text + "\n", encoding="utf-8")
        _write_manifest(args, args.json, {"hyp": args.hyp, "ref": args.ref}, {"segments": len(hyp)})
    return 0


def cmd_report_hint_sweep(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    runs = _parse_kv_list(args.run, "--run")
    quality = _parse_kv_list(args.quality, "--quality") if args.quality else None
    kind = _tokenizer_from_args(args, direction)
    report = hint_sweep_report(runs, args.ref, direction, quality=quality, kind=kind)
    print(report.to_markdown())
    if args.out_json:
        write_report_json(args.out_json, report)
        inputs = {"ref": args.ref, **{f"run_{k}": v for k, v in runs.items()}}
        _write_manifest(args, args.out_json, inputs, {"rows": len(report.rows)})
    if args.out_md:
        Path(args.out_md).write_text(report.to_markdown(), encoding="utf-8")
    return 0


def _load_responses(path: str | Path) -> list[str]:
    """Accept either inference responses JSONL or a plain one-per-line file."""
    out = []
    for line in read_lines(path):
        if not line.strip():
            out.append("")
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            out.append(line)
            continue
        if isinstance(obj, dict) and "response" in obj:
            out.append(obj.get("response") or "")
        else:
            out.append(line)
    return out


def cmd_report_preference(args: argparse.Namespace) -> int:
    direction = Direction.parse(args.direction)
    kind = _tokenizer_from_args(args, direction)
    responses = _load_responses(args.responses)
    references = read_lines(args.ref)
    report = preference_split_report(responses, references, direction, kind=kind)
    print(report.to_markdown())
    if args.out_json:
        write_report_json(args.out_json, report)
        _write_manifest(
            args,
            args.out_json,
            {"responses": args.responses, "ref": args.ref},
            {"segments": report.n_total},
        )
    if args.out_md:
        Path(args.out_md).write_text(report.to_markdown(), encoding="utf-8")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="mtinstruct", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seed: bool = False) -> None:
        p.add_argument("--config", help="key=value defaults file; explicit flags win")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    p = sub.add_parser("ingest-parallel", help="align two one-sentence-per-line files")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--direction", required=True, help="language pair, e.g. de-en")
    p.add_argument("--origin", default=None, help="corpus name for ids (default: src stem)")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_ingest_parallel)

    p = sub.add_parser("ingest-mqm", help="parse an error-annotation TSV export")
    p.add_argument("--tsv", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scores-out", default=None, help="also write per-segment penalties")
    common(p)
    p.set_defaults(func=cmd_ingest_mqm)

    p = sub.add_parser("score", help="score system outputs via a quality endpoint")
    p.add_argument("--pairs", required=True, help="sentence pairs JSONL (for sources/references)")
    p.add_argument("--systems", required=True, help="segment_id<TAB>system<TAB>text file")
    p.add_argument("--endpoint", default=None, help="quality service base URL")
    p.add_argument("--scores-from", default=None, help="offline scores JSONL instead of endpoint")
    p.add_argument("--model", default=None)
    p.add_argument("--no-reference", action="store_true", help="score without references")
    p.add_argument("--timeout", type=float, default=120.0)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("bucket", help="assign error levels to automatic scores")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_bucket)

    build = sub.add_parser("build", help="construct instruction examples")
    build_sub = build.add_subparsers(dest="build_kind", required=True)

    p = build_sub.add_parser("translation", help="plain translation examples")
    p.add_argument("--pairs", required=True)
    p.add_argument("--pool", default="default", help="'default' or a template file")
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_build_translation)

    p = build_sub.add_parser("contrastive", help="preference examples from scored outputs")
    p.add_argument("--scores", required=True)
    p.add_argument("--pairs", required=True, help="sentence pairs JSONL for source text")
    p.add_argument("--direction", required=True)
    p.add_argument("--pool", default="default")
    p.add_argument("--min-gap", type=float, default=None, help="minimum score gap (default: 1.0 automatic, 0.0 human)")
    p.add_argument("--max-per-segment", type=int, default=1)
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_build_contrastive)

    p = build_sub.add_parser("error-guided", help="hint-annotated examples")
    p.add_argument("--annotations", default=None, help="annotations JSONL (span-level)")
    p.add_argument("--scores", default=None, help="scores JSONL (level hints via bucketing)")
    p.add_argument("--pairs", default=None)
    p.add_argument("--direction", default=None)
    p.add_argument("--pool", default="default")
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_build_error_guided)

    p = sub.add_parser("mix", help="combine datasets with weights and shuffle")
    p.add_argument("--part", action="append", required=True, metavar="FILE[:WEIGHT]")
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("render", help="render examples into prompt JSONL")
    p.add_argument("--dataset", required=True)
    p.add_argument("--format", default="with_input", choices=["with_input", "no_input"])
    p.add_argument("--mode", default="train", choices=["train", "infer"])
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("infer", help="decode a dataset against a completions endpoint")
    p.add_argument("--dataset", required=True)
    p.add_argument("--endpoint", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--decode", default="beam:4", help="beam:N or sample:T (default beam:4)")
    p.add_argument("--format", default="with_input", choices=["with_input", "no_input"])
    p.add_argument("--hint", default=None, choices=list(HINT_CONDITIONS))
    p.add_argument("--sweep", default=None, help="comma-separated hint conditions")
    p.add_argument("--out", default=None, help="translations file (single run)")
    p.add_argument("--out-dir", default=None, help="output directory (sweep)")
    p.add_argument("--responses-out", default=None)
    p.add_argument("--journal", default=None)
    p.add_argument("--no-resume", action="store_true", help="ignore an existing journal")
    p.add_argument("--max-in-flight", type=int, default=4)
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--strict-beam", action="store_true")
    common(p)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("eval", help="corpus BLEU of a hypothesis file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--tokenizer", default="auto", choices=["auto", "13a", "zh"])
    p.add_argument("--smoothing", default="none", choices=["none", "exp"])
    p.add_argument("--json", default=None, help="also write the JSON payload to a file")
    common(p)
    p.set_defaults(func=cmd_eval)

    report = sub.add_parser("report", help="analysis reports")
    report_sub = report.add_subparsers(dest="report_kind", required=True)

    p = report_sub.add_parser("hint-sweep", help="BLEU per hint condition")
    p.add_argument("--run", action="append", required=True, metavar="CONDITION=FILE")
    p.add_argument("--ref", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--quality", action="append", default=None, metavar="CONDITION=FILE")
    p.add_argument("--tokenizer", default="auto", choices=["auto", "13a", "zh"])
    p.add_argument("--out-json", default=None)
    p.add_argument("--out-md", default=None)
    common(p)
    p.set_defaults(func=cmd_report_hint_sweep)

    p = report_sub.add_parser("preference", help="BLEU of preferred vs rejected sides")
    p.add_argument("--responses", required=True, help="responses JSONL or plain text file")
    p.add_argument("--ref", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--tokenizer", default="auto", choices=["auto", "13a", "zh"])
    p.add_argument("--out-json", default=None)
    p.add_argument("--out-md", default=None)
    common(p)
    p.set_defaults(func=cmd_report_preference)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _config_defaults(argv)
        args = parser.parse_args(argv)
        _apply_config(args, argv, defaults)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EndpointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
