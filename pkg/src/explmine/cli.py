"""Command-line entry points for the mining pipeline and its tooling."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import metrics, pipeline, synthetic, vocab, wiki
from .config import INITIAL_THRESHOLD, load_config
from .records import (
    VERDICT_EXPLANATION,
    effective_labels,
    export_candidates,
    import_candidates,
    load_labels,
)
from .spans import BACKEND, STAGE_LABELED, STAGES

log = logging.getLogger(__name__)


def _cmd_count(args) -> int:
    counts = None
    for path in args.inputs:
        with open(path, encoding="utf-8") as f:
            shard = vocab.count_words(f, args.lang)
        counts = shard if counts is None else vocab.merge_counts(counts, shard)
    if counts is None:
        counts = vocab.VocabCounts(args.lang, {}, 0)
    vocab.save_counts(counts, args.out)
    print(f"counted {counts.total_tokens} tokens, {len(counts.counts)} types -> {args.out}")
    return 0


def _iter_articles(path: str):
    """Yields (title, text) from extractor output: JSONL or <doc> blocks."""
    with open(path, encoding="utf-8") as f:
        first = f.read(1)
        f.seek(0)
        if first == "<":
            title, body = None, []
            for line in f:
                stripped = line.strip()
                if stripped.startswith("<doc"):
                    marker = 'title="'
                    start = stripped.find(marker)
                    if start < 0:
                        raise ValueError(f"{path}: <doc> block without title attribute")
                    end = stripped.index('"', start + len(marker))
                    title, body = stripped[start + len(marker) : end], []
                elif stripped.startswith("</doc>"):
                    if title is not None:
                        yield title, "\n".join(body)
                    title, body = None, []
                elif title is not None:
                    body.append(line.rstrip("\n"))
        else:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                if "title" not in obj or "text" not in obj:
                    raise ValueError(f"{path}:{line_no}: article record needs title and text")
                yield obj["title"], obj["text"]


def _cmd_index_wiki(args) -> int:
    def articles():
        for path in args.inputs:
            yield from _iter_articles(path)

    index = wiki.build_wiki_index(articles(), args.lang)
    wiki.save_wiki_index(index, args.out)
    print(f"indexed {len(index.titles)} titles -> {args.out}")
    return 0


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.preset == "initial":
        cfg.src_threshold = INITIAL_THRESHOLD
        cfg.tgt_threshold = INITIAL_THRESHOLD
    for key in ("src_threshold", "tgt_threshold", "min_span", "output_dir"):
        value = getattr(args, key)
        if value is not None:
            setattr(cfg, key, value)
    result = pipeline.run_pipeline(cfg)
    sys.stdout.write(pipeline.format_report(result))
    print(f"kernel backend: {BACKEND}; elapsed {result.elapsed_seconds:.2f}s")
    print(f"outputs in {result.output_dir}")
    return 0


def _cmd_report(args) -> int:
    report_path = os.path.join(args.run_dir, pipeline.REPORT_JSON)
    with open(report_path, encoding="utf-8") as f:
        report = json.load(f)
    print(f"{'stage':<8} {'pairs_in':>9} {'pairs_out':>9} {'candidates':>11}")
    for s in report["stages"]:
        print(f"{s['name']:<8} {s['pairs_in']:>9} {s['pairs_out']:>9} {s['candidates_out']:>11}")
    if not args.labels:
        return 0

    labels = load_labels(args.labels)
    records = import_candidates(
        os.path.join(args.run_dir, pipeline.STAGE_FILES["WIKI"])
    )
    known = {r.candidate_id for r in records}
    unknown = {l.candidate_id for l in labels if l.candidate_id not in known}
    if unknown:
        log.warning("%d label(s) reference unknown candidates (kept for audit)", len(unknown))
    effective = {cid: l for cid, l in effective_labels(labels).items() if cid in known}
    labeled = len(effective)
    accepted = sum(1 for l in effective.values() if l.verdict == VERDICT_EXPLANATION)
    print(f"labeled: {labeled}/{len(known)}  accepted: {accepted}")
    if labeled:
        print(f"retention: {metrics.retention_percentage(accepted, labeled):.4f}")
    if args.ne_stats:
        cfg = report["config"]
        from .corpus import load_alignments, load_parallel_corpus

        pairs = load_alignments(
            cfg["alignments"], load_parallel_corpus(cfg["src_corpus"], cfg["tgt_corpus"])
        )
        stats = metrics.ne_explanation_stats(labels, records, pairs, cfg["src_lang"])
        out_path = os.path.join(args.run_dir, "ne_stats.jsonl")
        with open(out_path, "w", encoding="utf-8") as f:
            for s in stats:
                f.write(
                    json.dumps(
                        {
                            "phrase": s.phrase,
                            "occurrences": s.occurrences,
                            "explained_count": s.explained_count,
                            "probability": s.probability,
                        },
                        ensure_ascii=False,
                        separators=(",", ":"),
                    )
                    + "\n"
                )
        always = metrics.always_explained(stats)
        print(f"unique explained entities: {len(stats)}; always explained: {len(always)}")
        for s in always:
            print(f"  {s.phrase}: explained {s.explained_count} time(s)")
        print(f"per-entity stats -> {out_path}")
    return 0


def _cmd_export(args) -> int:
    stage = args.stage.upper()
    if stage not in STAGES:
        raise SystemExit(f"unknown stage {args.stage!r}; expected one of {STAGES}")
    if stage == STAGE_LABELED:
        records = import_candidates(os.path.join(args.run_dir, pipeline.STAGE_FILES["WIKI"]))
    else:
        records = import_candidates(os.path.join(args.run_dir, pipeline.STAGE_FILES[stage]))
    if args.labels:
        labels = load_labels(args.labels)
        effective = effective_labels(labels)
        if args.accepted_only:
            records = [
                r
                for r in records
                if effective.get(r.candidate_id) is not None
                and effective[r.candidate_id].verdict == VERDICT_EXPLANATION
            ]
        if stage == STAGE_LABELED:
            from dataclasses import replace

            records = [
                replace(r, candidate=r.candidate.advanced(STAGE_LABELED))
                for r in records
                if r.candidate_id in effective
            ]
    count = export_candidates(records, args.out)
    print(f"exported {count} candidates -> {args.out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app, store_from_run_dir

    store = store_from_run_dir(args.run_dir, args.labels)
    app = create_app(store)
    if args.ui:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _cmd_gen_synthetic(args) -> int:
    cfg = synthetic.SyntheticConfig(
        pairs=args.pairs,
        planted=args.planted,
        per_distractor=args.per_distractor,
        seed=args.seed,
    )
    gold = synthetic.generate(cfg, args.out)
    positives = sum(1 for g in gold if g.kind == synthetic.KIND_POSITIVE)
    print(
        f"wrote {args.pairs} pairs ({positives} positives, "
        f"{len(gold) - positives} distractors) -> {args.out}"
    )
    print(f"run with: explmine run --config {os.path.join(args.out, 'config.txt')}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="explmine",
        description="Find sentence pairs whose translation explains a rare source entity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="build a word-count table from tokenized text")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lang", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("index-wiki", help="build a title-size index from extracted articles")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lang", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_index_wiki)

    p = sub.add_parser("run", help="run the four-stage cascade")
    p.add_argument("--config", required=True)
    p.add_argument("--preset", choices=["initial", "optimal"], default=None)
    p.add_argument("--src-threshold", dest="src_threshold", type=int, default=None)
    p.add_argument("--tgt-threshold", dest="tgt_threshold", type=int, default=None)
    p.add_argument("--min-span", dest="min_span", type=int, default=None)
    p.add_argument("--output-dir", dest="output_dir", default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("report", help="print a run report, optionally with label metrics")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--ne-stats", action="store_true")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("export", help="export stage candidates, optionally filtered by labels")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--stage", default="WIKI")
    p.add_argument("--out", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--accepted-only", action="store_true")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="serve the review API (and optionally the UI)")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--ui", default=None, help="directory with the built review UI")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("gen-synthetic", help="generate a planted-truth synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--pairs", type=int, default=10000)
    p.add_argument("--planted", type=int, default=50)
    p.add_argument("--per-distractor", type=int, default=30)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=_cmd_gen_synthetic)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
