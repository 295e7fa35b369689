"""Runs the four-stage cascade and writes stage exports plus a report.

Stage order: rarity gate -> span detection -> NER gate -> Wikipedia gate.
Every stage only removes candidates; the run asserts that monotonicity and
fails loudly if it ever breaks. All outputs are deterministic for identical
inputs and configuration; wall-clock timings go to the log only.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field

from . import ner, spans, vocab, wiki
from .config import NER_SOURCE_FILE, PipelineConfig
from .corpus import LoadStats, SentencePair, load_alignments, load_parallel_corpus
from .records import CandidateRecord, export_candidates
from .spans import Candidate, STAGE_NER, STAGE_SPAN, STAGE_WIKI
from .vocab import RarityConfig

log = logging.getLogger(__name__)

STAGE_FILES = {
    STAGE_SPAN: "candidates_span.jsonl",
    STAGE_NER: "candidates_ner.jsonl",
    STAGE_WIKI: "candidates_wiki.jsonl",
}
REPORT_JSON = "report.json"
REPORT_TXT = "report.txt"
DROPS_FILE = "drops.jsonl"


@dataclass
class StageStats:
    name: str
    pairs_in: int = 0
    pairs_out: int = 0
    candidates_out: int = 0
    drops: dict[str, int] = field(default_factory=dict)

    def add_drop(self, reason: str) -> None:
        self.drops[reason] = self.drops.get(reason, 0) + 1


@dataclass
class RunResult:
    stages: list[StageStats]
    config: PipelineConfig
    skipped_empty: int
    candidates: dict[str, list[CandidateRecord]]
    drop_records: list[dict]
    output_dir: str
    elapsed_seconds: float

    def stage(self, name: str) -> StageStats:
        return next(s for s in self.stages if s.name == name)


def _report_obj(result: RunResult) -> dict:
    return {
        "config": result.config.to_dict(),
        "skipped_empty_pairs": result.skipped_empty,
        "stages": [
            {
                "name": s.name,
                "pairs_in": s.pairs_in,
                "pairs_out": s.pairs_out,
                "candidates_out": s.candidates_out,
                "drops": {k: s.drops[k] for k in sorted(s.drops)},
            }
            for s in result.stages
        ],
    }


def format_report(result: RunResult) -> str:
    lines = [f"{'stage':<8} {'pairs_in':>9} {'pairs_out':>9} {'candidates':>11}"]
    for s in result.stages:
        lines.append(f"{s.name:<8} {s.pairs_in:>9} {s.pairs_out:>9} {s.candidates_out:>11}")
        for reason in sorted(s.drops):
            lines.append(f"  dropped[{reason}] = {s.drops[reason]}")
    lines.append(f"skipped empty pairs: {result.skipped_empty}")
    return "\n".join(lines) + "\n"


def _check_monotone(result_candidates: dict[str, list[CandidateRecord]]) -> None:
    span_ids = {r.candidate.identity for r in result_candidates[STAGE_SPAN]}
    ner_ids = {r.candidate.identity for r in result_candidates[STAGE_NER]}
    wiki_ids = {r.candidate.identity for r in result_candidates[STAGE_WIKI]}
    if not (wiki_ids <= ner_ids <= span_ids):
        raise AssertionError("cascade monotonicity violated: WIKI <= NER <= SPAN must hold")


def run_pipeline(cfg: PipelineConfig) -> RunResult:
    cfg.validate()
    started = time.perf_counter()

    src_counts = vocab.load_counts(cfg.src_counts)
    tgt_counts = vocab.load_counts(cfg.tgt_counts)
    rarity = RarityConfig(cfg.src_threshold, cfg.tgt_threshold)
    src_index = wiki.load_wiki_index(cfg.src_wiki_index, cfg.src_lang)
    tgt_index = wiki.load_wiki_index(cfg.tgt_wiki_index, cfg.tgt_lang)
    if cfg.parallel_titles:
        ptitles = wiki.load_parallel_titles(
            cfg.parallel_titles, cfg.src_lang, cfg.tgt_lang, src_index
        )
    else:
        ptitles = wiki.ParallelTitles()
    gazetteer_index = src_index
    if cfg.gazetteer_titles:
        gazetteer_index = wiki.load_wiki_index(cfg.gazetteer_titles, cfg.src_lang)

    ner_map: ner.NerMap | None = None
    if cfg.ner_source == NER_SOURCE_FILE:
        ner_map = ner.load_ner(cfg.ner_file)

    stats = LoadStats()
    rarity_stage = StageStats("rarity")
    span_stage = StageStats("span")
    ner_stage = StageStats("ner")
    wiki_stage = StageStats("wiki")
    collected: dict[str, list[CandidateRecord]] = {
        STAGE_SPAN: [],
        STAGE_NER: [],
        STAGE_WIKI: [],
    }
    drop_records: list[dict] = []

    pairs = load_alignments(
        cfg.alignments, load_parallel_corpus(cfg.src_corpus, cfg.tgt_corpus, stats)
    )
    for pair in pairs:
        rarity_stage.pairs_in += 1
        try:
            anchors = vocab.pair_rarity_gate(pair, src_counts, tgt_counts, rarity)
        except Exception as exc:
            raise RuntimeError(f"rarity stage failed on pair {pair.id}: {exc}") from exc
        if not anchors:
            continue
        rarity_stage.pairs_out += 1
        rarity_stage.candidates_out += len(anchors)

        span_stage.pairs_in += 1
        try:
            span_candidates, anchor_drops = spans.detect_with_reasons(
                pair, anchors, cfg.min_span, cfg.tgt_lang
            )
        except Exception as exc:
            raise RuntimeError(f"span stage failed on pair {pair.id}: {exc}") from exc
        for drop in anchor_drops:
            span_stage.add_drop(drop.reason)
            drop_records.append(
                {
                    "pair_id": drop.pair_id,
                    "k": drop.k,
                    "m": drop.m,
                    "span_len": None,
                    "stage": "span",
                    "reason": drop.reason,
                }
            )
        if not span_candidates:
            continue
        span_stage.pairs_out += 1
        span_stage.candidates_out += len(span_candidates)
        for cand in span_candidates:
            collected[STAGE_SPAN].append(
                CandidateRecord(cand, pair.src_tokens, pair.tgt_tokens)
            )

        ner_stage.pairs_in += 1
        if ner_map is not None:
            annotation = ner_map.get((pair.id, ner.SIDE_SRC))
            if annotation is not None:
                in_range = [e for e in annotation.entities if e.end <= len(pair.src_tokens)]
                if len(in_range) != len(annotation.entities):
                    log.warning(
                        "pair %d: dropped %d NER entities beyond sentence length",
                        pair.id, len(annotation.entities) - len(in_range),
                    )
                    annotation = ner.NerAnnotation(pair.id, ner.SIDE_SRC, in_range)
        else:
            annotation = ner.gazetteer_ner(pair, gazetteer_index)
        ner_candidates: list[Candidate] = []
        for cand in span_candidates:
            try:
                kept = ner.ner_filter(cand, annotation)
            except Exception as exc:
                raise RuntimeError(f"ner stage failed on pair {pair.id}: {exc}") from exc
            if kept is None:
                ner_stage.add_drop(ner.NER_DROP_REASON)
                drop_records.append(
                    {
                        "pair_id": cand.pair_id,
                        "k": cand.k,
                        "m": cand.m,
                        "span_len": cand.span_len,
                        "stage": "ner",
                        "reason": ner.NER_DROP_REASON,
                    }
                )
            else:
                ner_candidates.append(kept)
        if not ner_candidates:
            continue
        ner_stage.pairs_out += 1
        ner_stage.candidates_out += len(ner_candidates)
        for cand in ner_candidates:
            collected[STAGE_NER].append(
                CandidateRecord(cand, pair.src_tokens, pair.tgt_tokens)
            )

        wiki_stage.pairs_in += 1
        wiki_kept = 0
        for cand in ner_candidates:
            try:
                decision = wiki.wiki_decide(cand, src_index, tgt_index, ptitles, pair)
            except Exception as exc:
                raise RuntimeError(f"wiki stage failed on pair {pair.id}: {exc}") from exc
            if decision in wiki.KEEP_DECISIONS:
                advanced = cand.advanced(STAGE_WIKI, wiki_decision=decision)
                collected[STAGE_WIKI].append(
                    CandidateRecord(advanced, pair.src_tokens, pair.tgt_tokens)
                )
                wiki_kept += 1
            else:
                wiki_stage.add_drop(decision.lower())
                drop_records.append(
                    {
                        "pair_id": cand.pair_id,
                        "k": cand.k,
                        "m": cand.m,
                        "span_len": cand.span_len,
                        "stage": "wiki",
                        "reason": decision.lower(),
                    }
                )
        if wiki_kept:
            wiki_stage.pairs_out += 1
            wiki_stage.candidates_out += wiki_kept

    _check_monotone(collected)

    elapsed = time.perf_counter() - started
    result = RunResult(
        stages=[rarity_stage, span_stage, ner_stage, wiki_stage],
        config=cfg,
        skipped_empty=stats.skipped_empty,
        candidates=collected,
        drop_records=drop_records,
        output_dir=cfg.output_dir,
        elapsed_seconds=elapsed,
    )
    _write_outputs(result)
    log.info(
        "pipeline done in %.2fs (%s backend): %d pairs -> %d wiki candidates",
        elapsed, spans.BACKEND, rarity_stage.pairs_in, wiki_stage.candidates_out,
    )
    return result


def _write_outputs(result: RunResult) -> None:
    out = result.output_dir
    os.makedirs(out, exist_ok=True)
    for stage, filename in STAGE_FILES.items():
        export_candidates(result.candidates[stage], os.path.join(out, filename))
    if result.config.audit_drops:
        with open(os.path.join(out, DROPS_FILE), "w", encoding="utf-8") as f:
            for record in result.drop_records:
                f.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
    with open(os.path.join(out, REPORT_JSON), "w", encoding="utf-8") as f:
        json.dump(_report_obj(result), f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
    with open(os.path.join(out, REPORT_TXT), "w", encoding="utf-8") as f:
        f.write(format_report(result))
