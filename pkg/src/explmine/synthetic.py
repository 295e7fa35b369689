"""Synthetic corpus generator with planted explanation candidates.

Plants ideal candidates (rare aligned anchor, unaligned punctuated span,
gazetteer entity, source-only title) among distractor pairs that each
violate exactly one cascade condition, plus common-word filler pairs. Emits
the corpus, alignments, count tables, title indexes, a run config, and a
gold record per planted pair so recall and per-class rejection reasons are
exactly checkable.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass

from .config import PipelineConfig, save_config
from .corpus import SentencePair, write_corpus
from .vocab import VocabCounts, save_counts
from .wiki import WikiIndex, save_wiki_index
from .stemming import stem_phrase

KIND_POSITIVE = "positive"
DISTRACTOR_KINDS = (
    "common_anchor",
    "no_punct",
    "aligned_span",
    "short_span",
    "anchor_only",
    "not_entity",
    "no_src_title",
    "tgt_covers",
)

# expected fate per distractor class: (stage, drop reason)
EXPECTED_REJECTION = {
    "common_anchor": ("rarity", "no_anchor"),
    "no_punct": ("span", "no_punct"),
    "aligned_span": ("span", "span_aligned"),
    "short_span": ("span", "span_too_short"),
    "anchor_only": ("span", "no_other_content"),
    "not_entity": ("ner", "no_covering_entity"),
    "no_src_title": ("wiki", "no_src_title"),
    "tgt_covers": ("wiki", "tgt_covers"),
}

COMMON_COUNT = 100_000
SRC_ARTICLE_SIZE = 40_000
SMALL_SRC_ARTICLE_SIZE = 5_000
COVERING_TGT_ARTICLE_SIZE = 9_000


@dataclass
class SyntheticConfig:
    pairs: int = 10_000
    planted: int = 50
    per_distractor: int = 30
    seed: int = 7
    src_lang: str = "en"
    tgt_lang: str = "de"
    src_threshold: int = 5000
    tgt_threshold: int = 5000
    min_span: int = 3


@dataclass
class GoldRecord:
    pair_id: int
    kind: str
    k: int | None
    m: int | None
    span_len: int | None
    expected_stage: str | None  # stage at which a distractor dies; None for positives
    expected_reason: str | None
    wiki_decision: str | None  # expected decision for positives
    ne_start: int | None = None  # planted entity token range on the source side
    ne_end: int | None = None

    def to_obj(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "kind": self.kind,
            "k": self.k,
            "m": self.m,
            "span_len": self.span_len,
            "expected_stage": self.expected_stage,
            "expected_reason": self.expected_reason,
            "wiki_decision": self.wiki_decision,
            "ne_start": self.ne_start,
            "ne_end": self.ne_end,
        }


@dataclass
class _Draft:
    kind: str
    src: list[str]
    tgt: list[str]
    links: list[tuple[int, int]]
    k: int | None = None
    m: int | None = None
    span_len: int | None = None
    wiki_decision: str | None = None
    entity_len: int | None = None


def _choices(rng: random.Random, vocab: list[str], n: int) -> list[str]:
    return [vocab[rng.randrange(len(vocab))] for _ in range(n)]


def _planted_pair(
    rng: random.Random,
    src_commons: list[str],
    tgt_commons: list[str],
    ent_src: list[str],
    ent_tgt: list[str],
    span: list[str],
    align_span_token: bool = False,
) -> tuple[list[str], list[str], list[tuple[int, int]], int, int]:
    pre = rng.randint(0, 3)
    post = rng.randint(1, 3)
    e = len(ent_src)
    n = len(span)
    src = _choices(rng, src_commons, pre) + ent_src + _choices(rng, src_commons, 1 + post)
    tgt = _choices(rng, tgt_commons, pre) + ent_tgt + span + _choices(rng, tgt_commons, 1 + post)
    links = [(i, i) for i in range(pre + e)]
    links.append((pre + e, pre + e + n))  # token after the anchor, beyond the span
    links += [(pre + e + 1 + i, pre + e + n + 1 + i) for i in range(post)]
    if align_span_token:
        links.append((pre + e + 1, pre + e + 1))  # post-side token also hits a span slot
    k = m = pre + e - 1
    return src, tgt, links, k, m


def generate(cfg: SyntheticConfig, out_dir: str) -> list[GoldRecord]:
    total_planted = cfg.planted + len(DISTRACTOR_KINDS) * cfg.per_distractor
    if cfg.pairs < total_planted:
        raise ValueError(f"pairs={cfg.pairs} too small for {total_planted} planted pairs")
    rng = random.Random(cfg.seed)

    src_commons = [f"src{i:03d}" for i in range(200)]
    tgt_commons = [f"tgt{i:03d}" for i in range(200)]
    fillers = [f"fw{i}x" for i in range(60)]

    src_index = WikiIndex(lang=cfg.src_lang)
    tgt_index = WikiIndex(lang=cfg.tgt_lang)
    gazetteer = WikiIndex(lang=cfg.src_lang)
    ptitles_rows: list[tuple[str, str]] = []

    def register(index: WikiIndex, raw_title: str, size: int) -> None:
        stemmed = stem_phrase(raw_title.split(), index.lang)
        index.titles[stemmed] = size
        index.raw_titles.setdefault(stemmed, raw_title)

    def punct_span(body: list[str]) -> list[str]:
        shape = rng.randrange(3)
        if shape == 0:
            return [","] + body
        if shape == 1:
            return [","] + body + [","]
        return ["("] + body + [")"]

    drafts: list[_Draft] = []

    for i in range(cfg.planted):
        two_token = rng.random() < 0.4
        ent_src = [f"Pe{i}x", f"Py{i}q"] if two_token else [f"Pe{i}x"]
        ent_tgt = [f"Dk{i}w", f"Dz{i}m"] if two_token else [f"Dk{i}w"]
        raw_title = " ".join(ent_src)
        register(src_index, raw_title, SRC_ARTICLE_SIZE)
        register(gazetteer, raw_title, SRC_ARTICLE_SIZE)
        if i % 2 == 0:
            # counterpart resolved through the parallel-title map; absent target-side
            ptitles_rows.append((raw_title, f"Pu{i}w"))
        span = punct_span(rng.sample(fillers, rng.randint(2, 3)))
        src, tgt, links, k, m = _planted_pair(
            rng, src_commons, tgt_commons, ent_src, ent_tgt, span
        )
        drafts.append(
            _Draft(KIND_POSITIVE, src, tgt, links, k, m, span_len=len(span),
                   wiki_decision="SRC_ONLY", entity_len=len(ent_src))
        )
        assert len(span) >= cfg.min_span

    for d_index, kind in enumerate(DISTRACTOR_KINDS):
        for i in range(cfg.per_distractor):
            tag = f"{d_index}{i}"
            if kind == "common_anchor":
                ent_src = [src_commons[rng.randrange(len(src_commons))]]
                ent_tgt = [tgt_commons[rng.randrange(len(tgt_commons))]]
            else:
                prefix = {"no_punct": "Np", "aligned_span": "As", "short_span": "Ss",
                          "anchor_only": "Ao", "not_entity": "Gh", "no_src_title": "Ns",
                          "tgt_covers": "Tc"}[kind]
                ent_src = [f"{prefix}{tag}v"]
                ent_tgt = [f"Xq{prefix.lower()}{tag}w"]
                raw_title = ent_src[0]
                if kind in ("no_punct", "aligned_span", "short_span", "anchor_only"):
                    register(src_index, raw_title, SRC_ARTICLE_SIZE)
                    register(gazetteer, raw_title, SRC_ARTICLE_SIZE)
                elif kind == "no_src_title":
                    register(gazetteer, raw_title, 1)
                elif kind == "tgt_covers":
                    register(src_index, raw_title, SMALL_SRC_ARTICLE_SIZE)
                    register(gazetteer, raw_title, SMALL_SRC_ARTICLE_SIZE)
                    covering = f"Tz{tag}w"
                    register(tgt_index, covering, COVERING_TGT_ARTICLE_SIZE)
                    ptitles_rows.append((raw_title, covering))

            if kind == "no_punct":
                span = rng.sample(fillers, 3)
            elif kind == "short_span":
                span = [","] + rng.sample(fillers, 1)
            elif kind == "anchor_only":
                span = [",", ent_tgt[0], ","]
            else:
                span = punct_span(rng.sample(fillers, rng.randint(2, 3)))
            src, tgt, links, k, m = _planted_pair(
                rng, src_commons, tgt_commons, ent_src, ent_tgt, span,
                align_span_token=(kind == "aligned_span"),
            )
            draft = _Draft(kind, src, tgt, links, k, m, span_len=len(span),
                           entity_len=len(ent_src))
            if kind == "common_anchor":
                draft.k = draft.m = draft.span_len = draft.entity_len = None
            drafts.append(draft)

    for _ in range(cfg.pairs - total_planted):
        length = rng.randint(4, 12)
        src = _choices(rng, src_commons, length)
        tgt = _choices(rng, tgt_commons, length)
        links = [(i, i) for i in range(length)]
        if rng.random() < 0.3:
            tgt = tgt + [","]  # unaligned trailing punctuation for texture
        drafts.append(_Draft("filler", src, tgt, links))

    rng.shuffle(drafts)

    os.makedirs(out_dir, exist_ok=True)
    pairs = [
        SentencePair(
            id=i, src_tokens=tuple(d.src), tgt_tokens=tuple(d.tgt),
            alignment=frozenset(d.links),
        )
        for i, d in enumerate(drafts)
    ]
    write_corpus(
        pairs,
        os.path.join(out_dir, "corpus.src"),
        os.path.join(out_dir, "corpus.tgt"),
        os.path.join(out_dir, "corpus.align"),
    )

    save_counts(
        VocabCounts(cfg.src_lang, {w: COMMON_COUNT for w in src_commons},
                    COMMON_COUNT * len(src_commons)),
        os.path.join(out_dir, "counts.src.tsv"),
    )
    save_counts(
        VocabCounts(cfg.tgt_lang, {w: COMMON_COUNT for w in tgt_commons},
                    COMMON_COUNT * len(tgt_commons)),
        os.path.join(out_dir, "counts.tgt.tsv"),
    )

    register(src_index, "Unusedsrcnoise", 1234)
    register(tgt_index, "Unusedtgtnoise", 4321)
    save_wiki_index(src_index, os.path.join(out_dir, "wiki.src.tsv"))
    save_wiki_index(tgt_index, os.path.join(out_dir, "wiki.tgt.tsv"))
    save_wiki_index(gazetteer, os.path.join(out_dir, "gazetteer.tsv"))
    with open(os.path.join(out_dir, "ptitles.tsv"), "w", encoding="utf-8") as f:
        for src_title, tgt_title in sorted(ptitles_rows):
            f.write(f"{src_title}\t{tgt_title}\n")

    run_cfg = PipelineConfig(
        src_corpus="corpus.src",
        tgt_corpus="corpus.tgt",
        alignments="corpus.align",
        src_counts="counts.src.tsv",
        tgt_counts="counts.tgt.tsv",
        src_wiki_index="wiki.src.tsv",
        tgt_wiki_index="wiki.tgt.tsv",
        parallel_titles="ptitles.tsv",
        ner_source="gazetteer",
        gazetteer_titles="gazetteer.tsv",
        src_lang=cfg.src_lang,
        tgt_lang=cfg.tgt_lang,
        src_threshold=cfg.src_threshold,
        tgt_threshold=cfg.tgt_threshold,
        min_span=cfg.min_span,
        output_dir="out",
    )
    save_config(run_cfg, os.path.join(out_dir, "config.txt"))

    gold: list[GoldRecord] = []
    for pair_id, d in enumerate(drafts):
        if d.kind == "filler":
            continue
        stage, reason = (None, None)
        if d.kind != KIND_POSITIVE:
            stage, reason = EXPECTED_REJECTION[d.kind]
        ne_start = d.k - d.entity_len + 1 if d.entity_len is not None else None
        ne_end = d.k + 1 if d.entity_len is not None else None
        gold.append(
            GoldRecord(
                pair_id=pair_id, kind=d.kind, k=d.k, m=d.m, span_len=d.span_len,
                expected_stage=stage, expected_reason=reason,
                wiki_decision=d.wiki_decision, ne_start=ne_start, ne_end=ne_end,
            )
        )
    with open(os.path.join(out_dir, "gold.jsonl"), "w", encoding="utf-8") as f:
        for record in gold:
            f.write(json.dumps(record.to_obj(), ensure_ascii=False, separators=(",", ":")) + "\n")
    return gold


def load_gold(path: str) -> list[GoldRecord]:
    records = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            records.append(GoldRecord(**obj))
    return records
