"""Wikipedia gate: keeps candidates whose entity has a source-language
article but no comparable target-language information source.

Title matching runs on stemmed, lowercased phrases; article size is the
UTF-8 byte length of the extracted plain text.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import SentencePair
from .spans import Candidate, STAGE_NER, STAGE_WIKI
from .stemming import stem, stem_phrase

log = logging.getLogger(__name__)

DECISION_NO_SRC_TITLE = "NO_SRC_TITLE"
DECISION_SRC_ONLY = "SRC_ONLY"
DECISION_SRC_LARGER = "SRC_LARGER"
DECISION_TGT_COVERS = "TGT_COVERS"
KEEP_DECISIONS = (DECISION_SRC_ONLY, DECISION_SRC_LARGER)


@dataclass
class WikiIndex:
    lang: str
    titles: dict[str, int] = field(default_factory=dict)
    raw_titles: dict[str, str] = field(default_factory=dict)


@dataclass
class ParallelTitles:
    """Stemmed source-language title -> stemmed target-language title."""

    mapping: dict[str, str] = field(default_factory=dict)


def build_wiki_index(articles: Iterable[tuple[str, str]], lang: str) -> WikiIndex:
    """Indexes (title, text) pairs; duplicate stemmed titles keep the larger size."""
    index = WikiIndex(lang=lang)
    for title, text in articles:
        stemmed = stem_phrase(title.split(), lang)
        size = len(text.encode("utf-8"))
        if stemmed not in index.titles:
            index.titles[stemmed] = size
            index.raw_titles[stemmed] = title
        elif size > index.titles[stemmed]:
            index.titles[stemmed] = size
    return index


def save_wiki_index(index: WikiIndex, path: str) -> None:
    """TSV rows 'stemmed_title\\traw_title\\tsize_bytes', sorted by stemmed title."""
    with open(path, "w", encoding="utf-8") as f:
        for stemmed in sorted(index.titles):
            f.write(f"{stemmed}\t{index.raw_titles[stemmed]}\t{index.titles[stemmed]}\n")


def load_wiki_index(path: str, lang: str) -> WikiIndex:
    index = WikiIndex(lang=lang)
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected 3 tab-separated columns")
            stemmed, raw, size = parts
            index.titles[stemmed] = int(size)
            index.raw_titles.setdefault(stemmed, raw)
    return index


def load_parallel_titles(
    path: str, src_lang: str, tgt_lang: str, src_index: WikiIndex | None = None
) -> ParallelTitles:
    """Reads raw 'src_title\\ttgt_title' rows, stemming both sides on load."""
    mapping: dict[str, str] = {}
    missing = 0
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            src_title, sep, tgt_title = line.partition("\t")
            if not sep:
                raise ValueError(f"{path}:{line_no}: expected 2 tab-separated columns")
            src_stemmed = stem_phrase(src_title.split(), src_lang)
            if src_index is not None and src_stemmed not in src_index.titles:
                missing += 1
            mapping[src_stemmed] = stem_phrase(tgt_title.split(), tgt_lang)
    if missing:
        log.warning("%s: %d parallel-title keys missing from the source index", path, missing)
    return ParallelTitles(mapping=mapping)


def target_counterpart(
    cand: Candidate,
    pair: SentencePair,
    ptitles: ParallelTitles,
    src_lang: str,
    tgt_lang: str,
) -> str | None:
    """Stemmed target-side phrase for the candidate's entity.

    Resolution order: parallel-title map of the stemmed source entity, then
    the stemmed target tokens aligned to the entity range (in target order),
    then nothing.
    """
    if cand.ne_span is None:
        raise ValueError("candidate has no entity span")
    start, end = cand.ne_span
    source_phrase = stem_phrase(pair.src_tokens[start:end], src_lang)
    mapped = ptitles.mapping.get(source_phrase)
    if mapped is not None:
        return mapped
    aligned = sorted({j for (i, j) in pair.alignment if start <= i < end})
    if not aligned:
        return None
    return " ".join(stem(pair.tgt_tokens[j], tgt_lang) for j in aligned)


def wiki_decide(
    cand: Candidate,
    src_idx: WikiIndex,
    tgt_idx: WikiIndex,
    ptitles: ParallelTitles,
    pair: SentencePair,
) -> str:
    """The four-way gate decision for a NER-stage candidate."""
    if cand.ne_span is None:
        raise ValueError("candidate has no entity span")
    start, end = cand.ne_span
    source_phrase = stem_phrase(pair.src_tokens[start:end], src_idx.lang)
    if source_phrase not in src_idx.titles:
        return DECISION_NO_SRC_TITLE
    counterpart = target_counterpart(cand, pair, ptitles, src_idx.lang, tgt_idx.lang)
    if counterpart is None or counterpart not in tgt_idx.titles:
        return DECISION_SRC_ONLY
    if src_idx.titles[source_phrase] > tgt_idx.titles[counterpart]:
        return DECISION_SRC_LARGER
    return DECISION_TGT_COVERS


def wiki_filter(
    cand: Candidate,
    src_idx: WikiIndex,
    tgt_idx: WikiIndex,
    ptitles: ParallelTitles,
    pair: SentencePair,
) -> Candidate | None:
    """Advances kept candidates to stage WIKI with their decision recorded."""
    if cand.stage != STAGE_NER:
        raise ValueError(f"wiki_filter expects a NER candidate, got {cand.stage}")
    decision = wiki_decide(cand, src_idx, tgt_idx, ptitles, pair)
    if decision in KEEP_DECISIONS:
        return cand.advanced(STAGE_WIKI, wiki_decision=decision)
    return None
