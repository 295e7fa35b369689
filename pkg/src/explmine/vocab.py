"""Word-frequency tables and the rarity predicate.

Counts are built from extracted Wikipedia plain text, case-sensitive over
surface forms; a token is rare when its count is strictly below the
threshold (absent tokens count as 0).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .corpus import Link, SentencePair, is_punctuation


@dataclass
class VocabCounts:
    lang: str
    counts: dict[str, int]
    total_tokens: int


@dataclass(frozen=True)
class RarityConfig:
    src_threshold: int
    tgt_threshold: int

    def __post_init__(self) -> None:
        if self.src_threshold <= 0 or self.tgt_threshold <= 0:
            raise ValueError("rarity thresholds must be positive")


def count_words(lines: Iterable[str], lang: str) -> VocabCounts:
    counter: Counter[str] = Counter()
    total = 0
    for line in lines:
        tokens = line.split()
        counter.update(tokens)
        total += len(tokens)
    return VocabCounts(lang=lang, counts=dict(counter), total_tokens=total)


def merge_counts(first: VocabCounts, second: VocabCounts) -> VocabCounts:
    """Pointwise sum; used to combine shard counts."""
    if first.lang != second.lang:
        raise ValueError(f"cannot merge counts for {first.lang} and {second.lang}")
    merged = Counter(first.counts)
    merged.update(second.counts)
    return VocabCounts(
        lang=first.lang,
        counts=dict(merged),
        total_tokens=first.total_tokens + second.total_tokens,
    )


def is_rare(token: str, counts: VocabCounts, threshold: int) -> bool:
    return counts.counts.get(token, 0) < threshold


def pair_rarity_gate(
    pair: SentencePair,
    src_counts: VocabCounts,
    tgt_counts: VocabCounts,
    cfg: RarityConfig,
) -> list[Link]:
    """All aligned (k, m) whose tokens are rare on both sides, k non-punctuation.

    Returned in (k, m) order so downstream output is deterministic.
    """
    anchors = []
    for k, m in sorted(pair.alignment):
        src_token = pair.src_tokens[k]
        if is_punctuation(src_token):
            continue
        if not is_rare(src_token, src_counts, cfg.src_threshold):
            continue
        if not is_rare(pair.tgt_tokens[m], tgt_counts, cfg.tgt_threshold):
            continue
        anchors.append((k, m))
    return anchors


def save_counts(counts: VocabCounts, path: str) -> None:
    """TSV with a '#lang=<code>\\ttotal=<n>' header, rows sorted by token."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"#lang={counts.lang}\ttotal={counts.total_tokens}\n")
        for token in sorted(counts.counts):
            f.write(f"{token}\t{counts.counts[token]}\n")


def load_counts(path: str) -> VocabCounts:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if not header.startswith("#lang="):
            raise ValueError(f"{path}: missing count-table header")
        lang_part, _, total_part = header[1:].partition("\t")
        lang = lang_part.split("=", 1)[1]
        total = int(total_part.split("=", 1)[1])
        counts: dict[str, int] = {}
        for line_no, line in enumerate(f, start=2):
            token, _, value = line.rstrip("\n").partition("\t")
            if not value:
                raise ValueError(f"{path}:{line_no}: malformed count row")
            counts[token] = int(value)
    return VocabCounts(lang=lang, counts=counts, total_tokens=total)
