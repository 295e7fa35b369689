"""Sentence-pair data model and loaders for parallel text and word alignments.

Inputs are pre-tokenized (one sentence per line, tokens separated by
whitespace); alignment files use the Pharaoh "i-j" convention with 0-based
source and target indexes.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, TextIO

log = logging.getLogger(__name__)

Link = tuple[int, int]


@dataclass(frozen=True)
class SentencePair:
    """One aligned sentence pair; id is the 0-based line number in the corpus."""

    id: int
    src_tokens: tuple[str, ...]
    tgt_tokens: tuple[str, ...]
    alignment: frozenset[Link] = field(default_factory=frozenset)

    def with_alignment(self, links: Iterable[Link]) -> "SentencePair":
        return replace(self, alignment=frozenset(links))


@dataclass
class LoadStats:
    """Counters accumulated while streaming a corpus."""

    lines: int = 0
    admitted: int = 0
    skipped_empty: int = 0


def is_punctuation(token: str) -> bool:
    """True iff the token is non-empty and every character is Unicode punctuation (P*)."""
    if not token:
        return False
    return all(unicodedata.category(ch).startswith("P") for ch in token)


def _count_remaining(handle: TextIO, seen: int) -> int:
    total = seen
    for _ in handle:
        total += 1
    return total


def load_parallel_corpus(
    src_path: str, tgt_path: str, stats: LoadStats | None = None
) -> Iterator[SentencePair]:
    """Streams sentence pairs from two line-aligned files.

    Pairs with an empty source or target line are skipped with a warning
    counter, keeping their line number reserved so alignment files stay in
    sync. A line-count mismatch between the two files is fatal.
    """
    stats = stats if stats is not None else LoadStats()
    with open(src_path, encoding="utf-8") as src_f, open(tgt_path, encoding="utf-8") as tgt_f:
        line_no = 0
        while True:
            src_line = src_f.readline()
            tgt_line = tgt_f.readline()
            if not src_line and not tgt_line:
                break
            if not src_line or not tgt_line:
                src_total = _count_remaining(src_f, line_no + (1 if src_line else 0))
                tgt_total = _count_remaining(tgt_f, line_no + (1 if tgt_line else 0))
                raise ValueError(f"line count mismatch {src_total} vs {tgt_total}")
            stats.lines += 1
            src_tokens = tuple(src_line.split())
            tgt_tokens = tuple(tgt_line.split())
            if not src_tokens or not tgt_tokens:
                stats.skipped_empty += 1
                line_no += 1
                continue
            stats.admitted += 1
            yield SentencePair(id=line_no, src_tokens=src_tokens, tgt_tokens=tgt_tokens)
            line_no += 1


def parse_alignment_line(line: str, line_no: int) -> set[Link]:
    links: set[Link] = set()
    for token in line.split():
        left, sep, right = token.partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            raise ValueError(f"malformed alignment link {token!r} at line {line_no}")
        links.add((int(left), int(right)))
    return links


def load_alignments(path: str, pairs: Iterable[SentencePair]) -> Iterator[SentencePair]:
    """Attaches alignment sets to a corpus stream, matching lines by pair id.

    Raises on malformed link tokens (with the line number) and on links whose
    indexes fall outside the pair's token ranges (naming the pair id).
    """
    with open(path, encoding="utf-8") as f:
        line_no = 0
        for pair in pairs:
            line = None
            while line_no <= pair.id:
                line = f.readline()
                if not line:
                    raise ValueError(
                        f"alignment file ended at line {line_no} but corpus has pair {pair.id}"
                    )
                line_no += 1
            links = parse_alignment_line(line, line_no)
            for i, j in links:
                if i >= len(pair.src_tokens) or j >= len(pair.tgt_tokens):
                    raise ValueError(f"index out of range in pair {pair.id}")
            yield pair.with_alignment(links)


def format_sentence(tokens: tuple[str, ...]) -> str:
    return " ".join(tokens)


def format_alignment(links: frozenset[Link] | set[Link]) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(links))


def write_corpus(pairs: Iterable[SentencePair], src_path: str, tgt_path: str, align_path: str) -> None:
    """Serializes pairs back to the three input formats (inverse of the loaders)."""
    with open(src_path, "w", encoding="utf-8") as src_f, open(
        tgt_path, "w", encoding="utf-8"
    ) as tgt_f, open(align_path, "w", encoding="utf-8") as align_f:
        for pair in pairs:
            src_f.write(format_sentence(pair.src_tokens) + "\n")
            tgt_f.write(format_sentence(pair.tgt_tokens) + "\n")
            align_f.write(format_alignment(pair.alignment) + "\n")
