"""Evaluation metrics over labeled candidates.

subset_f1 scores a filtering step against the positives of the widest
initial run: precision is positives among remaining candidates, recall is
relative to the initial positive count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import SentencePair
from .records import CandidateRecord, ReviewLabel, VERDICT_EXPLANATION, effective_labels
from .stemming import stem, stem_phrase

log = logging.getLogger(__name__)


def subset_f1(tp: int, remaining: int, total_positives: int) -> float:
    """Harmonic mean of tp/remaining and tp/total_positives; 0 when tp is 0."""
    if remaining <= 0 or total_positives <= 0:
        raise ValueError("remaining and total_positives must be positive")
    if tp > remaining or tp > total_positives:
        raise ValueError("tp cannot exceed remaining or total_positives")
    if tp == 0:
        return 0.0
    precision = tp / remaining
    recall = tp / total_positives
    return 2 * precision * recall / (precision + recall)


def retention_percentage(tp: int, remaining: int) -> float:
    """Fraction of remaining candidates that were accepted as explanations."""
    if remaining <= 0:
        raise ValueError("remaining must be positive")
    if tp > remaining:
        raise ValueError("tp cannot exceed remaining")
    return tp / remaining


@dataclass(frozen=True)
class NeStat:
    phrase: str  # stemmed entity phrase
    occurrences: int  # sentence pairs containing the phrase
    explained_count: int  # of those, pairs with an accepted explanation
    probability: float


def _contains_phrase(stemmed_tokens: list[str], phrase_tokens: tuple[str, ...]) -> bool:
    n = len(phrase_tokens)
    if n == 0 or n > len(stemmed_tokens):
        return False
    for start in range(len(stemmed_tokens) - n + 1):
        if tuple(stemmed_tokens[start : start + n]) == phrase_tokens:
            return True
    return False


def ne_explanation_stats(
    labels: Iterable[ReviewLabel],
    candidates: Iterable[CandidateRecord],
    pairs: Iterable[SentencePair],
    src_lang: str,
) -> list[NeStat]:
    """Per unique stemmed entity: corpus occurrences vs explained pairs.

    A pair "contains" an entity when the stemmed phrase appears as a source
    token n-gram; it is "explained" when an accepted candidate for that
    entity lives on the pair. Entities with zero occurrences are excluded
    with a warning.
    """
    effective = effective_labels(labels)
    explained_pairs: dict[tuple[str, ...], set[int]] = {}
    for record in candidates:
        label = effective.get(record.candidate_id)
        if label is None or label.verdict != VERDICT_EXPLANATION:
            continue
        if record.candidate.ne_span is None:
            continue
        start, end = record.candidate.ne_span
        phrase = tuple(stem(t, src_lang) for t in record.src_tokens[start:end])
        explained_pairs.setdefault(phrase, set()).add(record.candidate.pair_id)

    occurrences: dict[tuple[str, ...], int] = {phrase: 0 for phrase in explained_pairs}
    for pair in pairs:
        stemmed = [stem(t, src_lang) for t in pair.src_tokens]
        for phrase in occurrences:
            if _contains_phrase(stemmed, phrase):
                occurrences[phrase] += 1

    stats = []
    for phrase in sorted(explained_pairs):
        occ = occurrences[phrase]
        explained = len(explained_pairs[phrase])
        if occ == 0:
            log.warning("entity %r has no corpus occurrences, excluded", " ".join(phrase))
            continue
        stats.append(
            NeStat(
                phrase=" ".join(phrase),
                occurrences=occ,
                explained_count=explained,
                probability=explained / occ,
            )
        )
    return stats


def always_explained(stats: Iterable[NeStat]) -> list[NeStat]:
    """Entities explained in every occurrence, with their explanation frequency."""
    return [s for s in stats if s.probability == 1.0]
