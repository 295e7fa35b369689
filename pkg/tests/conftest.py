"""Shared fixtures: hand-built sentence pairs, the literal span oracle, and
random-corpus generators."""

from __future__ import annotations

import random

import pytest

from explmine.corpus import SentencePair, is_punctuation
from explmine.stemming import stem
from explmine.vocab import VocabCounts


def make_pair(pair_id: int, src: str, tgt: str, links) -> SentencePair:
    return SentencePair(
        id=pair_id,
        src_tokens=tuple(src.split()),
        tgt_tokens=tuple(tgt.split()),
        alignment=frozenset(links),
    )


BUNYAN_EN = (
    "John Bunyan said , “ He who runs from God in the morning will scarcely "
    "find Him the rest of the day . ”"
)
BUNYAN_DE = (
    "John Bunyan , der Autor der bekannten Pilgerreise , hat einmal gesagt : "
    "„ Wer morgens vor Gott wegläuft , wird Ihn den Rest des Tages kaum "
    "noch finden . “"
)
BUNYAN_LINKS = [
    (0, 0),   # John - John
    (1, 1),   # Bunyan - Bunyan
    (2, 9),   # said - hat (the verb after the second comma)
    (4, 13),  # quote - quote
    (5, 14),  # He - Wer
    (7, 18),  # runs - weglaeuft
    (9, 17),  # God - Gott
    (12, 15), # morning - morgens
    (13, 20), # will - wird
    (15, 28), # find - finden
    (16, 21), # Him - Ihn
    (18, 23), # rest - Rest
    (21, 25), # day - Tages
    (22, 29), # . - .
    (23, 30), # quote - quote
]
BUNYAN_SPAN = ", der Autor der bekannten Pilgerreise ,"


@pytest.fixture
def bunyan_pair() -> SentencePair:
    return make_pair(0, BUNYAN_EN, BUNYAN_DE, BUNYAN_LINKS)


def toy_counts(tokens, lang: str, rare: dict[str, int], common_count: int = 999_999) -> VocabCounts:
    """Every token gets common_count except the ones listed in `rare`."""
    counts = {t: common_count for t in tokens}
    counts.update(rare)
    return VocabCounts(lang=lang, counts=counts, total_tokens=sum(counts.values()))


def oracle_detect(pair: SentencePair, anchors, min_span: int, tgt_lang: str):
    """Brute-force span search: enumerates every (k, m, n) triple and checks
    each condition literally. Independent of the kernel implementations."""
    aligned_tgt = {j for _, j in pair.alignment}
    results = []
    for (k, m) in anchors:
        passing = []
        for n in range(1, len(pair.tgt_tokens)):
            j = m + n + 1
            if k + 1 >= len(pair.src_tokens):
                continue
            if (k + 1, j) not in pair.alignment:
                continue
            if any((k + 1, jp) in pair.alignment for jp in range(m + 1, j)):
                continue
            if n < min_span:
                continue
            span = range(m + 1, j)
            if any(x in aligned_tgt for x in span):
                continue
            if not any(is_punctuation(pair.tgt_tokens[x]) for x in span):
                continue
            anchor_stem = stem(pair.tgt_tokens[m], tgt_lang)
            if not any(
                not is_punctuation(pair.tgt_tokens[x])
                and stem(pair.tgt_tokens[x], tgt_lang) != anchor_stem
                for x in span
            ):
                continue
            passing.append((k, m, n))
        assert len(passing) <= 1, f"oracle found several spans for one anchor: {passing}"
        results.extend(passing)
    return results


RANDOM_SRC_VOCAB = ["alpha", "beta", "gamma", "delta", "Zorn", "Quell", ",", ".", "(", ")"]
RANDOM_TGT_VOCAB = [
    "der", "die", "das", "Pilgerreise", "Pilgerreisen", "Autor", "Quell", "Zorn",
    ",", ".", "(", ")", "und",
]


def random_aligned_pair(rng: random.Random, pair_id: int, max_len: int = 12) -> SentencePair:
    n = rng.randint(1, max_len)
    m = rng.randint(1, max_len)
    src = tuple(rng.choice(RANDOM_SRC_VOCAB) for _ in range(n))
    tgt = tuple(rng.choice(RANDOM_TGT_VOCAB) for _ in range(m))
    links = set()
    for _ in range(rng.randint(0, n + m)):
        links.add((rng.randrange(n), rng.randrange(m)))
    return SentencePair(id=pair_id, src_tokens=src, tgt_tokens=tgt, alignment=frozenset(links))


def random_anchors(rng: random.Random, pair: SentencePair):
    links = sorted(pair.alignment)
    if not links:
        return []
    picked = sorted(
        {links[rng.randrange(len(links))] for _ in range(rng.randint(1, len(links)))}
    )
    return picked
