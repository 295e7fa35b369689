"""Parallel-corpus mining for audience-specific entity explanations.

The cascade: word-frequency rarity gate, alignment-based redundant-span
detection, named-entity gate, and a Wikipedia title/size gate, followed by
human review of the survivors.
"""

from .corpus import SentencePair, is_punctuation, load_alignments, load_parallel_corpus
from .spans import BACKEND, Candidate, detect
from .vocab import RarityConfig, VocabCounts, count_words, is_rare, pair_rarity_gate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Candidate",
    "RarityConfig",
    "SentencePair",
    "VocabCounts",
    "count_words",
    "detect",
    "is_punctuation",
    "is_rare",
    "load_alignments",
    "load_parallel_corpus",
    "pair_rarity_gate",
    "__version__",
]
