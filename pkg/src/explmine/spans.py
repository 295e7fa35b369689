"""Locates redundant explanation spans behind rare-token anchors.

A candidate exists for anchor (k, m) when the token after the source anchor
aligns to a target position far enough behind m, the gap is unaligned,
contains punctuation, and contains a word other than the anchor itself
(compared on stems). The condition checks run in a compiled kernel when the
extension built, with a pure-Python fallback selected at import.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass, replace
from typing import Iterable

from .corpus import Link, SentencePair, is_punctuation
from .stemming import stem

if os.environ.get("EXPLMINE_PURE_PYTHON"):
    from . import _kernel_py as _backend
else:
    try:
        from . import _kernel as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _backend

BACKEND = "compiled" if _backend.COMPILED else "python"

STAGE_SPAN = "SPAN"
STAGE_NER = "NER"
STAGE_WIKI = "WIKI"
STAGE_LABELED = "LABELED"
STAGES = (STAGE_SPAN, STAGE_NER, STAGE_WIKI, STAGE_LABELED)

# numeric codes are the kernel contract, identical in _kernel.pyx and _kernel_py
REASON_NAMES = {
    1: "no_next_src",
    2: "next_unaligned",
    3: "no_target_after_anchor",
    4: "span_too_short",
    5: "span_aligned",
    6: "no_punct",
    7: "no_other_content",
}


@dataclass(frozen=True)
class CandidateFeatures:
    has_punct: bool
    has_other_content: bool
    span_unaligned: bool


@dataclass(frozen=True)
class Candidate:
    """A located explanation candidate, advancing through the cascade stages."""

    pair_id: int
    k: int
    m: int
    span_len: int
    features: CandidateFeatures
    stage: str = STAGE_SPAN
    ne_span: tuple[int, int] | None = None
    wiki_decision: str | None = None

    @property
    def span_start(self) -> int:
        return self.m + 1

    @property
    def next_src(self) -> int:
        return self.k + 1

    @property
    def next_tgt(self) -> int:
        return self.m + self.span_len + 1

    @property
    def candidate_id(self) -> str:
        return f"{self.pair_id}-{self.k}-{self.m}-{self.span_len}"

    @property
    def identity(self) -> tuple[int, int, int, int]:
        return (self.pair_id, self.k, self.m, self.span_len)

    def advanced(self, stage: str, **changes) -> "Candidate":
        return replace(self, stage=stage, **changes)


@dataclass(frozen=True)
class AnchorDrop:
    """An anchor rejected by the span detector, kept for stage statistics."""

    pair_id: int
    k: int
    m: int
    reason: str


# per-language memo of (is_punct, stem) per token; corpus tokens repeat heavily
_token_info: dict[str, dict[str, tuple[int, str]]] = {}


def _pair_arrays(pair: SentencePair, tgt_lang: str):
    links = sorted(pair.alignment)
    align_src = array("i", (i for i, _ in links))
    align_tgt = array("i", (j for _, j in links))
    info_cache = _token_info.setdefault(tgt_lang, {})
    stem_ids: dict[str, int] = {}
    punct_flags = []
    id_list = []
    for token in pair.tgt_tokens:
        info = info_cache.get(token)
        if info is None:
            info = (1 if is_punctuation(token) else 0, stem(token, tgt_lang))
            info_cache[token] = info
        punct_flags.append(info[0])
        id_list.append(stem_ids.setdefault(info[1], len(stem_ids)))
    return align_src, align_tgt, array("B", punct_flags), array("i", id_list)


def detect_with_reasons(
    pair: SentencePair,
    anchors: Iterable[Link],
    min_span: int = 3,
    tgt_lang: str = "",
    kernel=None,
) -> tuple[list[Candidate], list[AnchorDrop]]:
    """Runs the span conditions per anchor; returns candidates plus drop records.

    Output order follows anchor order. `kernel` overrides the backend module
    (used by equivalence tests and the benchmark).
    """
    anchors = list(anchors)
    if not anchors:
        return [], []
    backend = kernel if kernel is not None else _backend
    align_src, align_tgt, tgt_punct, tgt_stem_ids = _pair_arrays(pair, tgt_lang)
    anchor_k = array("i", (k for k, _ in anchors))
    anchor_m = array("i", (m for _, m in anchors))
    results = backend.scan_anchors(
        len(pair.src_tokens),
        align_src,
        align_tgt,
        tgt_punct,
        tgt_stem_ids,
        anchor_k,
        anchor_m,
        min_span,
    )
    candidates: list[Candidate] = []
    drops: list[AnchorDrop] = []
    for (k, m), (reason, n) in zip(anchors, results):
        if reason == 0:
            candidates.append(
                Candidate(
                    pair_id=pair.id,
                    k=k,
                    m=m,
                    span_len=n,
                    features=CandidateFeatures(
                        has_punct=True, has_other_content=True, span_unaligned=True
                    ),
                )
            )
        else:
            drops.append(AnchorDrop(pair_id=pair.id, k=k, m=m, reason=REASON_NAMES[reason]))
    return candidates, drops


def detect(
    pair: SentencePair, anchors: Iterable[Link], min_span: int = 3, tgt_lang: str = ""
) -> list[Candidate]:
    """Candidates only; see detect_with_reasons for the audit variant."""
    return detect_with_reasons(pair, anchors, min_span, tgt_lang)[0]


def span_tokens(candidate: Candidate, pair: SentencePair) -> tuple[str, ...]:
    return pair.tgt_tokens[candidate.span_start : candidate.span_start + candidate.span_len]
