"""Named-entity gate: keeps candidates whose explained source word lies
inside a named entity.

Entities come from an external standoff file (one JSON record per line) or
from the gazetteer fallback, which matches token n-grams against stemmed
Wikipedia titles so the whole pipeline can run without any NER model.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, TYPE_CHECKING

from .corpus import SentencePair
from .spans import Candidate, STAGE_NER, STAGE_SPAN
from .stemming import stem_phrase

if TYPE_CHECKING:
    from .wiki import WikiIndex

log = logging.getLogger(__name__)

SIDE_SRC = "src"
SIDE_TGT = "tgt"

NER_DROP_REASON = "no_covering_entity"


@dataclass(frozen=True)
class Entity:
    start: int
    end: int  # exclusive
    label: str
    text: str


@dataclass
class NerAnnotation:
    pair_id: int
    side: str
    entities: list[Entity]


NerMap = dict[tuple[int, str], NerAnnotation]


def load_ner(path: str, pairs: Mapping[int, SentencePair] | None = None) -> NerMap:
    """Reads standoff records {pair_id, side, entities:[{start,end,label,text}]}.

    With `pairs` given, entities whose range exceeds the sentence are dropped
    with a warning, and a text/token mismatch logs a validation warning.
    Missing pairs simply mean no entities.
    """
    annotations: NerMap = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                pair_id = int(record["pair_id"])
                side = record["side"]
                raw_entities = record["entities"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{line_no}: malformed NER record: {exc}") from exc
            if side not in (SIDE_SRC, SIDE_TGT):
                raise ValueError(f"{path}:{line_no}: unknown side {side!r}")
            entities = []
            for raw in raw_entities:
                try:
                    entity = Entity(
                        start=int(raw["start"]),
                        end=int(raw["end"]),
                        label=str(raw["label"]),
                        text=str(raw["text"]),
                    )
                except (KeyError, TypeError, ValueError) as exc:
                    raise ValueError(f"{path}:{line_no}: malformed entity: {exc}") from exc
                if entity.start < 0 or entity.start >= entity.end:
                    log.warning("%s:%d: dropping empty/negative entity range", path, line_no)
                    continue
                if pairs is not None and pair_id in pairs:
                    pair = pairs[pair_id]
                    tokens = pair.src_tokens if side == SIDE_SRC else pair.tgt_tokens
                    if entity.end > len(tokens):
                        log.warning(
                            "%s:%d: entity range %d..%d beyond sentence length %d in pair %d, dropped",
                            path, line_no, entity.start, entity.end, len(tokens), pair_id,
                        )
                        continue
                    joined = " ".join(tokens[entity.start : entity.end])
                    if joined != entity.text:
                        log.warning(
                            "%s:%d: entity text %r does not match tokens %r",
                            path, line_no, entity.text, joined,
                        )
                entities.append(entity)
            annotations[(pair_id, side)] = NerAnnotation(pair_id=pair_id, side=side, entities=entities)
    return annotations


def save_ner(annotations: NerMap, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for key in sorted(annotations, key=lambda key: (key[0], key[1])):
            ann = annotations[key]
            record = {
                "pair_id": ann.pair_id,
                "side": ann.side,
                "entities": [
                    {"start": e.start, "end": e.end, "label": e.label, "text": e.text}
                    for e in ann.entities
                ],
            }
            f.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")


def gazetteer_ner(pair: SentencePair, titles: "WikiIndex", max_n: int = 5) -> NerAnnotation:
    """Marks maximal source n-grams whose stemmed join is a known title.

    Longest-first then leftmost-first; shorter or overlapping matches are
    skipped, so the produced ranges never overlap. Label is always WIKI.
    """
    tokens = pair.src_tokens
    taken = [False] * len(tokens)
    found: list[Entity] = []
    for n in range(min(max_n, len(tokens)), 0, -1):
        for start in range(0, len(tokens) - n + 1):
            end = start + n
            if any(taken[start:end]):
                continue
            phrase = stem_phrase(tokens[start:end], titles.lang)
            if phrase in titles.titles:
                found.append(
                    Entity(start=start, end=end, label="WIKI", text=" ".join(tokens[start:end]))
                )
                for i in range(start, end):
                    taken[i] = True
    found.sort(key=lambda e: e.start)
    return NerAnnotation(pair_id=pair.id, side=SIDE_SRC, entities=found)


def ner_filter(cand: Candidate, ann: NerAnnotation | None) -> Candidate | None:
    """Keeps the candidate iff an entity range covers k; records the range.

    Among several covering entities the longest wins, ties going leftmost.
    """
    if cand.stage != STAGE_SPAN:
        raise ValueError(f"ner_filter expects a SPAN candidate, got {cand.stage}")
    if ann is None:
        return None
    covering = [e for e in ann.entities if e.start <= cand.k < e.end]
    if not covering:
        return None
    best = max(covering, key=lambda e: (e.end - e.start, -e.start))
    return cand.advanced(STAGE_NER, ne_span=(best.start, best.end))
