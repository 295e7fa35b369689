"""Newline-delimited JSON records for candidates and review labels.

Field names and ordering are fixed so that exports are byte-identical across
runs and survive load -> serialize -> load unchanged.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable

from .spans import Candidate, CandidateFeatures

log = logging.getLogger(__name__)

VERDICT_EXPLANATION = "EXPLANATION"
VERDICT_NOT_EXPLANATION = "NOT_EXPLANATION"
VERDICTS = (VERDICT_EXPLANATION, VERDICT_NOT_EXPLANATION)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


@dataclass(frozen=True)
class CandidateRecord:
    """A candidate bundled with its sentence context for export and review."""

    candidate: Candidate
    src_tokens: tuple[str, ...]
    tgt_tokens: tuple[str, ...]

    @property
    def candidate_id(self) -> str:
        return self.candidate.candidate_id

    def to_obj(self) -> dict:
        c = self.candidate
        return {
            "candidate_id": c.candidate_id,
            "pair_id": c.pair_id,
            "stage": c.stage,
            "k": c.k,
            "m": c.m,
            "span_start": c.span_start,
            "span_len": c.span_len,
            "features": {
                "has_punct": c.features.has_punct,
                "has_other_content": c.features.has_other_content,
                "span_unaligned": c.features.span_unaligned,
            },
            "ne_span": list(c.ne_span) if c.ne_span is not None else None,
            "wiki_decision": c.wiki_decision,
            "src_tokens": list(self.src_tokens),
            "tgt_tokens": list(self.tgt_tokens),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "CandidateRecord":
        features = obj["features"]
        candidate = Candidate(
            pair_id=obj["pair_id"],
            k=obj["k"],
            m=obj["m"],
            span_len=obj["span_len"],
            features=CandidateFeatures(
                has_punct=features["has_punct"],
                has_other_content=features["has_other_content"],
                span_unaligned=features["span_unaligned"],
            ),
            stage=obj["stage"],
            ne_span=tuple(obj["ne_span"]) if obj.get("ne_span") is not None else None,
            wiki_decision=obj.get("wiki_decision"),
        )
        return cls(
            candidate=candidate,
            src_tokens=tuple(obj["src_tokens"]),
            tgt_tokens=tuple(obj["tgt_tokens"]),
        )


def export_candidates(records: Iterable[CandidateRecord], path: str) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(_dump(record.to_obj()) + "\n")
            count += 1
    return count


def import_candidates(path: str) -> list[CandidateRecord]:
    records = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(CandidateRecord.from_obj(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{line_no}: malformed candidate record: {exc}") from exc
    return records


@dataclass(frozen=True)
class ReviewLabel:
    candidate_id: str
    verdict: str
    annotator: str
    timestamp: str  # RFC 3339
    request_id: str | None = None

    def to_obj(self) -> dict:
        obj = {
            "candidate_id": self.candidate_id,
            "verdict": self.verdict,
            "annotator": self.annotator,
            "timestamp": self.timestamp,
        }
        if self.request_id is not None:
            obj["request_id"] = self.request_id
        return obj


def parse_rfc3339(value: str) -> datetime:
    if value.endswith("Z"):
        value = value[:-1] + "+00:00"
    return datetime.fromisoformat(value)


def now_rfc3339() -> str:
    return datetime.now(timezone.utc).isoformat()


def label_from_obj(obj: dict) -> ReviewLabel:
    verdict = obj["verdict"]
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    parse_rfc3339(obj["timestamp"])  # validates format
    return ReviewLabel(
        candidate_id=str(obj["candidate_id"]),
        verdict=verdict,
        annotator=str(obj["annotator"]),
        timestamp=obj["timestamp"],
        request_id=obj.get("request_id"),
    )


def append_label(path: str, label: ReviewLabel) -> None:
    """Durable append: the line is flushed and fsynced before returning."""
    with open(path, "a", encoding="utf-8") as f:
        f.write(_dump(label.to_obj()) + "\n")
        f.flush()
        os.fsync(f.fileno())


def load_labels(path: str) -> list[ReviewLabel]:
    labels = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                labels.append(label_from_obj(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{line_no}: malformed label record: {exc}") from exc
    return labels


def save_labels(labels: Iterable[ReviewLabel], path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for label in labels:
            f.write(_dump(label.to_obj()) + "\n")


def effective_labels(labels: Iterable[ReviewLabel]) -> dict[str, ReviewLabel]:
    """Latest verdict per candidate; replay order breaks timestamp ties.

    Per (candidate_id, annotator) only the newest label counts, and the
    newest label overall is the candidate's effective verdict.
    """
    per_annotator: dict[tuple[str, str], tuple[datetime, int, ReviewLabel]] = {}
    for order, label in enumerate(labels):
        key = (label.candidate_id, label.annotator)
        stamped = (parse_rfc3339(label.timestamp), order, label)
        current = per_annotator.get(key)
        if current is None or stamped[:2] > current[:2]:
            per_annotator[key] = stamped
    effective: dict[str, tuple[datetime, int, ReviewLabel]] = {}
    for (candidate_id, _), stamped in per_annotator.items():
        current = effective.get(candidate_id)
        if current is None or stamped[:2] > current[:2]:
            effective[candidate_id] = stamped
    return {cid: stamped[2] for cid, stamped in effective.items()}
