"""HTTP review service for the terminal manual-selection step.

Serves candidate records with highlight offsets, accepts verdicts, and keeps
an append-only label store: every label line is fsynced before the response
is acknowledged, and effective state is replayed from the file on startup,
so labels survive restarts. All endpoints live under /api/v1.
"""

from __future__ import annotations

import logging
import os
import threading
from typing import Iterable

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .metrics import retention_percentage
from .records import (
    CandidateRecord,
    ReviewLabel,
    VERDICT_EXPLANATION,
    VERDICTS,
    append_label,
    effective_labels,
    load_labels,
    now_rfc3339,
)
from .spans import STAGE_NER, STAGE_SPAN, STAGE_WIKI, STAGES

log = logging.getLogger(__name__)


class ReviewStore:
    """Candidates plus the append-only label log behind the API."""

    def __init__(
        self,
        records: Iterable[CandidateRecord],
        labels_path: str,
        stage_counts: dict[str, int] | None = None,
    ):
        self._lock = threading.Lock()
        self.labels_path = labels_path
        # the most advanced stage wins when the same candidate appears twice
        stage_rank = {stage: rank for rank, stage in enumerate(STAGES)}
        by_id: dict[str, CandidateRecord] = {}
        order: list[str] = []
        for record in records:
            current = by_id.get(record.candidate_id)
            if current is None:
                by_id[record.candidate_id] = record
                order.append(record.candidate_id)
            elif stage_rank[record.candidate.stage] > stage_rank[current.candidate.stage]:
                by_id[record.candidate_id] = record
        self.records = {cid: by_id[cid] for cid in order}
        self.stage_counts = stage_counts or {}
        self.labels: list[ReviewLabel] = []
        self.seen_request_ids: set[str] = set()
        if os.path.exists(labels_path):
            self.labels = load_labels(labels_path)
            self.seen_request_ids = {
                label.request_id for label in self.labels if label.request_id
            }
            unknown = {
                l.candidate_id for l in self.labels if l.candidate_id not in self.records
            }
            if unknown:
                # kept in the log for audit; just not counted in stats
                log.warning(
                    "%s: %d label(s) reference unknown candidates", labels_path, len(unknown)
                )

    def list_candidates(self, stage: str | None, offset: int, limit: int):
        records = list(self.records.values())
        if stage:
            records = [r for r in records if r.candidate.stage == stage]
        return len(records), records[offset : offset + limit]

    def add_label(self, label: ReviewLabel) -> tuple[ReviewLabel, bool]:
        """Appends durably; a replayed request_id returns the stored label."""
        with self._lock:
            if label.request_id and label.request_id in self.seen_request_ids:
                for existing in reversed(self.labels):
                    if existing.request_id == label.request_id:
                        return existing, True
            append_label(self.labels_path, label)
            self.labels.append(label)
            if label.request_id:
                self.seen_request_ids.add(label.request_id)
            return label, False

    def stats(self) -> dict:
        effective = {
            cid: label
            for cid, label in effective_labels(self.labels).items()
            if cid in self.records
        }
        labeled = len(effective)
        accepted = sum(
            1 for label in effective.values() if label.verdict == VERDICT_EXPLANATION
        )
        return {
            "total_candidates": len(self.records),
            "stage_counts": self.stage_counts,
            "labels": {
                "labeled": labeled,
                "explanation": accepted,
                "not_explanation": labeled - accepted,
                "total_records": len(self.labels),
            },
            "retention": retention_percentage(accepted, labeled) if labeled else 0.0,
        }


def _candidate_payload(record: CandidateRecord, store: ReviewStore) -> dict:
    cand = record.candidate
    effective = effective_labels(store.labels).get(record.candidate_id)
    payload = record.to_obj()
    payload["highlights"] = {
        "src_entity": list(cand.ne_span) if cand.ne_span is not None else None,
        "tgt_anchor": [cand.m, cand.m + 1],
        "tgt_span": [cand.span_start, cand.span_start + cand.span_len],
    }
    payload["current_verdict"] = effective.verdict if effective else None
    return payload


def create_app(store: ReviewStore) -> FastAPI:
    app = FastAPI(title="explmine review API")
    app.state.store = store

    @app.get("/api/v1/candidates")
    def list_candidates(
        response: Response, stage: str | None = None, offset: int = 0, limit: int = 50
    ):
        if stage is not None and stage not in STAGES:
            return JSONResponse(
                status_code=400, content={"error": "unknown stage", "field": "stage"}
            )
        if offset < 0 or limit <= 0:
            return JSONResponse(
                status_code=400,
                content={"error": "offset must be >= 0 and limit > 0", "field": "offset"},
            )
        total, page = store.list_candidates(stage, offset, limit)
        response.headers["X-Total-Count"] = str(total)
        return {
            "total": total,
            "offset": offset,
            "limit": limit,
            "items": [_candidate_payload(r, store) for r in page],
        }

    @app.get("/api/v1/candidates/{candidate_id}")
    def get_candidate(candidate_id: str):
        record = store.records.get(candidate_id)
        if record is None:
            return JSONResponse(
                status_code=404, content={"error": f"unknown candidate {candidate_id}"}
            )
        return _candidate_payload(record, store)

    @app.post("/api/v1/labels")
    async def post_label(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse(status_code=400, content={"error": "invalid JSON body"})
        if not isinstance(body, dict):
            return JSONResponse(status_code=400, content={"error": "body must be an object"})
        for field in ("candidate_id", "verdict", "annotator"):
            value = body.get(field)
            if not isinstance(value, str) or not value:
                return JSONResponse(
                    status_code=400,
                    content={"error": f"missing or invalid {field}", "field": field},
                )
        if body["verdict"] not in VERDICTS:
            return JSONResponse(
                status_code=400,
                content={"error": f"verdict must be one of {VERDICTS}", "field": "verdict"},
            )
        request_id = body.get("request_id")
        if request_id is not None and not isinstance(request_id, str):
            return JSONResponse(
                status_code=400,
                content={"error": "request_id must be a string", "field": "request_id"},
            )
        if body["candidate_id"] not in store.records:
            return JSONResponse(
                status_code=404,
                content={"error": f"unknown candidate {body['candidate_id']}"},
            )
        label = ReviewLabel(
            candidate_id=body["candidate_id"],
            verdict=body["verdict"],
            annotator=body["annotator"],
            timestamp=now_rfc3339(),
            request_id=request_id,
        )
        stored, duplicate = store.add_label(label)
        return {"label": stored.to_obj(), "duplicate": duplicate}

    @app.get("/api/v1/stats")
    def stats():
        return store.stats()

    return app


def store_from_run_dir(run_dir: str, labels_path: str | None = None) -> ReviewStore:
    """Loads all stage exports (and stage counts from the report) of a run."""
    import json

    from .pipeline import REPORT_JSON, STAGE_FILES
    from .records import import_candidates

    records: list[CandidateRecord] = []
    for stage in (STAGE_WIKI, STAGE_NER, STAGE_SPAN):
        path = os.path.join(run_dir, STAGE_FILES[stage])
        if os.path.exists(path):
            records.extend(import_candidates(path))
    stage_counts: dict[str, int] = {}
    report_path = os.path.join(run_dir, REPORT_JSON)
    if os.path.exists(report_path):
        with open(report_path, encoding="utf-8") as f:
            report = json.load(f)
        stage_counts = {
            s["name"]: s["candidates_out"] for s in report.get("stages", [])
        }
    if labels_path is None:
        labels_path = os.path.join(run_dir, "labels.jsonl")
    return ReviewStore(records, labels_path, stage_counts)
