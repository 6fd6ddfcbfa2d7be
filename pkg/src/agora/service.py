"""What-if service: immutable snapshots of (graph, resolution) pairs with
re-solving endpoints for edge removal, argument injection, and semantics or
weight changes.

Every mutation creates a new snapshot and reports the accepted-set delta;
clients always address snapshots explicitly, so concurrent what-ifs stay
isolated.  Machine-readable error codes accompany every client error.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Any, Mapping

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .attacks import AttackEdge, AttackGraph, AttackGraphError
from .exports import graph_export, stats_export, trace_card_export
from .logs import Argument
from .metrics import run_stats
from .resolve import (
    ConfigError,
    Resolution,
    ResolutionConfig,
    ResolutionDomainError,
    resolve,
    trace_card,
    what_if_inject,
    what_if_remove_attack,
)


@dataclass(frozen=True)
class Snapshot:
    id: str
    graph: AttackGraph
    resolution: Resolution
    config: ResolutionConfig
    journal: tuple[dict[str, Any], ...] = ()
    parent: str | None = None
    created_at: float = 0.0


class SnapshotStore:
    """Thread-safe append-only snapshot registry."""

    def __init__(self):
        self._lock = threading.Lock()
        self._snapshots: dict[str, Snapshot] = {}
        self._counter = 0

    def add(
        self,
        graph: AttackGraph,
        resolution: Resolution,
        config: ResolutionConfig,
        journal: tuple[dict[str, Any], ...] = (),
        parent: str | None = None,
    ) -> Snapshot:
        with self._lock:
            self._counter += 1
            snapshot = Snapshot(
                id=f"s{self._counter}",
                graph=graph,
                resolution=resolution,
                config=config,
                journal=journal,
                parent=parent,
                created_at=time.time(),
            )
            self._snapshots[snapshot.id] = snapshot
            return snapshot

    def get(self, snapshot_id: str) -> Snapshot:
        try:
            return self._snapshots[snapshot_id]
        except KeyError:
            raise HTTPException(
                404, {"code": "snapshot_not_found", "message": f"no snapshot {snapshot_id!r}"}
            )

    def list(self) -> list[Snapshot]:
        return sorted(self._snapshots.values(), key=lambda s: int(s.id[1:]))


class RemoveAttackBody(BaseModel):
    attacker: str
    target: str


class EdgeBody(BaseModel):
    attacker: str
    target: str
    origin: str = "manual"
    confidence: float = 1.0
    rationale: str = ""


class InjectBody(BaseModel):
    id: str
    act_type: str
    content: str
    agent: str
    quality: str
    rationale: str = ""
    session: str = "review"
    edges: list[EdgeBody] = Field(default_factory=list)


class SolveBody(BaseModel):
    semantics: str | None = None
    preferred_strategy: str | None = None
    weights: dict[str, float] | None = None


def _snapshot_body(snapshot: Snapshot) -> dict[str, Any]:
    body = graph_export(snapshot.graph, snapshot.resolution, journal=list(snapshot.journal))
    body["snapshot"] = {
        "id": snapshot.id,
        "parent": snapshot.parent,
        "semantics": snapshot.resolution.extension.semantics,
    }
    return body


def _mutation_response(snapshot: Snapshot, entered, left) -> dict[str, Any]:
    return {
        "snapshot_id": snapshot.id,
        "delta": {"entered": list(entered), "left": list(left)},
        "selected_extension": {
            "semantics": snapshot.resolution.extension.semantics,
            "members": sorted(snapshot.resolution.extension.members),
        },
    }


def create_app(store: SnapshotStore) -> FastAPI:
    app = FastAPI(title="agora what-if service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(HTTPException)
    async def wrap_error(request: Request, exc: HTTPException):
        detail = exc.detail if isinstance(exc.detail, dict) else {"code": "error", "message": str(exc.detail)}
        return JSONResponse(status_code=exc.status_code, content={"error": detail})

    @app.get("/snapshots")
    def list_snapshots():
        return {
            "snapshots": [
                {
                    "id": s.id,
                    "parent": s.parent,
                    "semantics": s.resolution.extension.semantics,
                    "argument_count": len(s.graph.arguments),
                }
                for s in store.list()
            ]
        }

    @app.get("/snapshots/{snapshot_id}")
    def get_snapshot(snapshot_id: str):
        return _snapshot_body(store.get(snapshot_id))

    @app.post("/snapshots/{snapshot_id}/remove-attack")
    def remove_attack(snapshot_id: str, body: RemoveAttackBody):
        snapshot = store.get(snapshot_id)
        try:
            result = what_if_remove_attack(
                snapshot.graph, body.attacker, body.target,
                snapshot.config, base=snapshot.resolution,
            )
        except AttackGraphError as exc:
            raise HTTPException(404, {"code": "unknown_edge", "message": str(exc)})
        new = store.add(
            result.graph,
            result.resolution,
            snapshot.config,
            snapshot.journal + (result.journal_entry | {"timestamp": time.time()},),
            parent=snapshot.id,
        )
        return _mutation_response(new, result.entered, result.left)

    @app.post("/snapshots/{snapshot_id}/inject")
    def inject(snapshot_id: str, body: InjectBody):
        snapshot = store.get(snapshot_id)
        argument = Argument(
            id=body.id,
            act_type=body.act_type,
            content=body.content,
            agent=body.agent,
            quality=body.quality,
            rationale=body.rationale,
            source=(body.session, 1, 1),
        )
        edges = [
            AttackEdge(e.attacker, e.target, e.origin, e.confidence, e.rationale)
            for e in body.edges
        ]
        try:
            result = what_if_inject(
                snapshot.graph, argument, edges, snapshot.config, base=snapshot.resolution
            )
        except AttackGraphError as exc:
            code = "id_collision" if "collision" in str(exc) else "unknown_argument"
            raise HTTPException(409 if code == "id_collision" else 404,
                                {"code": code, "message": str(exc)})
        except ConfigError as exc:
            raise HTTPException(422, {"code": "config_error", "message": str(exc)})
        new = store.add(
            result.graph,
            result.resolution,
            snapshot.config,
            snapshot.journal + (result.journal_entry | {"timestamp": time.time()},),
            parent=snapshot.id,
        )
        return _mutation_response(new, result.entered, result.left)

    @app.post("/snapshots/{snapshot_id}/solve")
    def solve(snapshot_id: str, body: SolveBody):
        snapshot = store.get(snapshot_id)
        config = snapshot.config
        try:
            new_config = ResolutionConfig(
                semantics=body.semantics or config.semantics,
                preferred_strategy=body.preferred_strategy or config.preferred_strategy,
                weights=dict(body.weights) if body.weights else dict(config.weights),
            )
            resolution = resolve(snapshot.graph, new_config)
        except ConfigError as exc:
            raise HTTPException(422, {"code": "config_error", "message": str(exc)})
        entry = {
            "timestamp": time.time(),
            "operation": "solve",
            "payload": {
                "semantics": new_config.semantics,
                "preferred_strategy": new_config.preferred_strategy,
            },
        }
        new = store.add(
            snapshot.graph, resolution, new_config, snapshot.journal + (entry,),
            parent=snapshot.id,
        )
        before = snapshot.resolution.extension.members
        after = resolution.extension.members
        return _mutation_response(new, sorted(after - before), sorted(before - after))

    @app.get("/snapshots/{snapshot_id}/trace-cards")
    def all_trace_cards(snapshot_id: str):
        snapshot = store.get(snapshot_id)
        return {
            "cards": [
                trace_card_export(trace_card(r.argument_id, snapshot.resolution, snapshot.graph))
                for r in snapshot.resolution.accepted
            ]
        }

    @app.get("/snapshots/{snapshot_id}/trace-cards/{argument_id}")
    def one_trace_card(snapshot_id: str, argument_id: str):
        snapshot = store.get(snapshot_id)
        try:
            card = trace_card(argument_id, snapshot.resolution, snapshot.graph)
        except ResolutionDomainError as exc:
            raise HTTPException(404, {"code": "not_accepted", "message": str(exc)})
        return trace_card_export(card)

    @app.get("/snapshots/{snapshot_id}/metrics")
    def metrics(snapshot_id: str):
        snapshot = store.get(snapshot_id)
        return stats_export(run_stats(snapshot.resolution, snapshot.graph))

    return app


def app_from_pipeline(result) -> tuple[FastAPI, SnapshotStore, Snapshot]:
    """Bootstrap a service from a completed pipeline run."""
    store = SnapshotStore()
    snapshot = store.add(result.graph, result.resolution, result.config.resolution_config())
    return create_app(store), store, snapshot
