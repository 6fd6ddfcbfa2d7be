"""Bounded dialectical negotiation with pluggable agents.

Each session runs rounds in which every rostered agent takes exactly one
turn; the first agent in the roster owns the focus requirement.  A session
ends when the focus candidate stabilizes across successive rounds (scorer
similarity above 1 - epsilon), when the round cap is reached, or when an
agent provider fails (the partial log is preserved).

Two-stage conflict detection screens candidate requirements before sessions
are opened: a similarity filter flags pairs at or above tau, then a labeler
marks each flagged pair redundant (consolidate) or a genuine conflict
(debate).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Protocol, Sequence

from .logs import Component, NegotiationLog, Session, Turn, TurnRef
from .providers import SimilarityScorer, TokenOverlapScorer

logger = logging.getLogger(__name__)

CONFLICT_LABELS = ("redundant", "resource_bound", "logical_incompatibility")

CONVERGED = "converged"
ROUND_CAP = "round_cap"
ABORTED = "aborted"


class ProtocolError(ValueError):
    """Invalid protocol configuration or scenario definition."""


@dataclass(frozen=True)
class ProtocolConfig:
    round_cap: int = 3
    epsilon: float = 0.02
    similarity_tau: float = 0.85
    roster: tuple[str, ...] = ()

    def __post_init__(self):
        if self.round_cap < 1:
            raise ProtocolError("round_cap must be at least 1")
        if not 0 < self.epsilon < 1:
            raise ProtocolError("epsilon must be in (0, 1)")
        if not 0 < self.similarity_tau <= 1:
            raise ProtocolError("similarity_tau must be in (0, 1]")


@dataclass(frozen=True)
class TurnSpec:
    """What an agent wants to say this round; references are turn indexes
    within the current session."""

    act: str
    content: str
    quality_dimension: str
    rationale: str = ""
    targets: tuple[int, ...] = ()
    supersedes: int | None = None
    resolves: tuple[int, ...] = ()
    status: str | None = None
    components: tuple[Component, ...] = ()


class Agent(Protocol):
    def __call__(self, round_number: int, project: str, session_turns: Sequence[Turn]) -> TurnSpec: ...


class ScriptedAgent:
    """Deterministic agent replaying a per-round script."""

    def __init__(self, name: str, script: Mapping[int, TurnSpec]):
        self.name = name
        self.script = dict(script)

    def __call__(self, round_number: int, project: str, session_turns: Sequence[Turn]) -> TurnSpec:
        try:
            return self.script[round_number]
        except KeyError:
            raise ProtocolError(f"agent {self.name!r} has no script for round {round_number}")


@dataclass(frozen=True)
class ConflictFinding:
    pair: tuple[int, int]
    similarity: float
    label: str
    action: str  # consolidate | debate


def detect_conflicts(
    candidates: Sequence[str],
    scorer: SimilarityScorer,
    labeler: Callable[[str, str], str],
    tau: float,
) -> list[ConflictFinding]:
    """Stage 1 flags pairs at similarity >= tau; Stage 2 labels each flagged
    pair.  Redundant pairs are marked for consolidation, conflict labels
    trigger dialectical debate.  Provider failures skip the pair with a
    logged diagnostic."""
    if len(candidates) < 2:
        raise ProtocolError("conflict detection needs at least two candidates")
    findings: list[ConflictFinding] = []
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            try:
                similarity = scorer(candidates[i], candidates[j])
                if similarity < tau:
                    continue
                label = labeler(candidates[i], candidates[j])
            except Exception as exc:
                logger.error("conflict detection failed on pair (%d, %d): %s", i, j, exc)
                continue
            if label not in CONFLICT_LABELS:
                logger.error("labeler returned unknown label %r; pair skipped", label)
                continue
            action = "consolidate" if label == "redundant" else "debate"
            findings.append(ConflictFinding((i, j), similarity, label, action))
    return findings


def _build_turn(
    spec: TurnSpec, session_id: str, round_number: int, turn_index: int, agent: str
) -> Turn:
    ref = lambda idx: TurnRef(session_id, idx)
    return Turn(
        session_id=session_id,
        round=round_number,
        turn_index=turn_index,
        agent=agent,
        act=spec.act,
        content=spec.content,
        quality_dimension=spec.quality_dimension,
        rationale=spec.rationale,
        targets=tuple(ref(t) for t in spec.targets),
        supersedes=ref(spec.supersedes) if spec.supersedes is not None else None,
        resolves=tuple(ref(r) for r in spec.resolves),
        status=spec.status,
        components=spec.components,
    )


def run_session(
    session_id: str,
    roster: Sequence[tuple[str, Agent]],
    project: str,
    config: ProtocolConfig,
    scorer: SimilarityScorer | None = None,
) -> Session:
    """One dialectical session; the first rostered agent owns the focus."""
    if not roster:
        raise ProtocolError("session roster must not be empty")
    scorer = scorer or TokenOverlapScorer()
    turns: list[Turn] = []
    focus_history: list[str] = []
    reason: str | None = None
    turn_index = 0
    for round_number in range(1, config.round_cap + 1):
        try:
            for agent_name, agent in roster:
                spec = agent(round_number, project, tuple(turns))
                turn_index += 1
                turns.append(_build_turn(spec, session_id, round_number, turn_index, agent_name))
                if agent_name == roster[0][0] and spec.act in ("proposal", "refinement"):
                    focus_history.append(spec.content)
        except Exception as exc:
            logger.error("session %s aborted in round %d: %s", session_id, round_number, exc)
            reason = ABORTED
            break
        if len(focus_history) >= 2:
            similarity = scorer(focus_history[-2], focus_history[-1])
            if similarity > 1 - config.epsilon:
                reason = CONVERGED
                break
    if reason is None:
        reason = ROUND_CAP
    return Session(
        id=session_id,
        agents=tuple(name for name, _ in roster),
        turns=tuple(turns),
        termination_reason=reason,
    )


def run_negotiation(
    project: str,
    sessions: Sequence[tuple[str, Sequence[tuple[str, Agent]]]],
    config: ProtocolConfig,
    scorer: SimilarityScorer | None = None,
    log_config: Mapping[str, Any] | None = None,
    pinned_attacks: Sequence[Mapping[str, Any]] = (),
) -> NegotiationLog:
    """Run each planned session and assemble a validated negotiation log.

    Successive-round convergence compares the focus agent's candidate only;
    the choice is recorded in the log configuration.
    """
    run_sessions = tuple(
        run_session(session_id, roster, project, config, scorer)
        for session_id, roster in sessions
    )
    merged_config: dict[str, Any] = {
        "round_cap": config.round_cap,
        "epsilon": config.epsilon,
        "similarity_tau": config.similarity_tau,
        "convergence_comparison": "focus_candidate",
    }
    if log_config:
        merged_config.update(log_config)
    return NegotiationLog(
        sessions=run_sessions,
        project=project,
        config=merged_config,
        pinned_attacks=tuple(dict(p) for p in pinned_attacks),
    )


def _spec_from_tree(tree: Mapping[str, Any]) -> TurnSpec:
    return TurnSpec(
        act=tree["act"],
        content=tree["content"],
        quality_dimension=tree["quality_dimension"],
        rationale=tree.get("rationale", ""),
        targets=tuple(tree.get("targets", [])),
        supersedes=tree.get("supersedes"),
        resolves=tuple(tree.get("resolves", [])),
        status=tree.get("status"),
        components=tuple(
            Component(text=c["text"], axis=c["axis"], theme=c.get("theme"))
            for c in tree.get("components", [])
        ),
    )


def load_scenario(path: str | Path) -> dict[str, Any]:
    """Parse a scripted-agent scenario file: per-session scripts keyed by
    (agent, round), plus project text, protocol settings, and pinned edges."""
    tree = json.loads(Path(path).read_text(encoding="utf-8"))
    config_tree = tree.get("config", {})
    config = ProtocolConfig(
        round_cap=config_tree.get("round_cap", 3),
        epsilon=config_tree.get("epsilon", 0.02),
        similarity_tau=config_tree.get("similarity_tau", 0.85),
    )
    sessions: list[tuple[str, list[tuple[str, Agent]]]] = []
    for s_obj in tree.get("sessions", []):
        roster: list[tuple[str, Agent]] = []
        for agent_name in s_obj["agents"]:
            script_tree = s_obj.get("script", {}).get(agent_name, {})
            script = {int(r): _spec_from_tree(spec) for r, spec in script_tree.items()}
            roster.append((agent_name, ScriptedAgent(agent_name, script)))
        sessions.append((s_obj["id"], roster))
    return {
        "project": tree.get("project", ""),
        "sessions": sessions,
        "config": config,
        "log_config": config_tree,
        "pinned_attacks": tree.get("pinned_attacks", []),
    }


def run_scenario(path: str | Path, scorer: SimilarityScorer | None = None) -> NegotiationLog:
    scenario = load_scenario(path)
    return run_negotiation(
        scenario["project"],
        scenario["sessions"],
        scenario["config"],
        scorer=scorer,
        log_config=scenario["log_config"],
        pinned_attacks=scenario["pinned_attacks"],
    )
