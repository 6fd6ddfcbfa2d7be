"""Semantics-based resolution: extension selection, accepted-requirement
derivation, defense chains, provenance traces, and what-if overrides.

All operations are pure: what-if overrides build a fresh graph and resolution
and leave the originals untouched, recording the change in an override
journal when one is supplied.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .af import (
    Extension,
    GROUNDED,
    PREFERRED,
    grounded_extension,
    preferred_extensions,
)
from .attacks import AttackEdge, AttackGraph, add_argument, remove_edge
from .logs import Argument

DEFAULT_AXES = ("safety", "efficiency", "green", "trustworthiness", "responsibility")

INTERSECTION = "intersection"
PRIORITY_GUIDED = "priority_guided"

_ID_NUM = re.compile(r"^a(\d+)$")


class ConfigError(ValueError):
    """Resolution configuration inconsistent with the framework."""


class ResolutionDomainError(ValueError):
    """Operation applied outside its domain (e.g. chain for a rejected argument)."""


def uniform_weights(axes: Sequence[str] = DEFAULT_AXES) -> dict[str, float]:
    return {axis: 1.0 / len(axes) for axis in axes}


def safety_critical_weights() -> dict[str, float]:
    """Raised safety weight (0.3) with the remaining four axes at 0.175."""
    weights = {axis: 0.175 for axis in DEFAULT_AXES}
    weights["safety"] = 0.3
    return weights


def argument_sort_key(arg_id: str) -> tuple[int, str]:
    match = _ID_NUM.match(arg_id)
    return (int(match.group(1)), arg_id) if match else (10**9, arg_id)


@dataclass(frozen=True)
class ResolutionConfig:
    semantics: str = GROUNDED
    preferred_strategy: str = INTERSECTION
    weights: Mapping[str, float] = field(default_factory=uniform_weights)

    def __post_init__(self):
        if self.semantics not in (GROUNDED, PREFERRED):
            raise ConfigError(f"unknown semantics {self.semantics!r}")
        if self.preferred_strategy not in (INTERSECTION, PRIORITY_GUIDED):
            raise ConfigError(f"unknown preferred strategy {self.preferred_strategy!r}")
        if any(w < 0 for w in self.weights.values()):
            raise ConfigError("weights must be non-negative")
        if abs(sum(self.weights.values()) - 1.0) > 1e-9:
            raise ConfigError("weights must sum to 1")


@dataclass(frozen=True)
class ChainStep:
    attacker: str
    defender: str | None  # None when no accepted counter-attacker exists
    origin: str


@dataclass(frozen=True)
class DefenseChain:
    root: str
    steps: tuple[ChainStep, ...]


@dataclass(frozen=True)
class AcceptedRequirement:
    content: str
    argument_id: str


@dataclass(frozen=True)
class Resolution:
    extension: Extension
    accepted: tuple[AcceptedRequirement, ...]
    status: Mapping[str, str]  # argument id -> in | out | undec
    defense_chains: Mapping[str, DefenseChain]
    config: ResolutionConfig
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def accepted_ids(self) -> tuple[str, ...]:
        return tuple(r.argument_id for r in self.accepted)


@dataclass(frozen=True)
class TraceStep:
    label: str  # P2 | P3 | gap
    source: str
    target: str
    note: str = ""


@dataclass(frozen=True)
class TraceCard:
    requirement: str
    origin_id: str
    origin_act: str
    origin_agent: str
    origin_round: int
    accepted_under: tuple[str, ...]
    backward_trace: tuple[TraceStep, ...]
    defense: tuple[ChainStep, ...]
    dimensions: tuple[str, ...]
    gaps: tuple[str, ...]


@dataclass(frozen=True)
class WhatIfResult:
    graph: AttackGraph
    resolution: Resolution
    entered: tuple[str, ...]
    left: tuple[str, ...]
    journal_entry: dict[str, Any]


class OverrideJournal:
    """Append-only record of human overrides; serialized with graph exports."""

    def __init__(self):
        self.entries: list[dict[str, Any]] = []

    def record(self, operation: str, payload: dict[str, Any]) -> dict[str, Any]:
        entry = {"timestamp": time.time(), "operation": operation, "payload": payload}
        self.entries.append(entry)
        return entry


def _select_extension(graph: AttackGraph, config: ResolutionConfig) -> tuple[Extension, dict[str, Any]]:
    af = graph.framework()
    metadata: dict[str, Any] = {}
    if config.semantics == GROUNDED:
        return grounded_extension(af), metadata
    extensions = preferred_extensions(af)
    metadata["preferred_count"] = len(extensions)
    if config.preferred_strategy == INTERSECTION:
        members = frozenset.intersection(*(e.members for e in extensions))
        return Extension(members, PREFERRED), metadata
    quality = {a.id: a.quality for a in graph.arguments}
    scores = [
        sum(config.weights[quality[m]] for m in ext.members) for ext in extensions
    ]
    best = max(scores)
    winners = [i for i, s in enumerate(scores) if abs(s - best) <= 1e-12]
    metadata["priority_tie"] = len(winners) > 1
    # Ties fall back to the canonical extension order from the semantics engine.
    return extensions[winners[0]], metadata


def resolve(graph: AttackGraph, config: ResolutionConfig | None = None) -> Resolution:
    """Compute the accepted set, per-argument statuses, chains, and requirements."""
    config = config or ResolutionConfig()
    missing = {a.quality for a in graph.arguments} - set(config.weights)
    if missing:
        raise ConfigError(f"weight map missing quality axes: {sorted(missing)}")
    extension, metadata = _select_extension(graph, config)
    members = extension.members
    attacked_by_members = {
        e.target for e in graph.attacks if e.attacker in members
    }
    status = {
        a.id: "in" if a.id in members else "out" if a.id in attacked_by_members else "undec"
        for a in graph.arguments
    }
    chains = {
        a.id: defense_chain(a.id, graph, members)
        for a in graph.arguments
        if a.id in members
    }
    accepted = tuple(
        AcceptedRequirement(a.content, a.id)
        for a in graph.arguments
        if a.id in members and a.act_type != "critique"
    )
    return Resolution(
        extension=extension,
        accepted=accepted,
        status=status,
        defense_chains=chains,
        config=config,
        metadata=metadata,
    )


def defense_chain(arg_id: str, graph: AttackGraph, members: frozenset[str]) -> DefenseChain:
    """For each attacker of ``arg_id``, the accepted counter-attacker and the
    label of the countering edge.  Unattacked arguments yield an empty chain.

    Grounded and single preferred extensions are admissible, so a counter
    always exists; the intersection of several preferred extensions may leave
    an attacker uncountered, recorded as a step with no defender.
    """
    if arg_id not in members:
        raise ResolutionDomainError(f"{arg_id} is not in the accepted extension")
    steps: list[ChainStep] = []
    attackers = sorted(
        {e.attacker for e in graph.edges_to(arg_id)}, key=argument_sort_key
    )
    for attacker in attackers:
        counters = sorted(
            (e for e in graph.edges_to(attacker) if e.attacker in members),
            key=lambda e: argument_sort_key(e.attacker),
        )
        if counters:
            steps.append(ChainStep(attacker, counters[0].attacker, counters[0].origin))
        else:
            steps.append(ChainStep(attacker, None, "uncountered"))
    return DefenseChain(arg_id, tuple(steps))


def _p2_chain(arg_id: str, graph: AttackGraph) -> tuple[list[str], list[str]]:
    """Backward supersedes walk; returns (chain member ids, gap notes)."""
    chain = [arg_id]
    gaps: list[str] = []
    known = {a.id for a in graph.arguments}
    current = arg_id
    while True:
        p2 = sorted(graph.edges_from(current, "P2"), key=lambda e: argument_sort_key(e.target))
        if not p2:
            break
        nxt = p2[0].target
        if nxt not in known:
            gaps.append(f"supersedes target {nxt} missing from the graph")
            break
        if nxt in chain:
            gaps.append(f"supersedes cycle at {nxt}")
            break
        chain.append(nxt)
        current = nxt
    return chain, gaps


def _trace_is_complete(arg_id: str, graph: AttackGraph) -> bool:
    """A trace is complete when the supersedes walk ends at a proposal and
    every critique resolved along the way has its own target inside the chain."""
    chain, gaps = _p2_chain(arg_id, graph)
    if gaps:
        return False
    terminal = graph.argument(chain[-1])
    if terminal.act_type != "proposal":
        return False
    chain_set = set(chain)
    for member in chain:
        for edge in graph.edges_from(member, "P3"):
            critique_targets = {e.target for e in graph.edges_from(edge.target, "P1")}
            if not critique_targets & chain_set:
                return False
    return True


def trace_completeness(resolution: Resolution, graph: AttackGraph) -> float | None:
    """Fraction of accepted requirements with a fully reconstructible trace.

    Absent (None) when nothing was accepted: 0/0 is reported as missing
    rather than as 0 or 1.
    """
    if not resolution.accepted:
        return None
    complete = sum(
        1 for r in resolution.accepted if _trace_is_complete(r.argument_id, graph)
    )
    return complete / len(resolution.accepted)


def trace_card(arg_id: str, resolution: Resolution, graph: AttackGraph) -> TraceCard:
    """Provenance record for one accepted requirement: backward P2/P3 walk to
    the originating proposal plus the defense chain, with pattern labels."""
    if arg_id not in {r.argument_id for r in resolution.accepted}:
        raise ResolutionDomainError(f"{arg_id} is not an accepted requirement")
    argument = graph.argument(arg_id)
    chain, gaps = _p2_chain(arg_id, graph)
    steps: list[TraceStep] = []
    for i, member in enumerate(chain):
        for edge in sorted(
            graph.edges_from(member, "P3"), key=lambda e: argument_sort_key(e.target)
        ):
            critique = edge.target
            p1 = {e.target for e in graph.edges_from(critique, "P1")}
            resolved_target = sorted(p1 & set(chain), key=argument_sort_key)
            note = (
                f"critique {critique} had targeted {resolved_target[0]}"
                if resolved_target
                else "critique target missing from chain"
            )
            if not resolved_target:
                gaps.append(f"critique {critique} resolved by {member} has no target in the chain")
            steps.append(TraceStep("P3", member, critique, note))
        if i + 1 < len(chain):
            steps.append(TraceStep("P2", member, chain[i + 1], "supersedes earlier version"))
    terminal = graph.argument(chain[-1])
    if terminal.act_type != "proposal":
        gaps.append(f"backward walk ends at {terminal.id} ({terminal.act_type}), not a proposal")
        steps.append(TraceStep("gap", chain[-1], chain[-1], "no originating proposal reachable"))

    af = graph.framework()
    accepted_under = tuple(
        name
        for name, ok in (
            ("grounded", arg_id in grounded_extension(af).members),
            ("preferred", all(arg_id in e.members for e in preferred_extensions(af))),
        )
        if ok
    )
    involved = set(chain) | {s.target for s in steps if s.label != "gap"} | {arg_id}
    involved |= {step.attacker for step in resolution.defense_chains[arg_id].steps}
    involved |= {
        step.defender
        for step in resolution.defense_chains[arg_id].steps
        if step.defender
    }
    dimensions = tuple(sorted({graph.argument(i).quality for i in involved}))
    return TraceCard(
        requirement=argument.content,
        origin_id=argument.id,
        origin_act=argument.act_type,
        origin_agent=argument.agent,
        origin_round=argument.source[1],
        accepted_under=accepted_under,
        backward_trace=tuple(steps),
        defense=resolution.defense_chains[arg_id].steps,
        dimensions=dimensions,
        gaps=tuple(gaps),
    )


def _delta(base: Resolution, new: Resolution) -> tuple[tuple[str, ...], tuple[str, ...]]:
    before, after = base.extension.members, new.extension.members
    entered = tuple(sorted(after - before, key=argument_sort_key))
    left = tuple(sorted(before - after, key=argument_sort_key))
    return entered, left


def what_if_remove_attack(
    graph: AttackGraph,
    attacker: str,
    target: str,
    config: ResolutionConfig | None = None,
    base: Resolution | None = None,
    journal: OverrideJournal | None = None,
) -> WhatIfResult:
    """Re-solve with one attack removed; the input graph is untouched."""
    config = config or ResolutionConfig()
    base = base or resolve(graph, config)
    new_graph = remove_edge(graph, attacker, target)
    resolution = resolve(new_graph, config)
    entered, left = _delta(base, resolution)
    payload = {"attacker": attacker, "target": target, "entered": list(entered), "left": list(left)}
    entry = (
        journal.record("remove_attack", payload)
        if journal
        else {"operation": "remove_attack", "payload": payload}
    )
    return WhatIfResult(new_graph, resolution, entered, left, entry)


def what_if_inject(
    graph: AttackGraph,
    argument: Argument,
    edges: Sequence[AttackEdge],
    config: ResolutionConfig | None = None,
    base: Resolution | None = None,
    journal: OverrideJournal | None = None,
) -> WhatIfResult:
    """Re-solve with a new argument and its attack edges inserted."""
    config = config or ResolutionConfig()
    base = base or resolve(graph, config)
    new_graph = add_argument(graph, argument, edges)
    resolution = resolve(new_graph, config)
    entered, left = _delta(base, resolution)
    payload = {
        "argument": argument.id,
        "edges": [[e.attacker, e.target] for e in edges],
        "entered": list(entered),
        "left": list(left),
    }
    entry = (
        journal.record("inject_argument", payload)
        if journal
        else {"operation": "inject_argument", "payload": payload}
    )
    return WhatIfResult(new_graph, resolution, entered, left, entry)
