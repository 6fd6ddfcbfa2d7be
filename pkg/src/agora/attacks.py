"""Attack-relation construction: structural patterns, gated semantic edges,
survivor selection, cross-pair arbitration, and support validation.

Three deterministic patterns cover intra-session conflicts:

* P1 - a critique attacks every turn it explicitly targets,
* P2 - a refinement attacks the same-agent proposal it supersedes,
* P3 - a refinement attacks every critique it resolves.

Cross-session conflicts go through a confidence-gated classifier; edges are
retained only at confidence >= theta_eff = max(theta_floor, theta).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .af import Framework
from .logs import Argument, NegotiationLog, argument_for_turn, next_argument_id
from .providers import (
    ConflictClassifier,
    SimilarityScorer,
    TokenOverlapScorer,
    conservative_classifier,
    tokens,
)

logger = logging.getLogger(__name__)

RULE_ORIGINS = ("P1", "P2", "P3")
ORIGINS = RULE_ORIGINS + ("semantic", "arbitration", "manual")


class AttackGraphError(ValueError):
    """Edge endpoints or graph composition violate the attack-graph contract."""


@dataclass(frozen=True)
class AttackEdge:
    attacker: str
    target: str
    origin: str
    confidence: float = 1.0
    rationale: str = ""

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise AttackGraphError(f"unknown edge origin {self.origin!r}")
        if self.origin in RULE_ORIGINS and self.attacker == self.target:
            raise AttackGraphError("rule-based edges cannot be self-attacks")
        if not 0.0 <= self.confidence <= 1.0:
            raise AttackGraphError("confidence must be within [0, 1]")


@dataclass(frozen=True)
class SupportEdge:
    supporter: str
    supported: str


@dataclass(frozen=True)
class GateConfig:
    """Confidence gate for classifier-proposed edges: theta_eff = max(floor, theta)."""

    theta: float = 0.7
    theta_floor: float = 0.85

    def __post_init__(self):
        for name, value in (("theta", self.theta), ("theta_floor", self.theta_floor)):
            if not 0.0 <= value <= 1.0:
                raise AttackGraphError(f"{name} must be within [0, 1]")

    @property
    def theta_eff(self) -> float:
        return max(self.theta_floor, self.theta)


@dataclass(frozen=True)
class AttackGraph:
    """Arguments plus labeled attack edges (and optional support edges)."""

    arguments: tuple[Argument, ...]
    attacks: tuple[AttackEdge, ...]
    supports: tuple[SupportEdge, ...] = ()

    def __post_init__(self):
        ids = {a.id for a in self.arguments}
        if len(ids) != len(self.arguments):
            raise AttackGraphError("duplicate argument ids")
        for edge in self.attacks:
            if edge.attacker not in ids or edge.target not in ids:
                raise AttackGraphError(f"edge endpoint unknown: {edge.attacker}->{edge.target}")
        for sup in self.supports:
            if sup.supporter not in ids or sup.supported not in ids:
                raise AttackGraphError("support endpoint unknown")

    def framework(self) -> Framework:
        return Framework(
            (a.id for a in self.arguments),
            ((e.attacker, e.target) for e in self.attacks),
        )

    def argument(self, arg_id: str) -> Argument:
        for a in self.arguments:
            if a.id == arg_id:
                return a
        raise AttackGraphError(f"unknown argument id {arg_id!r}")

    def pattern_labels(self) -> dict[tuple[str, str], str]:
        return {(e.attacker, e.target): e.origin for e in self.attacks}

    def edges_from(self, arg_id: str, origin: str | None = None) -> list[AttackEdge]:
        return [
            e for e in self.attacks
            if e.attacker == arg_id and (origin is None or e.origin == origin)
        ]

    def edges_to(self, arg_id: str, origin: str | None = None) -> list[AttackEdge]:
        return [
            e for e in self.attacks
            if e.target == arg_id and (origin is None or e.origin == origin)
        ]


def rule_based_attacks(args: Sequence[Argument], log: NegotiationLog) -> list[AttackEdge]:
    """P1/P2/P3 edges from explicit turn references; intra-session only."""
    edges: list[AttackEdge] = []
    for arg in args:
        session_id = arg.source[0]
        if arg.act_type == "critique":
            for ref in _turn_refs(log, session_id, arg, "targets"):
                target = argument_for_turn(args, ref.session, ref.turn_index)
                if target is None:
                    continue
                if target.act_type == "critique":
                    logger.warning(
                        "P1 edge %s->%s targets another critique", arg.id, target.id
                    )
                edges.append(AttackEdge(arg.id, target.id, "P1", rationale=arg.rationale))
        elif arg.act_type == "refinement":
            superseded = _turn_refs(log, session_id, arg, "supersedes")
            for ref in superseded:
                target = argument_for_turn(args, ref.session, ref.turn_index)
                if target is None:
                    continue
                if target.agent != arg.agent:
                    logger.warning(
                        "refinement %s supersedes a turn by a different agent; no P2 edge",
                        arg.id,
                    )
                    continue
                edges.append(
                    AttackEdge(arg.id, target.id, "P2", rationale="supersedes earlier version")
                )
            for ref in _turn_refs(log, session_id, arg, "resolves"):
                target = argument_for_turn(args, ref.session, ref.turn_index)
                if target is None:
                    continue
                edges.append(
                    AttackEdge(arg.id, target.id, "P3", rationale="resolves raised concern")
                )
    return edges


def _turn_refs(log: NegotiationLog, session_id: str, arg: Argument, kind: str):
    for session in log.sessions:
        if session.id != session_id:
            continue
        for turn in session.turns:
            if turn.turn_index == arg.source[2]:
                if kind == "targets":
                    return turn.targets
                if kind == "resolves":
                    return turn.resolves
                return (turn.supersedes,) if turn.supersedes else ()
    return ()


def session_survivors(
    args: Sequence[Argument],
    rule_edges: Sequence[AttackEdge],
    session_id: str,
) -> list[Argument]:
    """Proposal/refinement arguments with no incoming intra-session rule edge.

    When every candidate is defeated, the latest refinement (highest round,
    then turn index) stands in as the session representative.
    """
    local = [a for a in args if a.source[0] == session_id]
    candidates = [a for a in local if a.act_type in ("proposal", "refinement")]
    if not candidates:
        logger.warning("session %s has no proposal or refinement arguments", session_id)
        return []
    local_ids = {a.id for a in local}
    attacked = {
        e.target
        for e in rule_edges
        if e.origin in RULE_ORIGINS and e.attacker in local_ids and e.target in local_ids
    }
    survivors = [a for a in candidates if a.id not in attacked]
    if survivors:
        return survivors
    refinements = [a for a in candidates if a.act_type == "refinement"]
    pool = refinements or candidates
    latest = max(pool, key=lambda a: (a.source[1], a.source[2]))
    return [latest]


def semantic_conflict_edges(
    survivor_pairs: Iterable[tuple[Argument, Argument]],
    classifier: ConflictClassifier,
    gate: GateConfig,
    diagnostics: list[str] | None = None,
) -> list[AttackEdge]:
    """Classifier-gated edges for cross-session survivor pairs.

    A symmetric conflict yields a mutual edge pair; an asymmetric verdict
    yields a single directed edge from the first argument of the pair.
    Classifier failures skip the pair and are recorded, never silently lost.
    """
    edges: list[AttackEdge] = []
    for a, b in survivor_pairs:
        if a.source[0] == b.source[0]:
            raise AttackGraphError("semantic conflict pairs must span distinct sessions")
        try:
            verdict = classifier(a, b)
        except Exception as exc:  # provider fault: record and move on
            message = f"classifier failed on ({a.id}, {b.id}): {exc}"
            logger.error(message)
            if diagnostics is not None:
                diagnostics.append(message)
            continue
        if not verdict.is_conflict or verdict.confidence < gate.theta_eff:
            continue
        edges.append(
            AttackEdge(a.id, b.id, "semantic", verdict.confidence, verdict.rationale)
        )
        if verdict.symmetric:
            edges.append(
                AttackEdge(b.id, a.id, "semantic", verdict.confidence, verdict.rationale)
            )
    return edges


def cross_pair_arbitration(
    survivors_by_session: Mapping[str, Sequence[Argument]],
    scorer: SimilarityScorer,
    tau: float,
    all_args: Sequence[Argument],
) -> tuple[list[Argument], list[AttackEdge]]:
    """One arbitration exchange per shared-resource overlap across sessions.

    For each cross-session survivor pair scoring >= tau, each side's agent
    critiques the other's accepted argument; the exchange is recorded as two
    synthesized critique arguments plus one mutual edge pair between the
    overlapping arguments, labeled ``arbitration``.  Runs at most once.
    """
    new_args: list[Argument] = []
    new_edges: list[AttackEdge] = []
    session_ids = sorted(survivors_by_session)
    arb_index = 0
    for i, s_a in enumerate(session_ids):
        for s_b in session_ids[i + 1:]:
            for x in survivors_by_session[s_a]:
                for y in survivors_by_session[s_b]:
                    score = scorer(x.content, y.content)
                    if score < tau:
                        continue
                    phrase = _overlap_phrase(x.content, y.content)
                    crit_x = _arbitration_critique(
                        x, y, phrase, next_argument_id(list(all_args) + new_args), arb_index + 1
                    )
                    crit_y = _arbitration_critique(
                        y, x, phrase, next_argument_id(list(all_args) + new_args + [crit_x]),
                        arb_index + 2,
                    )
                    arb_index += 2
                    new_args.extend([crit_x, crit_y])
                    rationale = (
                        f"shared-resource overlap on '{phrase}' "
                        f"(similarity {score:.2f}; critiques {crit_x.id}, {crit_y.id})"
                    )
                    new_edges.append(AttackEdge(x.id, y.id, "arbitration", 1.0, rationale))
                    new_edges.append(AttackEdge(y.id, x.id, "arbitration", 1.0, rationale))
    return new_args, new_edges


def _arbitration_critique(
    own: Argument, other: Argument, phrase: str, arg_id: str, turn_index: int
) -> Argument:
    content = (
        f"Allocating '{phrase}' to \"{other.content}\" conflicts with "
        f"the {own.quality} commitment \"{own.content}\""
    )
    return Argument(
        id=arg_id,
        act_type="critique",
        content=content,
        agent=own.agent,
        quality=own.quality,
        rationale=f"arbitration exchange over shared resource '{phrase}'",
        source=("arbitration", 1, turn_index),
    )


def _overlap_phrase(a: str, b: str, limit: int = 4) -> str:
    shared = set(tokens(a)) & set(tokens(b))
    ordered = [t for t in tokens(a) if t in shared]
    unique: list[str] = []
    for t in ordered:
        if t not in unique:
            unique.append(t)
    return " ".join(unique[:limit])


def validate_support(
    supports: Sequence[SupportEdge], attacks: Sequence[AttackEdge]
) -> list[str]:
    """Supporters are expected to counter-attack attackers of what they support."""
    attack_pairs = {(e.attacker, e.target) for e in attacks}
    warnings: list[str] = []
    for sup in supports:
        attackers = {a for a, t in attack_pairs if t == sup.supported}
        for attacker in sorted(attackers):
            if attacker == sup.supporter:
                continue
            if (sup.supporter, attacker) not in attack_pairs:
                warnings.append(
                    f"{sup.supporter} supports {sup.supported} but does not "
                    f"counter its attacker {attacker}"
                )
    return warnings


def pinned_attack_edges(
    log: NegotiationLog, args: Sequence[Argument]
) -> list[AttackEdge]:
    """Attack edges pinned in log metadata (e.g. reviewed classifier output)."""
    ids = {a.id for a in args}
    edges: list[AttackEdge] = []
    for pin in log.pinned_attacks:
        attacker, target = pin["attacker"], pin["target"]
        if attacker not in ids or target not in ids:
            raise AttackGraphError(f"pinned edge endpoint unknown: {attacker}->{target}")
        edges.append(
            AttackEdge(
                attacker,
                target,
                pin.get("origin", "manual"),
                float(pin.get("confidence", 1.0)),
                pin.get("rationale", "pinned edge"),
            )
        )
        if pin.get("symmetric"):
            edges.append(
                AttackEdge(
                    target,
                    attacker,
                    pin.get("origin", "manual"),
                    float(pin.get("confidence", 1.0)),
                    pin.get("rationale", "pinned edge"),
                )
            )
    return edges


def construct_attack_graph(
    args: Sequence[Argument],
    log: NegotiationLog,
    gate: GateConfig | None = None,
    classifier: ConflictClassifier | None = None,
    scorer: SimilarityScorer | None = None,
    arbitration: bool = False,
    arbitration_tau: float = 0.85,
    supports: Sequence[SupportEdge] = (),
    diagnostics: list[str] | None = None,
) -> AttackGraph:
    """Assemble the full attack graph for an extracted argument set."""
    gate = gate or GateConfig()
    classifier = classifier or conservative_classifier()
    scorer = scorer or TokenOverlapScorer()

    edges: list[AttackEdge] = rule_based_attacks(args, log)
    edges.extend(pinned_attack_edges(log, args))

    session_ids = [s.id for s in log.sessions]
    survivors = {sid: session_survivors(args, edges, sid) for sid in session_ids}

    pairs: list[tuple[Argument, Argument]] = []
    for i, s_a in enumerate(session_ids):
        for s_b in session_ids[i + 1:]:
            for x in survivors[s_a]:
                for y in survivors[s_b]:
                    pairs.append((x, y))
    edges.extend(semantic_conflict_edges(pairs, classifier, gate, diagnostics))

    all_args = list(args)
    if arbitration:
        new_args, arb_edges = cross_pair_arbitration(
            survivors, scorer, arbitration_tau, all_args
        )
        all_args.extend(new_args)
        edges.extend(arb_edges)

    deduped: dict[tuple[str, str], AttackEdge] = {}
    for edge in edges:
        key = (edge.attacker, edge.target)
        if key in deduped:
            logger.info("dropping duplicate edge %s (kept %s)", edge, deduped[key].origin)
            continue
        deduped[key] = edge
    return AttackGraph(tuple(all_args), tuple(deduped.values()), tuple(supports))


def remove_edge(graph: AttackGraph, attacker: str, target: str) -> AttackGraph:
    remaining = tuple(
        e for e in graph.attacks if not (e.attacker == attacker and e.target == target)
    )
    if len(remaining) == len(graph.attacks):
        raise AttackGraphError(f"no such edge: ({attacker}, {target})")
    return replace(graph, attacks=remaining)


def add_argument(
    graph: AttackGraph, argument: Argument, edges: Sequence[AttackEdge]
) -> AttackGraph:
    if any(a.id == argument.id for a in graph.arguments):
        raise AttackGraphError(f"argument id collision: {argument.id!r}")
    return AttackGraph(
        graph.arguments + (argument,),
        graph.attacks + tuple(edges),
        graph.supports,
    )
