"""Goal-model integration: accepted requirements become a three-level goal DAG.

Accepted requirements land at the Operational level (composite requirements
expand into their structured components); Tactical goals are synthesized per
goal theme (defaulting to the quality axis) and one Strategic root anchors
the hierarchy.  Near-duplicate requirements merge with their trace links
retained, and a requirement superseding another accepted requirement absorbs
it as a traceable ancestor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .attacks import AttackGraph
from .logs import Argument
from .providers import SimilarityScorer, TokenOverlapScorer
from .resolve import argument_sort_key

logger = logging.getLogger(__name__)

LEVELS = ("Strategic", "Tactical", "Operational")
_LEVEL_RANK = {level: i for i, level in enumerate(LEVELS)}


class KaosError(ValueError):
    """Goal-graph composition violates the model contract."""


@dataclass(frozen=True)
class GoalNode:
    goal_id: str
    description: str
    quality_dimension: str
    level: str
    rationale: str
    provenance: tuple[str, ...] = ()
    merged_ancestors: tuple[str, ...] = ()


@dataclass(frozen=True)
class RefinementLink:
    parent: str
    child: str
    mode: str = "AND"

    def __post_init__(self):
        if self.mode not in ("AND", "OR"):
            raise KaosError(f"unknown refinement mode {self.mode!r}")
        if self.parent == self.child:
            raise KaosError("refinement links cannot be self-links")


@dataclass(frozen=True)
class KaosGraph:
    goals: tuple[GoalNode, ...]
    links: tuple[RefinementLink, ...]
    repairs: tuple[dict, ...] = ()

    def goal(self, goal_id: str) -> GoalNode:
        for g in self.goals:
            if g.goal_id == goal_id:
                return g
        raise KaosError(f"unknown goal id {goal_id!r}")

    def goal_ids(self) -> set[str]:
        return {g.goal_id for g in self.goals}

    def children_of(self, goal_id: str) -> list[str]:
        return [l.child for l in self.links if l.parent == goal_id]

    def by_level(self, level: str) -> list[GoalNode]:
        return [g for g in self.goals if g.level == level]


def is_acyclic(graph: KaosGraph) -> bool:
    return find_cycle(graph) is None


def find_cycle(graph: KaosGraph) -> list[str] | None:
    """First cycle as a goal-id path, or None; deterministic DFS order."""
    children: dict[str, list[str]] = {g.goal_id: [] for g in graph.goals}
    for link in graph.links:
        children[link.parent].append(link.child)
    for out in children.values():
        out.sort()
    WHITE, GREY, BLACK = 0, 1, 2
    color = {g: WHITE for g in children}
    path: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GREY
        path.append(node)
        for succ in children[node]:
            if color[succ] == GREY:
                return path[path.index(succ):] + [succ]
            if color[succ] == WHITE:
                cycle = visit(succ)
                if cycle:
                    return cycle
        color[node] = BLACK
        path.pop()
        return None

    for node in sorted(children):
        if color[node] == WHITE:
            cycle = visit(node)
            if cycle:
                return cycle
    return None


@dataclass(frozen=True)
class _Clause:
    text: str
    axis: str
    theme: str
    provenance: tuple[str, ...]
    ancestors: tuple[str, ...]
    rationale: str


def _accepted_carriers(
    accepted: Sequence[Argument], graph: AttackGraph
) -> list[tuple[Argument, tuple[str, ...]]]:
    """Accepted arguments not superseded by another accepted argument, paired
    with the accepted ancestors their refinement lineage absorbs."""
    accepted_ids = {a.id for a in accepted}
    superseded: set[str] = set()
    ancestry: dict[str, list[str]] = {}
    for argument in accepted:
        chain: list[str] = []
        current = argument.id
        seen = {current}
        while True:
            p2 = sorted(
                graph.edges_from(current, "P2"), key=lambda e: argument_sort_key(e.target)
            )
            if not p2 or p2[0].target in seen:
                break
            current = p2[0].target
            seen.add(current)
            if current in accepted_ids:
                chain.append(current)
                superseded.add(current)
        ancestry[argument.id] = chain
    carriers = [a for a in accepted if a.id not in superseded]
    return [(a, tuple(ancestry[a.id])) for a in carriers]


def integrate(
    accepted: Sequence[Argument],
    graph: AttackGraph,
    scorer: SimilarityScorer | None = None,
    weights: Mapping[str, float] | None = None,
    project: str = "",
    tau: float = 0.85,
) -> KaosGraph:
    """Build the three-level goal DAG from accepted (non-critique) arguments."""
    scorer = scorer or TokenOverlapScorer()
    accepted = [a for a in accepted if a.act_type != "critique"]
    if not accepted:
        logger.warning("no accepted requirements; returning an empty goal graph")
        return KaosGraph((), ())

    clauses: list[_Clause] = []
    for argument, ancestors in _accepted_carriers(accepted, graph):
        rationale = argument.rationale or f"Negotiated outcome contributed by {argument.agent}."
        parts = argument.components or None
        if parts:
            raw = [(c.text, c.axis, c.theme or _default_theme(c.axis)) for c in parts]
        else:
            raw = [(argument.content, argument.quality, _default_theme(argument.quality))]
        for text, axis, theme in raw:
            merged = False
            for i, kept in enumerate(clauses):
                if kept.axis == axis and scorer(kept.text, text) >= tau:
                    clauses[i] = replace(
                        kept,
                        provenance=_merge_ids(kept.provenance, (argument.id,)),
                        ancestors=_merge_ids(kept.ancestors, ancestors),
                    )
                    merged = True
                    break
            if not merged:
                clauses.append(
                    _Clause(text, axis, theme, (argument.id,), tuple(ancestors), rationale)
                )

    goals: list[GoalNode] = []
    links: list[RefinementLink] = []
    root_id = "G1"
    goals.append(
        GoalNode(
            goal_id=root_id,
            description=project or "Deliver the negotiated system objectives.",
            quality_dimension="overall",
            level="Strategic",
            rationale="Root objective synthesized from the project description.",
        )
    )
    themes: list[tuple[str, str]] = []  # (axis, theme) in first-seen order
    for clause in clauses:
        key = (clause.axis, clause.theme)
        if key not in themes:
            themes.append(key)
    tactical_ids: dict[tuple[str, str], str] = {}
    for i, (axis, theme) in enumerate(themes, start=2):
        goal_id = f"G{i}"
        tactical_ids[(axis, theme)] = goal_id
        goals.append(
            GoalNode(
                goal_id=goal_id,
                description=theme,
                quality_dimension=axis,
                level="Tactical",
                rationale=f"Tactical grouping of negotiated {axis} outcomes.",
            )
        )
        links.append(RefinementLink(root_id, goal_id))
    next_index = len(themes) + 2
    for clause in clauses:
        goal_id = f"G{next_index}"
        next_index += 1
        goals.append(
            GoalNode(
                goal_id=goal_id,
                description=clause.text,
                quality_dimension=clause.axis,
                level="Operational",
                rationale=clause.rationale,
                provenance=clause.provenance,
                merged_ancestors=clause.ancestors,
            )
        )
        links.append(RefinementLink(tactical_ids[(clause.axis, clause.theme)], goal_id))
    result = KaosGraph(tuple(goals), tuple(links))
    if not is_acyclic(result):
        raise KaosError("integration produced a cyclic goal graph")
    return result


def _default_theme(axis: str) -> str:
    return f"{axis.capitalize()} concerns"


def _merge_ids(current: tuple[str, ...], extra: Sequence[str]) -> tuple[str, ...]:
    merged = list(current)
    for item in extra:
        if item not in merged:
            merged.append(item)
    return tuple(merged)


def repair_cycles(graph: KaosGraph, weights: Mapping[str, float]) -> KaosGraph:
    """Remove cycle edges until the goal graph is acyclic.

    Each pass drops the cycle edge whose child carries the smallest
    quality-dimension weight (ties: the lexicographically larger child id)
    and re-attaches orphaned children under the Strategic root, bridging
    through a Tactical goal when levels require it.  Removals and re-links
    are journaled on the returned graph.
    """
    goals = list(graph.goals)
    links = list(graph.links)
    repairs = list(graph.repairs)
    while True:
        current = KaosGraph(tuple(goals), tuple(links))
        cycle = find_cycle(current)
        if cycle is None:
            break
        cycle_edges = [
            link
            for link in links
            if any(
                link.parent == cycle[i] and link.child == cycle[i + 1]
                for i in range(len(cycle) - 1)
            )
        ]
        victim = min(
            cycle_edges,
            key=lambda l: (
                weights.get(current.goal(l.child).quality_dimension, 0.0),
                tuple(-ord(c) for c in l.child),
            ),
        )
        links.remove(victim)
        repairs.append({"removed": [victim.parent, victim.child], "cycle": cycle})
        orphan = victim.child
        if not any(l.child == orphan for l in links):
            new_links, new_goals = _reattach(orphan, goals, links)
            for link in new_links:
                links.append(link)
                repairs.append({"added": [link.parent, link.child]})
            goals.extend(new_goals)
    return KaosGraph(tuple(goals), tuple(links), tuple(repairs))


def _reattach(
    orphan_id: str, goals: list[GoalNode], links: list[RefinementLink]
) -> tuple[list[RefinementLink], list[GoalNode]]:
    by_id = {g.goal_id: g for g in goals}
    orphan = by_id[orphan_id]
    roots = sorted(g.goal_id for g in goals if g.level == "Strategic")
    if not roots or orphan.level == "Strategic":
        return [], []
    root = roots[0]
    if orphan.level == "Tactical":
        return [RefinementLink(root, orphan_id)], []
    tacticals = sorted(
        g.goal_id
        for g in goals
        if g.level == "Tactical" and g.quality_dimension == orphan.quality_dimension
    )
    if tacticals:
        return [RefinementLink(tacticals[0], orphan_id)], []
    bridge = GoalNode(
        goal_id=f"{root}.bridge.{orphan.quality_dimension}",
        description=_default_theme(orphan.quality_dimension),
        quality_dimension=orphan.quality_dimension,
        level="Tactical",
        rationale="Bridge goal inserted to preserve the three-level hierarchy.",
    )
    return [RefinementLink(root, bridge.goal_id), RefinementLink(bridge.goal_id, orphan_id)], [bridge]
