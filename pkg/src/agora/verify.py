"""Three-layer goal-model verification: structural rules, nearest-neighbour
grounding checks, and clause-coverage scoring.

Verification is a pure annotation pass: it never modifies goal content,
asserted by hashing the goal contents before and after.  Error-severity
structural violations block the remaining layers.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .attacks import AttackGraph
from .kaos import KaosGraph, LEVELS, find_cycle
from .providers import (
    Embedder,
    EntailmentProvider,
    HashedBagEmbedder,
    TokenOverlapEntailment,
    cosine,
)

logger = logging.getLogger(__name__)

RULES = ("schema", "dag", "refinement", "root_connectivity", "cross_reference")
_LEVEL_RANK = {level: i for i, level in enumerate(LEVELS)}


class VerificationSetupError(ValueError):
    """Verification inputs unusable (e.g. empty grounding corpus)."""


@dataclass(frozen=True)
class Violation:
    rule: str
    severity: str  # error | warning
    subject: str
    message: str


@dataclass(frozen=True)
class HallucinationFlag:
    goal_id: str
    nearest_passage: str
    nearest_source: str
    similarity: float


@dataclass(frozen=True)
class Passage:
    text: str
    source: str = ""


@dataclass(frozen=True)
class Clause:
    clause_id: str
    text: str
    applicable: bool = True


@dataclass(frozen=True)
class ClauseResult:
    clause_id: str
    satisfied: bool
    satisfied_by: str | None
    rationale: str


@dataclass(frozen=True)
class Compliance:
    applicable_clauses: int
    satisfied: int
    gamma: float | None
    results: tuple[ClauseResult, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...]
    hallucination_flags: tuple[HallucinationFlag, ...]
    compliance: Compliance | None
    blocked_at: str | None
    content_digest_before: str
    content_digest_after: str

    def has_errors(self) -> bool:
        return any(v.severity == "error" for v in self.violations)


def load_corpus(path: str | Path) -> list[Passage]:
    tree = json.loads(Path(path).read_text(encoding="utf-8"))
    return [Passage(p["text"], p.get("source", "")) for p in tree.get("passages", [])]


def load_clauses(path: str | Path) -> list[Clause]:
    tree = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        Clause(c["clause_id"], c["text"], bool(c.get("applicable", True)))
        for c in tree.get("clauses", [])
    ]


def content_digest(graph: KaosGraph) -> str:
    payload = json.dumps(
        sorted(
            (g.goal_id, g.description, g.quality_dimension, g.level, g.rationale)
            for g in graph.goals
        ),
        ensure_ascii=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def layer1_structural_check(graph: KaosGraph, attack_graph: AttackGraph) -> list[Violation]:
    """The five structural rules, each producing data rather than exceptions."""
    violations: list[Violation] = []
    ids = graph.goal_ids()

    # Rule 1: schema completeness on every mandatory field.
    for goal in graph.goals:
        missing = [
            name
            for name, value in (
                ("goal_id", goal.goal_id),
                ("description", goal.description),
                ("quality_dimension", goal.quality_dimension),
                ("rationale", goal.rationale),
            )
            if not value
        ]
        if goal.level not in LEVELS:
            missing.append("level")
        if missing:
            violations.append(
                Violation("schema", "error", goal.goal_id or "<unnamed>",
                          f"missing mandatory fields: {', '.join(missing)}")
            )

    # Rule 2: the goal graph must be a DAG.
    cycle = find_cycle(graph)
    if cycle:
        violations.append(
            Violation("dag", "error", "->".join(cycle), "goal graph contains a cycle")
        )

    # Rule 3: refinement completeness and level discipline.
    children = {g.goal_id: graph.children_of(g.goal_id) for g in graph.goals}
    for goal in graph.goals:
        kids = children[goal.goal_id]
        if not kids and goal.level != "Operational":
            violations.append(
                Violation("refinement", "error", goal.goal_id,
                          f"leaf goal at {goal.level} level; leaves must be Operational")
            )
        and_kids = [
            l.child for l in graph.links if l.parent == goal.goal_id and l.mode == "AND"
        ]
        if len(and_kids) == 1 and len(kids) == 1:
            violations.append(
                Violation("refinement", "warning", goal.goal_id,
                          "single-child AND refinement; flagged for review")
            )
    for link in graph.links:
        if link.parent not in ids or link.child not in ids:
            violations.append(
                Violation("refinement", "error", f"{link.parent}->{link.child}",
                          "refinement link references an unknown goal")
            )
            continue
        parent_rank = _LEVEL_RANK.get(graph.goal(link.parent).level, 0)
        child_rank = _LEVEL_RANK.get(graph.goal(link.child).level, 0)
        if parent_rank >= child_rank:
            violations.append(
                Violation("refinement", "error", f"{link.parent}->{link.child}",
                          "refinement must descend the Strategic > Tactical > Operational order")
            )
        elif child_rank - parent_rank != 1:
            violations.append(
                Violation("refinement", "warning", f"{link.parent}->{link.child}",
                          "refinement skips a hierarchy level")
            )

    # Rule 4: every goal reachable from a Strategic root.
    roots = [g.goal_id for g in graph.goals if g.level == "Strategic"]
    if graph.goals and not roots:
        violations.append(
            Violation("root_connectivity", "error", "<graph>", "no Strategic root present")
        )
    else:
        reachable = set(roots)
        frontier = list(roots)
        while frontier:
            node = frontier.pop()
            for child in children.get(node, []):
                if child not in reachable:
                    reachable.add(child)
                    frontier.append(child)
        for goal in graph.goals:
            if goal.goal_id not in reachable:
                violations.append(
                    Violation("root_connectivity", "error", goal.goal_id,
                              "goal not reachable from any Strategic root")
                )

    # Rule 5: provenance ids must exist in the argumentation graph.
    known_args = {a.id for a in attack_graph.arguments}
    for goal in graph.goals:
        for arg_id in (*goal.provenance, *goal.merged_ancestors):
            if arg_id not in known_args:
                violations.append(
                    Violation("cross_reference", "error", goal.goal_id,
                              f"provenance id {arg_id} missing from the argumentation graph")
                )
    return violations


def verify(
    graph: KaosGraph,
    attack_graph: AttackGraph,
    accepted_texts: Sequence[str],
    corpus: Sequence[Passage],
    clauses: Sequence[Clause],
    embedder: Embedder | None = None,
    entailment: EntailmentProvider | None = None,
    tau_h: float = 0.60,
) -> VerificationReport:
    """Run all three layers; error-severity structural findings block 2 and 3."""
    embedder = embedder or HashedBagEmbedder()
    entailment = entailment or TokenOverlapEntailment()
    digest_before = content_digest(graph)

    violations = tuple(layer1_structural_check(graph, attack_graph))
    if any(v.severity == "error" for v in violations):
        return VerificationReport(
            violations=violations,
            hallucination_flags=(),
            compliance=None,
            blocked_at="layer2",
            content_digest_before=digest_before,
            content_digest_after=content_digest(graph),
        )

    if not corpus:
        raise VerificationSetupError("grounding corpus must not be empty")
    corpus_vectors = [(p, embedder(p.text)) for p in corpus]
    flags: list[HallucinationFlag] = []
    for goal in graph.goals:
        goal_vec = embedder(goal.description)
        best_passage, best_score = None, -1.0
        for passage, vec in corpus_vectors:
            score = cosine(goal_vec, vec)
            if score > best_score:
                best_passage, best_score = passage, score
        # Strictly below the threshold: an exact tau_h match is not flagged.
        if best_passage is not None and best_score < tau_h:
            flags.append(
                HallucinationFlag(goal.goal_id, best_passage.text, best_passage.source, best_score)
            )

    applicable = [c for c in clauses if c.applicable]
    results: list[ClauseResult] = []
    notes: list[str] = ["entailment records the first satisfying requirement"]
    satisfied = 0
    for clause in applicable:
        hit: ClauseResult | None = None
        for text in accepted_texts:
            verdict = entailment(clause.clause_id, clause.text, text)
            if verdict.satisfied:
                hit = ClauseResult(clause.clause_id, True, text, verdict.rationale)
                break
        if hit is None:
            hit = ClauseResult(clause.clause_id, False, None, "no accepted requirement entails the clause")
        else:
            satisfied += 1
        results.append(hit)
    gamma: float | None
    if applicable:
        gamma = satisfied / len(applicable)
    else:
        gamma = None
        notes.append("no applicable clauses; coverage reported as absent")
    compliance = Compliance(
        applicable_clauses=len(applicable),
        satisfied=satisfied,
        gamma=gamma,
        results=tuple(results),
        notes=tuple(notes),
    )
    return VerificationReport(
        violations=violations,
        hallucination_flags=tuple(flags),
        compliance=compliance,
        blocked_at=None,
        content_digest_before=digest_before,
        content_digest_after=content_digest(graph),
    )
