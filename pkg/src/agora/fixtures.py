"""Packaged fixtures: the sensor-fusion golden scenario, the two-session
arbitration overlap, the threshold-sweep candidates, and synthetic graphs
for latency checks.
"""

from __future__ import annotations

import json
from importlib import resources

from .attacks import AttackGraph, GateConfig, construct_attack_graph
from .logs import Argument, NegotiationLog, extract_arguments, parse_log
from .providers import ConflictVerdict, PairTableClassifier


def _data(name: str) -> str:
    return resources.files("agora.data").joinpath(name).read_text(encoding="utf-8")


def data_path(name: str):
    """Filesystem path of a packaged data file (for CLI-facing tests)."""
    return resources.files("agora.data").joinpath(name)


def golden_log() -> NegotiationLog:
    """The shipped sensor-fusion negotiation: one session, three rounds, six turns."""
    return parse_log(_data("ad_sensor_fusion.json"))


def golden_graph(include_pinned: bool = True) -> AttackGraph:
    """The golden attack graph: six rule-based edges plus one pinned semantic edge.

    ``include_pinned=False`` yields the rule-only variant (six edges), kept as
    a separate fixture because the semantic edge is classifier-derived rather
    than structural.
    """
    log = golden_log()
    if not include_pinned:
        log = NegotiationLog(
            sessions=log.sessions,
            project=log.project,
            config=log.config,
            pinned_attacks=(),
        )
    args = extract_arguments(log)
    return construct_attack_graph(args, log, gate=GateConfig())


def arbitration_log() -> NegotiationLog:
    """Two completed sessions whose surviving refinements share a latency budget."""
    return parse_log(_data("arbitration_pair.json"))


def sweep_log() -> NegotiationLog:
    """Four single-proposal sessions used by the threshold-sweep harness."""
    return parse_log(_data("sweep_candidates.json"))


def sweep_classifier() -> PairTableClassifier:
    """Fixed cross-pair confidences spanning [0.5, 0.9] for the sweep fixture.

    The 0.90 verdict is a confident non-conflict, so no edge survives a
    0.85 gate.
    """
    def conflict(conf: float) -> ConflictVerdict:
        return ConflictVerdict(True, conf, f"scripted conflict at {conf}", symmetric=True)

    return PairTableClassifier(
        {
            frozenset({"a1", "a2"}): conflict(0.84),
            frozenset({"a1", "a3"}): conflict(0.72),
            frozenset({"a1", "a4"}): conflict(0.62),
            frozenset({"a2", "a3"}): conflict(0.50),
            frozenset({"a2", "a4"}): conflict(0.55),
            frozenset({"a3", "a4"}): ConflictVerdict(False, 0.90, "confident non-conflict"),
        }
    )


def chain_session_graph(sessions: int = 9, extra_isolated: int = 3,
                        mutual_pairs: int = 3) -> AttackGraph:
    """Synthetic graph for latency checks: 3-argument chains per session plus
    isolated proposals, with mutual attack pairs between session survivors.

    Defaults produce exactly 30 arguments (9*3 + 3) and ``mutual_pairs``
    two-cycles, so both semantics and re-solves are exercised on a graph at
    the documented performance bound.
    """
    from .attacks import AttackEdge

    arguments: list[Argument] = []
    edges: list[AttackEdge] = []
    n = 0
    survivors: list[str] = []
    for s in range(sessions):
        sid = f"s{s + 1}"
        ids = []
        for t, act in enumerate(("proposal", "critique", "refinement"), start=1):
            n += 1
            arg_id = f"a{n}"
            ids.append(arg_id)
            arguments.append(
                Argument(
                    id=arg_id,
                    act_type=act,
                    content=f"requirement {arg_id} of session {sid}",
                    agent="Safety" if act != "critique" else "Efficiency",
                    quality="safety" if act != "critique" else "efficiency",
                    rationale="synthetic",
                    source=(sid, t, t),
                )
            )
        prop, crit, refi = ids
        edges.append(AttackEdge(crit, prop, "P1"))
        edges.append(AttackEdge(refi, prop, "P2"))
        edges.append(AttackEdge(refi, crit, "P3"))
        survivors.append(refi)
    for i in range(extra_isolated):
        n += 1
        arguments.append(
            Argument(
                id=f"a{n}",
                act_type="proposal",
                content=f"standalone requirement a{n}",
                agent="Green",
                quality="green",
                rationale="synthetic",
                source=(f"iso{i + 1}", 1, 1),
            )
        )
    for k in range(min(mutual_pairs, len(survivors) // 2)):
        x, y = survivors[2 * k], survivors[2 * k + 1]
        edges.append(AttackEdge(x, y, "arbitration", rationale="synthetic overlap"))
        edges.append(AttackEdge(y, x, "arbitration", rationale="synthetic overlap"))
    return AttackGraph(tuple(arguments), tuple(edges))


def load_default_corpus() -> list[dict]:
    return json.loads(_data("corpus.json"))["passages"]


def load_default_clauses() -> list[dict]:
    return json.loads(_data("clauses.json"))["clauses"]
