"""Artifact serialization: argumentation graph, goal model (JSON and XML),
trace cards, verification report, run statistics, and sweep tables.

All JSON trees are built with deterministic key and element order so that a
fixed configuration and seed reproduce byte-identical files.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Any, Sequence

from .attacks import AttackGraph
from .kaos import KaosGraph
from .metrics import RunStats
from .pipeline import PipelineResult, SweepRow
from .resolve import Resolution, TraceCard
from .verify import VerificationReport

ARTIFACT_NAMES = {
    "graph": "argumentation_graph.json",
    "kaos": "kaos_model.json",
    "kaos_xml": "kaos_model.xml",
    "trace_cards": "trace_cards.json",
    "verification": "verification_report.json",
    "stats": "run_stats.json",
    "sweep": "sweep_table.json",
}


def graph_export(
    graph: AttackGraph,
    resolution: Resolution,
    config_echo: dict[str, Any] | None = None,
    journal: Sequence[dict[str, Any]] = (),
) -> dict[str, Any]:
    from .af import grounded_extension, preferred_extensions

    af = graph.framework()
    grounded = sorted(grounded_extension(af).members)
    preferred = [sorted(e.members) for e in preferred_extensions(af)]
    return {
        "arguments": [
            {
                "id": a.id,
                "act_type": a.act_type,
                "content": a.content,
                "agent": a.agent,
                "quality": a.quality,
                "rationale": a.rationale,
                "source": {
                    "session": a.source[0],
                    "round": a.source[1],
                    "turn_index": a.source[2],
                },
            }
            for a in graph.arguments
        ],
        "attacks": [
            {
                "attacker": e.attacker,
                "target": e.target,
                "origin": e.origin,
                "confidence": e.confidence,
                "rationale": e.rationale,
            }
            for e in graph.attacks
        ],
        "supports": [
            {"supporter": s.supporter, "supported": s.supported} for s in graph.supports
        ],
        "grounded_extension": grounded,
        "preferred_extensions": preferred,
        "selected_extension": {
            "semantics": resolution.extension.semantics,
            "members": sorted(resolution.extension.members),
        },
        "accepted_requirements": [
            {"argument_id": r.argument_id, "content": r.content} for r in resolution.accepted
        ],
        "statuses": dict(sorted(resolution.status.items())),
        "defense_chains": {
            root: [
                {"attacker": s.attacker, "defender": s.defender, "origin": s.origin}
                for s in chain.steps
            ]
            for root, chain in sorted(resolution.defense_chains.items())
        },
        "config": config_echo or {},
        "journal": list(journal),
    }


def kaos_export(kaos: KaosGraph) -> dict[str, Any]:
    return {
        "goals": [
            {
                "goal_id": g.goal_id,
                "description": g.description,
                "quality_dimension": g.quality_dimension,
                "level": g.level,
                "rationale": g.rationale,
                "provenance": list(g.provenance),
                "merged_ancestors": list(g.merged_ancestors),
            }
            for g in kaos.goals
        ],
        "links": [
            {"parent": l.parent, "child": l.child, "mode": l.mode} for l in kaos.links
        ],
        "repairs": list(kaos.repairs),
    }


def kaos_xml(kaos: KaosGraph) -> str:
    """Element-per-goal XML rendering of the goal tree for toolchain interop."""
    root = ET.Element("goalmodel")
    for goal in kaos.goals:
        node = ET.SubElement(
            root,
            "goal",
            id=goal.goal_id,
            level=goal.level,
            quality=goal.quality_dimension,
        )
        ET.SubElement(node, "description").text = goal.description
        ET.SubElement(node, "rationale").text = goal.rationale
        for arg_id in goal.provenance:
            ET.SubElement(node, "provenance", argument=arg_id)
        for arg_id in goal.merged_ancestors:
            ET.SubElement(node, "ancestor", argument=arg_id)
    for link in kaos.links:
        ET.SubElement(root, "refinement", parent=link.parent, child=link.child, mode=link.mode)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def trace_card_export(card: TraceCard) -> dict[str, Any]:
    return {
        "requirement": card.requirement,
        "origin": {
            "argument_id": card.origin_id,
            "act_type": card.origin_act,
            "agent": card.origin_agent,
            "round": card.origin_round,
        },
        "accepted_under": list(card.accepted_under),
        "backward_trace": [
            {"label": s.label, "source": s.source, "target": s.target, "note": s.note}
            for s in card.backward_trace
        ],
        "defense": [
            {"attacker": s.attacker, "defender": s.defender, "origin": s.origin}
            for s in card.defense
        ],
        "dimensions": list(card.dimensions),
        "gaps": list(card.gaps),
    }


def verification_export(report: VerificationReport) -> dict[str, Any]:
    tree: dict[str, Any] = {
        "violations": [
            {
                "rule": v.rule,
                "severity": v.severity,
                "subject": v.subject,
                "message": v.message,
            }
            for v in report.violations
        ],
        "hallucination_flags": [
            {
                "goal_id": f.goal_id,
                "nearest_passage": f.nearest_passage,
                "nearest_source": f.nearest_source,
                "similarity": f.similarity,
            }
            for f in report.hallucination_flags
        ],
        "blocked_at": report.blocked_at,
        "content_digest_before": report.content_digest_before,
        "content_digest_after": report.content_digest_after,
    }
    if report.compliance is None:
        tree["compliance"] = None
    else:
        tree["compliance"] = {
            "applicable_clauses": report.compliance.applicable_clauses,
            "satisfied": report.compliance.satisfied,
            "gamma": report.compliance.gamma,
            "results": [
                {
                    "clause_id": r.clause_id,
                    "satisfied": r.satisfied,
                    "satisfied_by": r.satisfied_by,
                    "rationale": r.rationale,
                }
                for r in report.compliance.results
            ],
            "notes": list(report.compliance.notes),
        }
    return tree


def stats_export(stats: RunStats) -> dict[str, Any]:
    return {
        "argument_count": stats.argument_count,
        "attack_count": stats.attack_count,
        "grounded_size": stats.grounded_size,
        "preferred_size": stats.preferred_size,
        "trace_completeness": stats.trace_completeness,
        "gci": stats.gci,
        "pattern_mix": dict(sorted(stats.pattern_mix.items())),
        "depth": stats.depth,
        "component_count": stats.component_count,
        "per_axis_accepted": dict(sorted(stats.per_axis_accepted.items())),
        "mac": stats.mac,
        "notes": dict(stats.notes),
    }


def sweep_export(rows: Sequence[SweepRow]) -> dict[str, Any]:
    return {
        "rows": [
            {
                "theta_eff": r.theta_eff,
                "semantic_edges": r.semantic_edges,
                "gci": r.gci,
                "grounded_size": r.grounded_size,
                "preferred_size": r.preferred_size,
                "divergence": r.divergence,
            }
            for r in rows
        ]
    }


def config_echo(result: PipelineResult) -> dict[str, Any]:
    config = result.config
    return {
        "semantics": config.semantics,
        "preferred_strategy": config.preferred_strategy,
        "weights": dict(sorted(config.weights.items())),
        "theta": config.theta,
        "theta_floor": config.theta_floor,
        "theta_eff": config.gate().theta_eff,
        "tau": config.tau,
        "tau_h": config.tau_h,
        "seed": config.seed,
        "arbitration": config.arbitration,
    }


def write_artifacts(result: PipelineResult, out_dir: str | Path) -> dict[str, Path]:
    """Write every artifact and return the name -> path map."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    def emit(key: str, tree: Any) -> None:
        path = out / ARTIFACT_NAMES[key]
        path.write_text(json.dumps(tree, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        written[key] = path

    emit("graph", graph_export(result.graph, result.resolution, config_echo(result)))
    emit("kaos", kaos_export(result.kaos))
    xml_path = out / ARTIFACT_NAMES["kaos_xml"]
    xml_path.write_text(kaos_xml(result.kaos), encoding="utf-8")
    written["kaos_xml"] = xml_path
    emit("trace_cards", {"cards": [trace_card_export(c) for c in result.trace_cards]})
    emit("verification", verification_export(result.report))
    emit("stats", stats_export(result.stats))
    if result.sweep:
        emit("sweep", sweep_export(result.sweep))
    return written
