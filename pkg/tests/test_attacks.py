"""Attack construction: patterns, survivors, gating, arbitration, support."""

from __future__ import annotations

import pytest

from agora.af import graph_stats, grounded_extension, preferred_extensions
from agora.attacks import (
    AttackEdge,
    AttackGraph,
    AttackGraphError,
    GateConfig,
    SupportEdge,
    construct_attack_graph,
    cross_pair_arbitration,
    rule_based_attacks,
    semantic_conflict_edges,
    session_survivors,
    validate_support,
)
from agora.fixtures import arbitration_log, golden_log, sweep_classifier, sweep_log
from agora.logs import Argument, extract_arguments, parse_log
from agora.providers import (
    ConstantConfidenceClassifier,
    FailingClassifier,
    TokenOverlapScorer,
    conservative_classifier,
)


def make_arg(arg_id, act, session, turn, agent="Safety", quality="safety", content=None):
    return Argument(
        id=arg_id,
        act_type=act,
        content=content or f"text {arg_id}",
        agent=agent,
        quality=quality,
        rationale="r",
        source=(session, 1, turn),
    )


class TestGate:
    def test_theta_eff_is_max(self):
        assert GateConfig(theta=0.9, theta_floor=0.85).theta_eff == 0.9
        assert GateConfig(theta=0.7, theta_floor=0.85).theta_eff == 0.85

    def test_out_of_range_rejected(self):
        with pytest.raises(AttackGraphError):
            GateConfig(theta=1.2)


class TestRulePatterns:
    def test_golden_edge_list(self):
        log = golden_log()
        args = extract_arguments(log)
        edges = {(e.attacker, e.target): e.origin for e in rule_based_attacks(args, log)}
        assert edges == {
            ("a2", "a1"): "P1",
            ("a3", "a1"): "P2",
            ("a3", "a2"): "P3",
            ("a4", "a3"): "P1",
            ("a5", "a3"): "P2",
            ("a5", "a4"): "P3",
        }

    def test_proposals_only_yield_no_edges(self):
        doc = {
            "sessions": [
                {
                    "id": "s1",
                    "agents": ["Safety"],
                    "turns": [
                        {
                            "round": 1,
                            "turn_index": i,
                            "agent": "Safety",
                            "act": "proposal",
                            "content": f"p{i}",
                            "quality_dimension": "safety",
                            "rationale": "r",
                        }
                        for i in (1, 2)
                    ],
                }
            ]
        }
        log = parse_log(doc)
        assert rule_based_attacks(extract_arguments(log), log) == []

    def test_cross_agent_supersedes_emits_no_p2(self, caplog):
        doc = {
            "sessions": [
                {
                    "id": "s1",
                    "agents": ["Safety", "Efficiency"],
                    "turns": [
                        {
                            "round": 1, "turn_index": 1, "agent": "Safety",
                            "act": "proposal", "content": "p", "quality_dimension": "safety",
                            "rationale": "r",
                        },
                        {
                            "round": 2, "turn_index": 2, "agent": "Efficiency",
                            "act": "refinement", "content": "q", "quality_dimension": "efficiency",
                            "rationale": "r",
                            "supersedes": {"session": "s1", "turn_index": 1},
                        },
                    ],
                }
            ]
        }
        log = parse_log(doc)
        with caplog.at_level("WARNING"):
            edges = rule_based_attacks(extract_arguments(log), log)
        assert edges == []
        assert any("different agent" in r.message for r in caplog.records)

    def test_rule_edges_never_cross_sessions(self):
        log = arbitration_log()
        args = extract_arguments(log)
        by_id = {a.id: a for a in args}
        for edge in rule_based_attacks(args, log):
            assert by_id[edge.attacker].source[0] == by_id[edge.target].source[0]


class TestSurvivors:
    def test_golden_survivors(self):
        log = golden_log()
        args = extract_arguments(log)
        edges = rule_based_attacks(args, log)
        survivors = session_survivors(args, edges, "ad_sensor_fusion")
        assert [a.id for a in survivors] == ["a5", "a6"]

    def test_single_uncontested_proposal_survives(self):
        args = [make_arg("a1", "proposal", "s1", 1)]
        assert [a.id for a in session_survivors(args, [], "s1")] == ["a1"]

    def test_fallback_to_latest_refinement(self):
        args = [
            make_arg("a1", "proposal", "s1", 1),
            make_arg("a2", "refinement", "s1", 2),
            make_arg("a3", "refinement", "s1", 3),
        ]
        edges = [
            AttackEdge("a2", "a1", "P2"),
            AttackEdge("a3", "a2", "P2"),
            AttackEdge("a1", "a3", "P1"),  # synthetic: everyone defeated
        ]
        survivors = session_survivors(args, edges, "s1")
        assert [a.id for a in survivors] == ["a3"]

    def test_session_without_candidates_warns(self, caplog):
        args = [make_arg("a1", "critique", "s1", 1)]
        with caplog.at_level("WARNING"):
            assert session_survivors(args, [], "s1") == []
        assert any("no proposal" in r.message for r in caplog.records)


class TestSemanticGate:
    def pair(self):
        return (
            make_arg("a1", "proposal", "s1", 1, content="use budget for checks"),
            make_arg("a2", "proposal", "s2", 1, content="use budget for savings"),
        )

    def test_confidence_above_gate_yields_mutual_edges(self):
        classifier = ConstantConfidenceClassifier(confidence=0.90)
        edges = semantic_conflict_edges([self.pair()], classifier, GateConfig())
        assert {(e.attacker, e.target) for e in edges} == {("a1", "a2"), ("a2", "a1")}
        assert all(e.origin == "semantic" and e.confidence == 0.90 for e in edges)

    def test_confidence_below_gate_yields_nothing(self):
        classifier = ConstantConfidenceClassifier(confidence=0.70)
        assert semantic_conflict_edges([self.pair()], classifier, GateConfig()) == []

    def test_asymmetric_verdict_yields_single_edge(self):
        classifier = ConstantConfidenceClassifier(confidence=0.9, symmetric=False)
        edges = semantic_conflict_edges([self.pair()], classifier, GateConfig())
        assert [(e.attacker, e.target) for e in edges] == [("a1", "a2")]

    def test_same_session_pair_rejected(self):
        a = make_arg("a1", "proposal", "s1", 1)
        b = make_arg("a2", "proposal", "s1", 2)
        with pytest.raises(AttackGraphError):
            semantic_conflict_edges([(a, b)], conservative_classifier(), GateConfig())

    def test_classifier_failure_skips_pair_and_records(self, caplog):
        diagnostics: list[str] = []
        with caplog.at_level("ERROR"):
            edges = semantic_conflict_edges(
                [self.pair()], FailingClassifier(), GateConfig(), diagnostics
            )
        assert edges == []
        assert diagnostics and "classifier failed" in diagnostics[0]

    def test_lowering_gate_never_removes_edges(self):
        log = sweep_log()
        args = extract_arguments(log)
        classifier = sweep_classifier()
        pairs = [
            (args[i], args[j])
            for i in range(len(args))
            for j in range(i + 1, len(args))
        ]
        sizes = []
        for theta in (0.85, 0.80, 0.70, 0.60, 0.50):
            gate = GateConfig(theta=theta, theta_floor=theta)
            sizes.append(len(semantic_conflict_edges(pairs, classifier, gate)))
        assert sizes == sorted(sizes)


class TestArbitration:
    def test_overlap_produces_two_critiques_and_mutual_edges(self):
        log = arbitration_log()
        args = extract_arguments(log)
        edges = rule_based_attacks(args, log)
        survivors = {
            sid: session_survivors(args, edges, sid)
            for sid in ("fusion_latency", "power_budget")
        }
        new_args, new_edges = cross_pair_arbitration(
            survivors, TokenOverlapScorer(), 0.85, args
        )
        assert [a.id for a in new_args] == ["a7", "a8"]
        assert all(a.act_type == "critique" for a in new_args)
        assert {(e.attacker, e.target) for e in new_edges} == {("a3", "a6"), ("a6", "a3")}
        assert all(e.origin == "arbitration" for e in new_edges)

    def test_no_overlap_leaves_graph_unchanged(self):
        log = arbitration_log()
        args = extract_arguments(log)
        edges = rule_based_attacks(args, log)
        survivors = {
            sid: session_survivors(args, edges, sid)
            for sid in ("fusion_latency", "power_budget")
        }
        new_args, new_edges = cross_pair_arbitration(
            survivors, TokenOverlapScorer(), 0.99, args
        )
        assert new_args == [] and new_edges == []

    def test_one_overlap_on_eight_arguments_gives_quarter_gci(self):
        graph = construct_attack_graph(
            extract_arguments(arbitration_log()),
            arbitration_log(),
            arbitration=True,
        )
        assert len(graph.arguments) == 8
        stats = graph_stats(graph.framework())
        assert stats.gci == 0.25
        grounded = grounded_extension(graph.framework()).members
        assert "a3" not in grounded and "a6" not in grounded
        assert len(preferred_extensions(graph.framework())) == 2


class TestSupportValidation:
    def test_counterattacked_attacker_is_fine(self):
        supports = [SupportEdge("s", "p")]
        attacks = [AttackEdge("k", "p", "manual"), AttackEdge("s", "k", "manual")]
        assert validate_support(supports, attacks) == []

    def test_missing_counterattack_warns_once(self):
        supports = [SupportEdge("s", "p")]
        attacks = [AttackEdge("k", "p", "manual")]
        warnings = validate_support(supports, attacks)
        assert len(warnings) == 1 and "k" in warnings[0]

    def test_no_support_edges_no_warnings(self):
        assert validate_support([], [AttackEdge("a", "b", "manual")]) == []


class TestGraphAssembly:
    def test_conservative_default_keeps_graph_rule_based_and_acyclic(self):
        log = arbitration_log()
        graph = construct_attack_graph(extract_arguments(log), log)
        assert {e.origin for e in graph.attacks} <= {"P1", "P2", "P3"}
        assert graph_stats(graph.framework()).gci == 0.0

    def test_pattern_mix_sums_to_edge_count(self):
        from agora.fixtures import golden_graph

        graph = golden_graph()
        stats = graph_stats(graph.framework(), graph.pattern_labels())
        assert sum(stats.pattern_mix.values()) == len(graph.attacks)

    def test_edge_endpoints_always_exist(self):
        with pytest.raises(AttackGraphError):
            AttackGraph(
                (make_arg("a1", "proposal", "s1", 1),),
                (AttackEdge("a1", "zz", "manual"),),
            )
