"""Metrics tests: assignment matching against a permutation oracle, run stats."""

from __future__ import annotations

import random

import pytest

from agora.attacks import construct_attack_graph
from agora.fixtures import arbitration_log, golden_graph
from agora.logs import extract_arguments
from agora.metrics import (
    MetricsError,
    RunStats,
    match_scores,
    run_stats,
    score_matrix,
    semantic_preservation,
)
from agora.providers import TokenOverlapScorer
from agora.resolve import ResolutionConfig, resolve, safety_critical_weights

from oracles import brute_max_matching_mean


class FixedMatrixScorer:
    def __init__(self, matrix):
        self.matrix = matrix

    def __call__(self, a: str, b: str) -> float:
        return self.matrix[int(a)][int(b)]


def texts(n):
    return [str(i) for i in range(n)]


class TestSemanticPreservation:
    def test_diagonal_matrix_example(self):
        scorer = FixedMatrixScorer([[0.9, 0.1], [0.2, 0.8]])
        assert semantic_preservation(texts(2), texts(2), scorer) == pytest.approx(0.85)

    def test_identical_singletons(self):
        assert semantic_preservation(["same text"], ["same text"], TokenOverlapScorer()) == 1.0

    def test_empty_list_is_input_error(self):
        with pytest.raises(MetricsError):
            semantic_preservation([], ["x"], TokenOverlapScorer())

    def test_matches_permutation_oracle_on_random_matrices(self):
        rng = random.Random(23)
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            matrix = [[rng.random() for _ in range(cols)] for _ in range(rows)]
            got = semantic_preservation(texts(rows), texts(cols), FixedMatrixScorer(matrix))
            assert got == pytest.approx(brute_max_matching_mean(matrix))

    def test_symmetric_under_transposition(self):
        rng = random.Random(29)
        matrix = [[rng.random() for _ in range(4)] for _ in range(3)]
        transposed = [[matrix[r][c] for r in range(3)] for c in range(4)]
        forward = semantic_preservation(texts(3), texts(4), FixedMatrixScorer(matrix))
        backward = semantic_preservation(texts(4), texts(3), FixedMatrixScorer(transposed))
        assert forward == pytest.approx(backward)

    def test_unmatched_items_are_listed(self):
        matrix = score_matrix(texts(2), texts(4), FixedMatrixScorer([[1.0] * 4] * 2))
        result = match_scores(matrix)
        assert len(result.pairs) == 2
        assert len(result.unmatched_cols) == 2
        assert result.unmatched_rows == ()


class TestRunStats:
    def test_golden_fixture_stats(self):
        graph = golden_graph()
        resolution = resolve(graph)
        stats = run_stats(resolution, graph)
        assert stats.argument_count == 6
        assert stats.attack_count == 7
        assert stats.grounded_size == 3
        assert stats.preferred_size == 3
        assert stats.gci == 0.0
        assert stats.trace_completeness == 1.0
        assert sum(stats.pattern_mix.values()) == 7

    def test_empty_framework_reports_absent_ratios(self):
        from agora.attacks import AttackGraph

        graph = AttackGraph((), ())
        resolution = resolve(graph)
        stats = run_stats(resolution, graph)
        assert stats.argument_count == 0
        assert stats.gci is None
        assert stats.trace_completeness is None

    def test_arbitration_fixture_divergence(self):
        log = arbitration_log()
        graph = construct_attack_graph(extract_arguments(log), log, arbitration=True)
        config = ResolutionConfig(weights=safety_critical_weights())
        resolution = resolve(graph, config)
        stats = run_stats(resolution, graph)
        assert stats.gci == 0.25
        assert stats.preferred_size >= stats.grounded_size

    def test_grounded_never_exceeds_selected_preferred(self):
        graph = golden_graph()
        resolution = resolve(graph)
        stats = run_stats(resolution, graph)
        assert stats.grounded_size <= stats.preferred_size

    def test_per_axis_histogram_and_mac(self):
        graph = golden_graph()
        resolution = resolve(graph)
        stats = run_stats(resolution, graph, axes=("safety", "efficiency"))
        assert stats.per_axis_accepted == {"safety": 2, "efficiency": 1}
        assert stats.mac == 1

    def test_stats_are_pure_summary(self):
        graph = golden_graph()
        resolution = resolve(graph)
        assert run_stats(resolution, graph) == run_stats(resolution, graph)
