"""Evaluation metrics: matched-pair semantic preservation and run statistics.

Semantic preservation builds a pairwise score matrix, solves the assignment
problem exactly (maximizing total score over min(|a|, |b|) matched pairs),
and averages the matched scores.  Unmatched texts are listed, not averaged.

Coverage uniformity has no mechanical definition and is deliberately not
computed; the per-axis histogram and the minimum axis count (MAC) are
reported instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .af import GraphStats, graph_stats, grounded_extension, preferred_extensions
from .attacks import AttackGraph
from .providers import SimilarityScorer
from .resolve import PRIORITY_GUIDED, Resolution, ResolutionConfig, resolve, trace_completeness


class MetricsError(ValueError):
    """Metric inputs outside the metric's domain."""


@dataclass(frozen=True)
class ScoreMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    scores: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.scores) != len(self.rows) or any(
            len(r) != len(self.cols) for r in self.scores
        ):
            raise MetricsError("score matrix dimensions must match the text lists")


@dataclass(frozen=True)
class MatchResult:
    score: float
    pairs: tuple[tuple[int, int], ...]
    unmatched_rows: tuple[int, ...]
    unmatched_cols: tuple[int, ...]


def score_matrix(
    a_texts: Sequence[str], b_texts: Sequence[str], scorer: SimilarityScorer
) -> ScoreMatrix:
    if not a_texts or not b_texts:
        raise MetricsError("semantic preservation needs non-empty text lists")
    return ScoreMatrix(
        rows=tuple(a_texts),
        cols=tuple(b_texts),
        scores=tuple(tuple(scorer(a, b) for b in b_texts) for a in a_texts),
    )


def match_scores(matrix: ScoreMatrix) -> MatchResult:
    """Exact maximum-total assignment over min(rows, cols) pairs."""
    scores = np.asarray(matrix.scores, dtype=float)
    row_idx, col_idx = linear_sum_assignment(scores, maximize=True)
    pairs = tuple(sorted(zip(row_idx.tolist(), col_idx.tolist())))
    matched_rows = {r for r, _ in pairs}
    matched_cols = {c for _, c in pairs}
    mean = float(scores[row_idx, col_idx].mean())
    return MatchResult(
        score=mean,
        pairs=pairs,
        unmatched_rows=tuple(i for i in range(len(matrix.rows)) if i not in matched_rows),
        unmatched_cols=tuple(j for j in range(len(matrix.cols)) if j not in matched_cols),
    )


def semantic_preservation(
    a_texts: Sequence[str], b_texts: Sequence[str], scorer: SimilarityScorer
) -> float:
    return match_scores(score_matrix(a_texts, b_texts, scorer)).score


@dataclass(frozen=True)
class RunStats:
    argument_count: int
    attack_count: int
    grounded_size: int
    preferred_size: int
    trace_completeness: float | None
    gci: float | None
    pattern_mix: Mapping[str, int]
    depth: int | None
    component_count: int
    per_axis_accepted: Mapping[str, int]
    mac: int | None
    notes: Mapping[str, str] = field(default_factory=dict)


def run_stats(
    resolution: Resolution,
    graph: AttackGraph,
    axes: Sequence[str] | None = None,
) -> RunStats:
    """Assemble the per-run structural and traceability statistics.

    ``preferred_size`` is the cardinality of the preferred extension the
    configured strategy selects; grounded size always comes from the grounded
    extension of the same graph.
    """
    af = graph.framework()
    stats: GraphStats = graph_stats(af, graph.pattern_labels())
    axes = tuple(axes) if axes is not None else tuple(sorted(resolution.config.weights))
    grounded_size = len(grounded_extension(af).members)
    preferred_resolution = resolve(
        graph,
        ResolutionConfig(
            semantics="preferred",
            preferred_strategy=PRIORITY_GUIDED,
            weights=resolution.config.weights,
        ),
    )
    quality = {a.id: a.quality for a in graph.arguments}
    histogram = {axis: 0 for axis in axes}
    for requirement in resolution.accepted:
        axis = quality[requirement.argument_id]
        histogram[axis] = histogram.get(axis, 0) + 1
    mac = min((histogram[a] for a in axes), default=None) if axes else None
    return RunStats(
        argument_count=stats.argument_count,
        attack_count=stats.attack_count,
        grounded_size=grounded_size,
        preferred_size=len(preferred_resolution.extension.members),
        trace_completeness=trace_completeness(resolution, graph),
        gci=stats.gci,
        pattern_mix=dict(stats.pattern_mix),
        depth=stats.depth,
        component_count=stats.component_count,
        per_axis_accepted=histogram,
        mac=mac,
        notes={
            "mac": "minimum count of accepted requirements across the configured quality axes",
        },
    )
