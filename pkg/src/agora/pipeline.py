"""End-to-end pipeline: log (or scenario) -> attack graph -> resolution ->
goal model -> verification -> statistics, plus the threshold-sweep harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

from .attacks import AttackGraph, GateConfig, construct_attack_graph
from .driver import run_scenario
from .fixtures import data_path
from .kaos import KaosGraph, integrate
from .logs import NegotiationLog, extract_arguments, load_log
from .metrics import RunStats, run_stats
from .providers import (
    ConflictClassifier,
    Embedder,
    EntailmentProvider,
    HashedBagEmbedder,
    SimilarityScorer,
    TokenOverlapEntailment,
    TokenOverlapScorer,
    conservative_classifier,
)
from .resolve import (
    GROUNDED,
    Resolution,
    ResolutionConfig,
    TraceCard,
    resolve,
    trace_card,
    uniform_weights,
)
from .verify import Clause, Passage, VerificationReport, load_clauses, load_corpus, verify


class PipelineError(ValueError):
    """Unusable pipeline configuration."""


@dataclass(frozen=True)
class ProviderSet:
    scorer: SimilarityScorer = field(default_factory=TokenOverlapScorer)
    classifier: ConflictClassifier = field(default_factory=conservative_classifier)
    embedder: Embedder = field(default_factory=HashedBagEmbedder)
    entailment: EntailmentProvider = field(default_factory=TokenOverlapEntailment)


@dataclass(frozen=True)
class PipelineConfig:
    input_log: str | Path | None = None
    scenario: str | Path | None = None
    semantics: str = GROUNDED
    preferred_strategy: str = "intersection"
    weights: Mapping[str, float] = field(default_factory=uniform_weights)
    theta: float = 0.7
    theta_floor: float = 0.85
    theta_sweep: tuple[float, ...] = ()
    tau: float = 0.85
    tau_h: float = 0.60
    seed: int = 101
    arbitration: bool = False
    corpus_path: str | Path | None = None
    clauses_path: str | Path | None = None
    out_dir: str | Path = "out"

    def __post_init__(self):
        for name in ("theta", "theta_floor", "tau", "tau_h"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise PipelineError(f"{name} must be within [0, 1]")
        for theta in self.theta_sweep:
            if not 0.0 <= theta <= 1.0:
                raise PipelineError("sweep thresholds must be within [0, 1]")
        if self.input_log is None and self.scenario is None:
            raise PipelineError("either an input log or a scenario is required")
        for path_attr in ("input_log", "scenario", "corpus_path", "clauses_path"):
            value = getattr(self, path_attr)
            if value is not None and not Path(value).exists():
                raise PipelineError(f"{path_attr} does not exist: {value}")

    def resolution_config(self) -> ResolutionConfig:
        return ResolutionConfig(
            semantics=self.semantics,
            preferred_strategy=self.preferred_strategy,
            weights=dict(self.weights),
        )

    def gate(self) -> GateConfig:
        return GateConfig(theta=self.theta, theta_floor=self.theta_floor)


@dataclass(frozen=True)
class SweepRow:
    theta_eff: float
    semantic_edges: int
    gci: float | None
    grounded_size: int
    preferred_size: int
    divergence: int


@dataclass
class PipelineResult:
    config: PipelineConfig
    log: NegotiationLog
    graph: AttackGraph
    resolution: Resolution
    kaos: KaosGraph
    report: VerificationReport
    stats: RunStats
    trace_cards: list[TraceCard]
    sweep: list[SweepRow] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def _load_verification_inputs(config: PipelineConfig) -> tuple[list[Passage], list[Clause]]:
    corpus_path = config.corpus_path or data_path("corpus.json")
    clauses_path = config.clauses_path or data_path("clauses.json")
    return load_corpus(corpus_path), load_clauses(clauses_path)


def build_graph(
    log: NegotiationLog,
    config: PipelineConfig,
    providers: ProviderSet,
    gate: GateConfig | None = None,
    diagnostics: list[str] | None = None,
) -> AttackGraph:
    return construct_attack_graph(
        extract_arguments(log),
        log,
        gate=gate or config.gate(),
        classifier=providers.classifier,
        scorer=providers.scorer,
        arbitration=config.arbitration,
        arbitration_tau=config.tau,
        diagnostics=diagnostics,
    )


def theta_sweep(
    log: NegotiationLog,
    config: PipelineConfig,
    providers: ProviderSet,
    thetas: Sequence[float],
) -> list[SweepRow]:
    """Rebuild the graph per effective threshold and record the cascade:
    semantic edge count, cyclicity, and grounded/preferred divergence."""
    from .af import graph_stats, grounded_extension
    from .resolve import PRIORITY_GUIDED

    rows: list[SweepRow] = []
    for theta in thetas:
        gate = GateConfig(theta=theta, theta_floor=theta)
        graph = build_graph(log, config, providers, gate=gate)
        semantic_edges = sum(1 for e in graph.attacks if e.origin == "semantic")
        af = graph.framework()
        stats = graph_stats(af)
        grounded_size = len(grounded_extension(af).members)
        preferred = resolve(
            graph,
            ResolutionConfig(
                semantics="preferred",
                preferred_strategy=PRIORITY_GUIDED,
                weights=dict(config.weights),
            ),
        )
        preferred_size = len(preferred.extension.members)
        rows.append(
            SweepRow(
                theta_eff=gate.theta_eff,
                semantic_edges=semantic_edges,
                gci=stats.gci,
                grounded_size=grounded_size,
                preferred_size=preferred_size,
                divergence=preferred_size - grounded_size,
            )
        )
    return rows


def run_pipeline(config: PipelineConfig, providers: ProviderSet | None = None) -> PipelineResult:
    providers = providers or ProviderSet()
    diagnostics: list[str] = []
    if config.scenario is not None:
        log = run_scenario(config.scenario, scorer=providers.scorer)
    else:
        log = load_log(config.input_log)

    graph = build_graph(log, config, providers, diagnostics=diagnostics)
    resolution = resolve(graph, config.resolution_config())

    by_id = {a.id: a for a in graph.arguments}
    accepted_args = [by_id[i] for i in resolution.accepted_ids()]
    kaos = integrate(
        accepted_args,
        graph,
        scorer=providers.scorer,
        weights=config.weights,
        project=log.project,
        tau=config.tau,
    )
    corpus, clauses = _load_verification_inputs(config)
    report = verify(
        kaos,
        graph,
        [r.content for r in resolution.accepted],
        corpus,
        clauses,
        embedder=providers.embedder,
        entailment=providers.entailment,
        tau_h=config.tau_h,
    )
    stats = run_stats(resolution, graph, axes=tuple(sorted(config.weights)))
    cards = [trace_card(r.argument_id, resolution, graph) for r in resolution.accepted]
    sweep = (
        theta_sweep(log, config, providers, config.theta_sweep)
        if config.theta_sweep
        else []
    )
    return PipelineResult(
        config=config,
        log=log,
        graph=graph,
        resolution=resolution,
        kaos=kaos,
        report=report,
        stats=stats,
        trace_cards=cards,
        sweep=sweep,
        diagnostics=diagnostics,
    )
