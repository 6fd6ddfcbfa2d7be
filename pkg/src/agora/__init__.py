"""agora: argumentation-based requirements negotiation.

Structured negotiation logs become attack graphs; accepted requirement sets
are computed under grounded and preferred semantics with full provenance;
accepted requirements integrate into a verified three-level goal model; and
a what-if service supports human overrides with sub-second re-solving.
"""

from .af import (
    AcceptanceStatus,
    Extension,
    Framework,
    FrameworkError,
    GraphStats,
    acceptance_status,
    defends,
    graph_stats,
    grounded_extension,
    is_conflict_free,
    preferred_extensions,
)
from .attacks import (
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
from .driver import (
    ProtocolConfig,
    ScriptedAgent,
    TurnSpec,
    detect_conflicts,
    run_negotiation,
    run_scenario,
    run_session,
)
from .kaos import GoalNode, KaosGraph, RefinementLink, integrate, repair_cycles
from .logs import (
    Argument,
    Component,
    NegotiationLog,
    Session,
    Turn,
    TurnRef,
    extract_arguments,
    load_log,
    parse_log,
    serialize_log,
)
from .metrics import RunStats, ScoreMatrix, match_scores, run_stats, semantic_preservation
from .pipeline import PipelineConfig, PipelineResult, ProviderSet, run_pipeline
from .resolve import (
    DefenseChain,
    OverrideJournal,
    Resolution,
    ResolutionConfig,
    TraceCard,
    defense_chain,
    resolve,
    safety_critical_weights,
    trace_card,
    trace_completeness,
    uniform_weights,
    what_if_inject,
    what_if_remove_attack,
)
from .verify import (
    Clause,
    Passage,
    VerificationReport,
    Violation,
    layer1_structural_check,
    verify,
)

__version__ = "0.1.0"
