"""Command-line entry point: run the pipeline, export artifacts, optionally
serve the what-if API.

Exit codes: 0 success, 1 runtime or provider failure, 2 usage error,
3 verification blocked on error-severity structural violations.
"""

from __future__ import annotations

import argparse
import os
import sys

from .exports import write_artifacts
from .pipeline import PipelineConfig, PipelineError, ProviderSet, run_pipeline
from .providers import ConstantConfidenceClassifier, HashedBagEmbedder
from .resolve import DEFAULT_AXES, uniform_weights

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VERIFICATION_BLOCKED = 3


def parse_weights(text: str) -> dict[str, float]:
    weights: dict[str, float] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, value = part.partition("=")
        if not value:
            raise argparse.ArgumentTypeError(f"weight {part!r} is not axis=value")
        weights[key.strip()] = float(value)
    return weights


def parse_sweep(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agora",
        description="Argumentation-based requirements negotiation pipeline",
        epilog=(
            "Provider overrides via environment: AGORA_CLASSIFIER_CONFIDENCE "
            "(stub conflict confidence), AGORA_EMBEDDER_DIM (hashed embedder width)."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="negotiation-log JSON document")
    source.add_argument("--scenario", help="scripted-agent scenario JSON")
    parser.add_argument("--semantics", choices=["grounded", "preferred"], default="grounded")
    parser.add_argument(
        "--preferred-strategy",
        choices=["intersection", "priority"],
        default="intersection",
        help="selection rule when several preferred extensions exist",
    )
    parser.add_argument(
        "--weights",
        type=parse_weights,
        default=None,
        help="quality-axis weights as safety=0.3,efficiency=0.175,...",
    )
    parser.add_argument("--theta", type=float, default=0.7, help="nominal classifier gate")
    parser.add_argument("--theta-floor", type=float, default=0.85, help="gate lower bound")
    parser.add_argument(
        "--theta-sweep",
        type=parse_sweep,
        default=(),
        help="comma-separated effective thresholds for the sweep table",
    )
    parser.add_argument("--arbitration", action="store_true", help="run the cross-pair arbitration round")
    parser.add_argument("--tau", type=float, default=0.85, help="similarity threshold")
    parser.add_argument("--tau-h", type=float, default=0.60, help="grounding-flag threshold")
    parser.add_argument("--seed", type=int, default=101)
    parser.add_argument("--corpus", help="grounding corpus JSON (packaged default otherwise)")
    parser.add_argument("--clauses", help="compliance clause JSON (packaged default otherwise)")
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--serve", action="store_true", help="serve the what-if API after the run")
    parser.add_argument("--port", type=int, default=8000)
    return parser


def providers_from_env() -> ProviderSet:
    kwargs = {}
    confidence = os.environ.get("AGORA_CLASSIFIER_CONFIDENCE")
    if confidence is not None:
        kwargs["classifier"] = ConstantConfidenceClassifier(confidence=float(confidence))
    dim = os.environ.get("AGORA_EMBEDDER_DIM")
    if dim is not None:
        kwargs["embedder"] = HashedBagEmbedder(dim=int(dim))
    return ProviderSet(**kwargs)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    weights = args.weights if args.weights else uniform_weights(DEFAULT_AXES)
    strategy = "priority_guided" if args.preferred_strategy == "priority" else "intersection"
    try:
        config = PipelineConfig(
            input_log=args.input,
            scenario=args.scenario,
            semantics=args.semantics,
            preferred_strategy=strategy,
            weights=weights,
            theta=args.theta,
            theta_floor=args.theta_floor,
            theta_sweep=args.theta_sweep,
            tau=args.tau,
            tau_h=args.tau_h,
            seed=args.seed,
            arbitration=args.arbitration,
            corpus_path=args.corpus,
            clauses_path=args.clauses,
            out_dir=args.out_dir,
        )
    except PipelineError as exc:
        parser.error(str(exc))  # exits with the usage code
        return 2
    try:
        result = run_pipeline(config, providers_from_env())
        written = write_artifacts(result, config.out_dir)
    except Exception as exc:  # provider failure, bad document, ...
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    members = ", ".join(sorted(result.resolution.extension.members))
    print(f"selected extension ({result.resolution.extension.semantics}): {{{members}}}")
    print(f"accepted requirements: {len(result.resolution.accepted)}")
    gci = result.stats.gci
    print(f"gci: {gci if gci is not None else 'absent'}")
    if result.report.blocked_at:
        print(f"verification blocked at {result.report.blocked_at}")
    for name, path in written.items():
        print(f"wrote {name}: {path}")
    for note in result.diagnostics:
        print(f"diagnostic: {note}", file=sys.stderr)

    if args.serve:
        import uvicorn

        from .service import app_from_pipeline

        app, _store, snapshot = app_from_pipeline(result)
        print(f"serving snapshot {snapshot.id} on port {args.port}")
        uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")

    if result.report.blocked_at:
        return EXIT_VERIFICATION_BLOCKED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
