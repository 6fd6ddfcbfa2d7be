"""Pluggable provider interfaces and their deterministic stubs.

Production deployments back these with embedding / NLI / LLM services; the
shipped implementations are deterministic so the formal layer can be tested
without models.  All stubs are stateless and safe for concurrent use.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence

from .logs import Argument

_TOKEN = re.compile(r"[a-z0-9]+")


def tokens(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


@dataclass(frozen=True)
class ConflictVerdict:
    """Classifier output for one argument pair.

    ``symmetric`` distinguishes mutual infeasibility (both directions attack)
    from an asymmetric relation where the first argument invalidates the
    second.
    """

    is_conflict: bool
    confidence: float
    rationale: str = ""
    symmetric: bool = True


@dataclass(frozen=True)
class EntailmentVerdict:
    satisfied: bool
    rationale: str = ""


class SimilarityScorer(Protocol):
    def __call__(self, a: str, b: str) -> float: ...


class ConflictClassifier(Protocol):
    def __call__(self, a: Argument, b: Argument) -> ConflictVerdict: ...


class Embedder(Protocol):
    def __call__(self, text: str) -> Sequence[float]: ...


class EntailmentProvider(Protocol):
    def __call__(self, clause_id: str, clause_text: str, requirement: str) -> EntailmentVerdict: ...


class TokenOverlapScorer:
    """Cosine similarity over lowercased word bags; the deterministic default."""

    def __call__(self, a: str, b: str) -> float:
        bag_a, bag_b = set(tokens(a)), set(tokens(b))
        if not bag_a or not bag_b:
            return 0.0
        return len(bag_a & bag_b) / math.sqrt(len(bag_a) * len(bag_b))


class ConstantScorer:
    def __init__(self, value: float):
        self.value = value

    def __call__(self, a: str, b: str) -> float:
        return self.value


@dataclass(frozen=True)
class ConstantConfidenceClassifier:
    """Reports every pair at a fixed confidence; configure per test."""

    is_conflict: bool = True
    confidence: float = 0.5
    symmetric: bool = True

    def __call__(self, a: Argument, b: Argument) -> ConflictVerdict:
        return ConflictVerdict(
            is_conflict=self.is_conflict,
            confidence=self.confidence,
            rationale=f"constant-confidence stub ({self.confidence})",
            symmetric=self.symmetric,
        )


def conservative_classifier() -> ConstantConfidenceClassifier:
    """The shipped default: low-confidence reports that never pass a 0.85 gate."""
    return ConstantConfidenceClassifier(is_conflict=True, confidence=0.5)


class PairTableClassifier:
    """Fixed per-pair verdicts keyed by unordered argument-id pairs.

    Pairs absent from the table fall back to ``default`` (no conflict when
    None).  Used to script cross-session conflicts in sweeps and fixtures.
    """

    def __init__(
        self,
        table: Mapping[frozenset[str], ConflictVerdict],
        default: ConflictVerdict | None = None,
    ):
        self.table = dict(table)
        self.default = default or ConflictVerdict(is_conflict=False, confidence=0.0)

    def __call__(self, a: Argument, b: Argument) -> ConflictVerdict:
        return self.table.get(frozenset({a.id, b.id}), self.default)


class FailingClassifier:
    """Raises on every pair; exercises the skip-and-record path."""

    def __call__(self, a: Argument, b: Argument) -> ConflictVerdict:
        raise RuntimeError("classifier backend unavailable")


class HashedBagEmbedder:
    """Hashed bag-of-words vectors; deterministic stand-in for a text embedder."""

    def __init__(self, dim: int = 256):
        self.dim = dim

    def __call__(self, text: str) -> list[float]:
        vec = [0.0] * self.dim
        for tok in tokens(text):
            digest = hashlib.sha1(tok.encode("utf-8")).digest()
            vec[int.from_bytes(digest[:4], "big") % self.dim] += 1.0
        norm = math.sqrt(sum(v * v for v in vec))
        if norm:
            vec = [v / norm for v in vec]
        return vec


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


class TokenOverlapEntailment:
    """Entailed when some requirement covers enough of the clause vocabulary."""

    def __init__(self, threshold: float = 0.5):
        self.threshold = threshold

    def __call__(self, clause_id: str, clause_text: str, requirement: str) -> EntailmentVerdict:
        clause_bag = set(tokens(clause_text))
        if not clause_bag:
            return EntailmentVerdict(False, "empty clause")
        coverage = len(clause_bag & set(tokens(requirement))) / len(clause_bag)
        return EntailmentVerdict(
            satisfied=coverage >= self.threshold,
            rationale=f"token coverage {coverage:.2f} vs threshold {self.threshold}",
        )


class ScriptedEntailment:
    """Fixed clause_id -> satisfied map; exercises coverage arithmetic exactly."""

    def __init__(self, satisfied_clauses: Iterable[str]):
        self.satisfied = set(satisfied_clauses)

    def __call__(self, clause_id: str, clause_text: str, requirement: str) -> EntailmentVerdict:
        ok = clause_id in self.satisfied
        return EntailmentVerdict(ok, "scripted verdict")


class KeywordLabeler:
    """Stage-2 conflict labeler: near-duplicates are redundant, numeric clashes
    resource-bound, the rest logical incompatibilities."""

    def __init__(self, scorer: SimilarityScorer | None = None, redundant_above: float = 0.95):
        self.scorer = scorer or TokenOverlapScorer()
        self.redundant_above = redundant_above

    def __call__(self, a: str, b: str) -> str:
        if self.scorer(a, b) >= self.redundant_above:
            return "redundant"
        has_numbers = re.search(r"\d", a) and re.search(r"\d", b)
        return "resource_bound" if has_numbers else "logical_incompatibility"


class ConstantLabeler:
    def __init__(self, label: str):
        self.label = label

    def __call__(self, a: str, b: str) -> str:
        return self.label
