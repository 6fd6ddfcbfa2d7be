"""Structured negotiation logs and deterministic argument extraction.

The log document is a JSON tree: top-level ``sessions[]``, each with ``id``,
``agents[]`` and ``turns[]``; turn references are ``{"session", "turn_index"}``
objects and must point at earlier turns in the same session.  Extraction is
deterministic: one argument per turn, ids assigned ``a1, a2, ...`` in
(session, turn) order, with trace links back to the source turn.

An LLM-backed extractor that classifies free text is a pluggable alternative;
the default reads the explicit ``act`` and reference fields.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable

logger = logging.getLogger(__name__)

ACTS = ("proposal", "critique", "refinement")
STATUSES = ("unresolved", "partial", "resolved")


class LogParseError(ValueError):
    """Document does not parse as a negotiation log; message carries a location."""


class LogValidationError(ValueError):
    """Well-formed document violating a log invariant."""


@dataclass(frozen=True)
class TurnRef:
    session: str
    turn_index: int


@dataclass(frozen=True)
class Component:
    """One structured sub-requirement of a composite proposal/refinement.

    Agents emit requirements in a structured schema; a composite turn may
    enumerate its components, each tagged with a quality axis and an optional
    goal theme used by goal-model integration.
    """

    text: str
    axis: str
    theme: str | None = None


@dataclass(frozen=True)
class Turn:
    session_id: str
    round: int
    turn_index: int
    agent: str
    act: str
    content: str
    quality_dimension: str
    rationale: str = ""
    targets: tuple[TurnRef, ...] = ()
    supersedes: TurnRef | None = None
    resolves: tuple[TurnRef, ...] = ()
    status: str | None = None
    components: tuple[Component, ...] = ()


@dataclass(frozen=True)
class Session:
    id: str
    agents: tuple[str, ...]
    turns: tuple[Turn, ...]
    termination_reason: str | None = None


@dataclass(frozen=True)
class NegotiationLog:
    sessions: tuple[Session, ...]
    project: str = ""
    config: dict[str, Any] = field(default_factory=dict)
    pinned_attacks: tuple[dict[str, Any], ...] = ()


@dataclass(frozen=True)
class Argument:
    """One argumentative act with trace links to its source turn."""

    id: str
    act_type: str
    content: str
    agent: str
    quality: str
    rationale: str = ""
    source: tuple[str, int, int] = ("", 0, 0)  # (session_id, round, turn_index)
    components: tuple[Component, ...] = ()


def _ref_from(obj: Any, where: str) -> TurnRef:
    if not isinstance(obj, dict) or "session" not in obj or "turn_index" not in obj:
        raise LogParseError(f"{where}: reference must be an object with session and turn_index")
    return TurnRef(session=str(obj["session"]), turn_index=int(obj["turn_index"]))


def _parse_turn(obj: dict[str, Any], session_id: str, where: str) -> Turn:
    try:
        act = obj["act"]
        if act not in ACTS:
            raise LogParseError(f"{where}: unknown act {act!r}")
        status = obj.get("status")
        if status is not None and status not in STATUSES:
            raise LogParseError(f"{where}: unknown status {status!r}")
        components = tuple(
            Component(text=c["text"], axis=c["axis"], theme=c.get("theme"))
            for c in obj.get("components", [])
        )
        return Turn(
            session_id=str(obj.get("session_id", session_id)),
            round=int(obj["round"]),
            turn_index=int(obj["turn_index"]),
            agent=str(obj["agent"]),
            act=act,
            content=str(obj["content"]),
            quality_dimension=str(obj["quality_dimension"]),
            rationale=str(obj.get("rationale", "")),
            targets=tuple(_ref_from(t, where) for t in obj.get("targets", [])),
            supersedes=_ref_from(obj["supersedes"], where) if obj.get("supersedes") else None,
            resolves=tuple(_ref_from(r, where) for r in obj.get("resolves", [])),
            status=status,
            components=components,
        )
    except KeyError as exc:
        raise LogParseError(f"{where}: missing field {exc.args[0]!r}") from exc


def _validate_session(session: Session, round_cap: int | None) -> None:
    seen: dict[int, Turn] = {}
    last_index = 0
    for turn in session.turns:
        where = f"session {session.id!r}, turn {turn.turn_index}"
        if turn.session_id != session.id:
            raise LogValidationError(f"{where}: session_id mismatch")
        if turn.turn_index in seen:
            raise LogValidationError(f"{where}: duplicate turn index")
        if turn.turn_index <= last_index:
            raise LogValidationError(f"{where}: turn indices must be strictly increasing")
        if turn.round < 1:
            raise LogValidationError(f"{where}: round must be positive")
        if round_cap is not None and turn.round > round_cap:
            raise LogValidationError(f"{where}: round exceeds configured cap {round_cap}")
        refs = list(turn.targets) + list(turn.resolves)
        if turn.supersedes:
            refs.append(turn.supersedes)
        for ref in refs:
            if ref.session != session.id:
                raise LogValidationError(f"{where}: reference crosses sessions ({ref.session!r})")
            if ref.turn_index not in seen:
                raise LogValidationError(f"{where}: dangling reference to turn {ref.turn_index}")
        if turn.act == "critique" and not turn.targets:
            raise LogValidationError(f"{where}: critique must target at least one turn")
        if turn.act == "refinement" and turn.supersedes is None and not turn.resolves:
            raise LogValidationError(f"{where}: refinement needs a supersedes or resolves reference")
        seen[turn.turn_index] = turn
        last_index = turn.turn_index


def parse_log(document: str | dict[str, Any]) -> NegotiationLog:
    """Parse and validate a negotiation-log document (JSON text or tree)."""
    if isinstance(document, str):
        try:
            tree = json.loads(document)
        except json.JSONDecodeError as exc:
            raise LogParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    else:
        tree = document
    if not isinstance(tree, dict) or not isinstance(tree.get("sessions", []), list):
        raise LogParseError("top level must be an object with a sessions list")
    metadata = tree.get("metadata", {})
    config = dict(metadata.get("config", {}))
    sessions = []
    for s_i, s_obj in enumerate(tree.get("sessions", [])):
        where = f"sessions[{s_i}]"
        if "id" not in s_obj:
            raise LogParseError(f"{where}: missing session id")
        session = Session(
            id=str(s_obj["id"]),
            agents=tuple(str(a) for a in s_obj.get("agents", [])),
            turns=tuple(
                _parse_turn(t, str(s_obj["id"]), f"{where}.turns[{t_i}]")
                for t_i, t in enumerate(s_obj.get("turns", []))
            ),
            termination_reason=s_obj.get("termination_reason"),
        )
        _validate_session(session, config.get("round_cap"))
        sessions.append(session)
    return NegotiationLog(
        sessions=tuple(sessions),
        project=str(metadata.get("project", "")),
        config=config,
        pinned_attacks=tuple(dict(p) for p in metadata.get("pinned_attacks", [])),
    )


def load_log(path: str | Path) -> NegotiationLog:
    return parse_log(Path(path).read_text(encoding="utf-8"))


def _turn_tree(turn: Turn) -> dict[str, Any]:
    def ref(r: TurnRef) -> dict[str, Any]:
        return {"session": r.session, "turn_index": r.turn_index}

    tree: dict[str, Any] = {
        "session_id": turn.session_id,
        "round": turn.round,
        "turn_index": turn.turn_index,
        "agent": turn.agent,
        "act": turn.act,
        "content": turn.content,
        "quality_dimension": turn.quality_dimension,
        "rationale": turn.rationale,
        "targets": [ref(t) for t in turn.targets],
        "supersedes": ref(turn.supersedes) if turn.supersedes else None,
        "resolves": [ref(r) for r in turn.resolves],
        "status": turn.status,
    }
    if turn.components:
        tree["components"] = [
            {"text": c.text, "axis": c.axis, **({"theme": c.theme} if c.theme else {})}
            for c in turn.components
        ]
    return tree


def serialize_log(log: NegotiationLog) -> dict[str, Any]:
    """Inverse of parse_log: a JSON tree semantically equal to the input document."""
    metadata: dict[str, Any] = {"project": log.project, "config": log.config}
    if log.pinned_attacks:
        metadata["pinned_attacks"] = [dict(p) for p in log.pinned_attacks]
    return {
        "metadata": metadata,
        "sessions": [
            {
                "id": s.id,
                "agents": list(s.agents),
                **({"termination_reason": s.termination_reason} if s.termination_reason else {}),
                "turns": [_turn_tree(t) for t in s.turns],
            }
            for s in log.sessions
        ],
    }


def dump_log(log: NegotiationLog, path: str | Path) -> None:
    Path(path).write_text(json.dumps(serialize_log(log), indent=2) + "\n", encoding="utf-8")


def extract_arguments(log: NegotiationLog) -> tuple[Argument, ...]:
    """One argument per turn, ids ``a1..aN`` in (session, turn) order."""
    arguments: list[Argument] = []
    n = 0
    for session in log.sessions:
        for turn in session.turns:
            n += 1
            if not turn.rationale:
                logger.warning(
                    "turn %s/%s has an empty rationale", session.id, turn.turn_index
                )
            arguments.append(
                Argument(
                    id=f"a{n}",
                    act_type=turn.act,
                    content=turn.content,
                    agent=turn.agent,
                    quality=turn.quality_dimension,
                    rationale=turn.rationale,
                    source=(session.id, turn.round, turn.turn_index),
                    components=turn.components,
                )
            )
    return tuple(arguments)


def argument_for_turn(arguments: Iterable[Argument], session_id: str, turn_index: int) -> Argument | None:
    for arg in arguments:
        if arg.source[0] == session_id and arg.source[2] == turn_index:
            return arg
    return None


def next_argument_id(arguments: Iterable[Argument]) -> str:
    """Next free id in the a<n> scheme, past any existing numeric suffixes."""
    top = 0
    for arg in arguments:
        if arg.id.startswith("a") and arg.id[1:].isdigit():
            top = max(top, int(arg.id[1:]))
    return f"a{top + 1}"


def with_argument(log: NegotiationLog, **changes: Any) -> NegotiationLog:
    return replace(log, **changes)
