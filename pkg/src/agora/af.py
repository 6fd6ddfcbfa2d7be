"""Abstract argumentation core: frameworks, acceptance semantics, graph analysis.

A framework is a finite set of argument ids plus a directed attack relation.
All operations here are pure functions of immutable inputs and safe for
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

GROUNDED = "grounded"
PREFERRED = "preferred"

# Labels used by the preferred-extension search.
_IN, _OUT, _UNDEC = 1, 0, 2


class FrameworkError(ValueError):
    """Malformed framework or an argument id unknown to the framework."""


@dataclass(frozen=True)
class Framework:
    """A finite argument set with a binary attack relation.

    Attack (a, b) means a attacks b.  Every attack endpoint must be a member
    of ``arguments``; self-attacks are permitted.
    """

    arguments: frozenset[str]
    attacks: frozenset[tuple[str, str]]

    def __init__(self, arguments: Iterable[str], attacks: Iterable[tuple[str, str]] = ()):
        object.__setattr__(self, "arguments", frozenset(arguments))
        object.__setattr__(self, "attacks", frozenset((a, b) for a, b in attacks))
        for a in self.arguments:
            if not a:
                raise FrameworkError("argument ids must be non-empty")
        for a, b in self.attacks:
            if a not in self.arguments or b not in self.arguments:
                raise FrameworkError(f"attack endpoint not in framework: ({a!r}, {b!r})")

    def attackers_of(self) -> dict[str, set[str]]:
        table: dict[str, set[str]] = {a: set() for a in self.arguments}
        for src, tgt in self.attacks:
            table[tgt].add(src)
        return table

    def targets_of(self) -> dict[str, set[str]]:
        table: dict[str, set[str]] = {a: set() for a in self.arguments}
        for src, tgt in self.attacks:
            table[src].add(tgt)
        return table


@dataclass(frozen=True)
class Extension:
    """An accepted argument set under a named semantics."""

    members: frozenset[str]
    semantics: str

    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class AcceptanceStatus:
    skeptically_accepted: bool
    credulously_accepted: bool
    in_grounded: bool


@dataclass(frozen=True)
class GraphStats:
    """Structural summary of a framework.

    ``depth`` is the longest directed attack path (edge count) and is None on
    cyclic graphs, where longest path is ill-defined.  ``gci`` is the fraction
    of arguments inside strongly connected components of size > 1, None for
    an empty framework.
    """

    argument_count: int
    attack_count: int
    depth: int | None
    component_count: int
    scc_partition: tuple[frozenset[str], ...]
    gci: float | None
    pattern_mix: Mapping[str, int] = field(default_factory=dict)


def _check_known(ids: Iterable[str], af: Framework) -> None:
    unknown = [a for a in ids if a not in af.arguments]
    if unknown:
        raise FrameworkError(f"unknown argument ids: {sorted(unknown)}")


def is_conflict_free(members: Iterable[str], af: Framework) -> bool:
    """True iff no member attacks another member (self-attacks included)."""
    group = set(members)
    _check_known(group, af)
    return not any(a in group and b in group for a, b in af.attacks)


def defends(members: Iterable[str], argument: str, af: Framework) -> bool:
    """True iff every attacker of ``argument`` is attacked by some member."""
    group = set(members)
    _check_known(group | {argument}, af)
    targets = af.targets_of()
    attacked_by_group: set[str] = set()
    for m in group:
        attacked_by_group |= targets[m]
    return all(b in attacked_by_group for b in af.attackers_of()[argument])


def characteristic(members: frozenset[str], af: Framework) -> frozenset[str]:
    """The set of arguments defended by ``members``."""
    attackers = af.attackers_of()
    targets = af.targets_of()
    attacked: set[str] = set()
    for m in members:
        attacked |= targets[m]
    return frozenset(a for a in af.arguments if attackers[a] <= attacked)


def grounded_extension(af: Framework) -> Extension:
    """Least fixed point of the characteristic function, iterated from the empty set."""
    current: frozenset[str] = frozenset()
    while True:
        nxt = characteristic(current, af)
        if nxt == current:
            return Extension(current, GROUNDED)
        current = nxt


def preferred_extensions(af: Framework) -> list[Extension]:
    """All maximal admissible sets, in canonical order.

    Attacks never span weakly connected components, so the framework is
    decomposed first and the per-component results are combined; maximal
    admissible sets of the whole framework are exactly the unions of one
    maximal admissible set per component.  Canonical order sorts members
    within each extension, then extensions by their member sequences.
    """
    components = _weak_components(af)
    if len(components) <= 1:
        candidates = _preferred_members(af)
    else:
        candidates = [frozenset()]
        for component in components:
            sub = Framework(
                component,
                ((a, b) for a, b in af.attacks if a in component),
            )
            options = _preferred_members(sub)
            candidates = [base | opt for base in candidates for opt in options]
    candidates.sort(key=lambda f: tuple(sorted(f)))
    return [Extension(f, PREFERRED) for f in candidates]


def _weak_components(af: Framework) -> list[frozenset[str]]:
    neighbours: dict[str, set[str]] = {a: set() for a in af.arguments}
    for a, b in af.attacks:
        neighbours[a].add(b)
        neighbours[b].add(a)
    unvisited = set(af.arguments)
    components: list[frozenset[str]] = []
    while unvisited:
        root = min(unvisited)
        unvisited.discard(root)
        seen = {root}
        frontier = [root]
        while frontier:
            node = frontier.pop()
            for nxt in neighbours[node]:
                if nxt in unvisited:
                    unvisited.discard(nxt)
                    seen.add(nxt)
                    frontier.append(nxt)
        components.append(frozenset(seen))
    return components


def _preferred_members(af: Framework) -> list[frozenset[str]]:
    """Labelling search for one component: start all-IN, repeatedly apply
    transition steps to illegally-IN arguments (those with a non-OUT
    attacker), and keep the inclusion-maximal admissible IN sets."""
    order = sorted(af.arguments)
    attackers = {a: sorted(s) for a, s in af.attackers_of().items()}
    targets = {a: sorted(s) for a, s in af.targets_of().items()}
    found: list[frozenset[str]] = []
    visited: set[tuple[int, ...]] = set()

    def illegally_in(lab: dict[str, int], x: str) -> bool:
        return lab[x] == _IN and any(lab[b] != _OUT for b in attackers[x])

    def legally_in(lab: dict[str, int], x: str) -> bool:
        return lab[x] == _IN and all(lab[b] == _OUT for b in attackers[x])

    def super_illegally_in(lab: dict[str, int], x: str) -> bool:
        return any(legally_in(lab, b) or lab[b] == _UNDEC for b in attackers[x])

    def transition(lab: dict[str, int], x: str) -> dict[str, int]:
        new = dict(lab)
        new[x] = _OUT
        for z in (x, *targets[x]):
            if new[z] == _OUT and not any(new[b] == _IN for b in attackers[z]):
                new[z] = _UNDEC
        return new

    def search(lab: dict[str, int]) -> None:
        key = tuple(lab[a] for a in order)
        if key in visited:
            return
        visited.add(key)
        in_set = frozenset(a for a in order if lab[a] == _IN)
        # Transitions only shrink the IN set, so anything below an already
        # admissible candidate cannot produce a new maximal set.
        if any(in_set <= f for f in found):
            return
        illegal = [x for x in order if illegally_in(lab, x)]
        if not illegal:
            found[:] = [f for f in found if not f < in_set]
            found.append(in_set)
            return
        super_illegal = [x for x in illegal if super_illegally_in(lab, x)]
        if super_illegal:
            search(transition(lab, super_illegal[0]))
        else:
            for x in illegal:
                search(transition(lab, x))

    search({a: _IN for a in order})
    return [f for f in found if not any(f < g for g in found)]


def acceptance_status(argument: str, af: Framework) -> AcceptanceStatus:
    """Skeptical/credulous acceptance across preferred extensions, plus grounded membership."""
    _check_known([argument], af)
    preferred = preferred_extensions(af)
    return AcceptanceStatus(
        skeptically_accepted=all(argument in e.members for e in preferred),
        credulously_accepted=any(argument in e.members for e in preferred),
        in_grounded=argument in grounded_extension(af).members,
    )


def strongly_connected_components(af: Framework) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative, deterministic over sorted arguments."""
    order = sorted(af.arguments)
    targets = {a: sorted(s) for a, s in af.targets_of().items()}
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = 0
    components: list[frozenset[str]] = []

    for root in order:
        if root in index:
            continue
        work: list[tuple[str, int]] = [(root, 0)]
        while work:
            node, child_i = work[-1]
            if child_i == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for i in range(child_i, len(targets[node])):
                succ = targets[node][i]
                if succ not in index:
                    work[-1] = (node, i + 1)
                    work.append((succ, 0))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if lowlink[node] == index[node]:
                comp = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.add(member)
                    if member == node:
                        break
                components.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
    components.sort(key=lambda c: min(c))
    return components


def has_directed_cycle(af: Framework, ignore_self_loops: bool = True) -> bool:
    if not ignore_self_loops and any(a == b for a, b in af.attacks):
        return True
    return any(len(c) > 1 for c in strongly_connected_components(af))


def _longest_path(af: Framework) -> int | None:
    """Longest directed path (edges) via topological DP; None when cyclic."""
    indeg = {a: 0 for a in af.arguments}
    targets = af.targets_of()
    for _, tgt in af.attacks:
        indeg[tgt] += 1
    queue = sorted(a for a in af.arguments if indeg[a] == 0)
    dist = {a: 0 for a in af.arguments}
    seen = 0
    while queue:
        node = queue.pop()
        seen += 1
        for succ in targets[node]:
            dist[succ] = max(dist[succ], dist[node] + 1)
            indeg[succ] -= 1
            if indeg[succ] == 0:
                queue.append(succ)
    if seen != len(af.arguments):
        return None
    return max(dist.values(), default=0)


def _component_count(af: Framework) -> int:
    neighbours: dict[str, set[str]] = {a: set() for a in af.arguments}
    for a, b in af.attacks:
        neighbours[a].add(b)
        neighbours[b].add(a)
    unvisited = set(af.arguments)
    count = 0
    while unvisited:
        count += 1
        frontier = [min(unvisited)]
        unvisited.discard(frontier[0])
        while frontier:
            node = frontier.pop()
            for nxt in neighbours[node]:
                if nxt in unvisited:
                    unvisited.discard(nxt)
                    frontier.append(nxt)
    return count


def graph_stats(
    af: Framework,
    pattern_labels: Mapping[tuple[str, str], str] | None = None,
) -> GraphStats:
    """Structural statistics: SCC partition, cyclicity index, depth, components.

    ``pattern_labels`` maps attack pairs to origin labels; when given, the
    per-origin edge counts are reported in ``pattern_mix``.
    """
    sccs = tuple(strongly_connected_components(af))
    n = len(af.arguments)
    cyclic_members = sum(len(c) for c in sccs if len(c) > 1)
    gci = None if n == 0 else cyclic_members / n
    mix: dict[str, int] = {}
    if pattern_labels:
        for pair in af.attacks:
            label = pattern_labels.get(pair, "unlabeled")
            mix[label] = mix.get(label, 0) + 1
    return GraphStats(
        argument_count=n,
        attack_count=len(af.attacks),
        depth=_longest_path(af),
        component_count=_component_count(af),
        scc_partition=sccs,
        gci=gci,
        pattern_mix=mix,
    )
