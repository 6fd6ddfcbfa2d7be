"""Semantics engine tests: fixture values, brute-force oracles, structural stats."""

from __future__ import annotations

import random

import pytest

from agora.af import (
    Framework,
    FrameworkError,
    acceptance_status,
    defends,
    graph_stats,
    grounded_extension,
    has_directed_cycle,
    is_conflict_free,
    preferred_extensions,
)

from oracles import brute_grounded, brute_preferred, random_dag_framework, random_framework

# The running-example graph: six arguments, seven labeled attacks.
FIXTURE_ARGS = ["a1", "a2", "a3", "a4", "a5", "a6"]
FIXTURE_ATTACKS = [
    ("a2", "a1"),
    ("a3", "a1"),
    ("a3", "a2"),
    ("a4", "a3"),
    ("a5", "a3"),
    ("a5", "a4"),
    ("a6", "a2"),
]


@pytest.fixture
def fixture_af() -> Framework:
    return Framework(FIXTURE_ARGS, FIXTURE_ATTACKS)


class TestFramework:
    def test_rejects_unknown_endpoint(self):
        with pytest.raises(FrameworkError):
            Framework(["a"], [("a", "b")])

    def test_rejects_empty_id(self):
        with pytest.raises(FrameworkError):
            Framework([""])

    def test_attack_set_deduplicates(self):
        af = Framework(["a", "b"], [("a", "b"), ("a", "b")])
        assert len(af.attacks) == 1


class TestConflictFree:
    def test_empty_set_is_vacuously_conflict_free(self, fixture_af):
        assert is_conflict_free([], fixture_af)

    def test_fixture_a5_a6(self, fixture_af):
        assert is_conflict_free(["a5", "a6"], fixture_af)

    def test_fixture_a1_a2(self, fixture_af):
        assert not is_conflict_free(["a1", "a2"], fixture_af)

    def test_self_attack_excludes_membership(self):
        af = Framework(["a"], [("a", "a")])
        assert not is_conflict_free(["a"], af)

    def test_unknown_id_raises(self, fixture_af):
        with pytest.raises(FrameworkError):
            is_conflict_free(["zz"], fixture_af)


class TestDefends:
    def test_unattacked_argument_defended_by_empty_set(self, fixture_af):
        assert defends([], "a5", fixture_af)

    def test_fixture_a1_defended_by_a5_a6(self, fixture_af):
        assert defends(["a5", "a6"], "a1", fixture_af)

    def test_fixture_a4_not_defended_by_a5_a6(self, fixture_af):
        assert not defends(["a5", "a6"], "a4", fixture_af)

    def test_unknown_id_raises(self, fixture_af):
        with pytest.raises(FrameworkError):
            defends(["a5"], "zz", fixture_af)


class TestGrounded:
    def test_fixture_grounded(self, fixture_af):
        assert grounded_extension(fixture_af).members == {"a1", "a5", "a6"}

    def test_empty_framework(self):
        assert grounded_extension(Framework([])).members == frozenset()

    def test_mutual_attack_pair(self):
        af = Framework(["x", "y"], [("x", "y"), ("y", "x")])
        assert grounded_extension(af).members == frozenset()

    def test_reinstatement_chain(self):
        af = Framework(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert grounded_extension(af).members == {"a", "c"}


class TestPreferred:
    def test_fixture_unique_preferred(self, fixture_af):
        exts = preferred_extensions(fixture_af)
        assert len(exts) == 1
        assert exts[0].members == {"a1", "a5", "a6"}

    def test_mutual_pair_two_extensions(self):
        af = Framework(["x", "y"], [("x", "y"), ("y", "x")])
        exts = preferred_extensions(af)
        assert [e.members for e in exts] == [frozenset({"x"}), frozenset({"y"})]

    def test_odd_cycle_only_empty(self):
        af = Framework(["x", "y", "z"], [("x", "y"), ("y", "z"), ("z", "x")])
        exts = preferred_extensions(af)
        assert [e.members for e in exts] == [frozenset()]

    def test_empty_framework_returns_empty_extension(self):
        exts = preferred_extensions(Framework([]))
        assert [e.members for e in exts] == [frozenset()]

    def test_canonical_order_is_deterministic(self):
        af = Framework(
            ["p", "q", "r", "s"],
            [("p", "q"), ("q", "p"), ("r", "s"), ("s", "r")],
        )
        runs = [tuple(e.sorted_members() for e in preferred_extensions(af)) for _ in range(3)]
        assert len(set(runs)) == 1
        assert runs[0] == (("p", "r"), ("p", "s"), ("q", "r"), ("q", "s"))


class TestAcceptanceStatus:
    def test_fixture_a5_accepted_everywhere(self, fixture_af):
        status = acceptance_status("a5", fixture_af)
        assert status.skeptically_accepted
        assert status.credulously_accepted
        assert status.in_grounded

    def test_mutual_pair_member(self):
        af = Framework(["x", "y"], [("x", "y"), ("y", "x")])
        status = acceptance_status("x", af)
        assert not status.skeptically_accepted
        assert status.credulously_accepted
        assert not status.in_grounded

    def test_fixture_a2_rejected_everywhere(self, fixture_af):
        status = acceptance_status("a2", fixture_af)
        assert not status.skeptically_accepted
        assert not status.credulously_accepted
        assert not status.in_grounded


class TestGraphStats:
    def test_fixture_acyclic_stats(self, fixture_af):
        stats = graph_stats(fixture_af)
        assert stats.gci == 0.0
        assert stats.argument_count == 6
        assert stats.attack_count == 7
        assert stats.depth == 4  # a5 -> a4 -> a3 -> a2 -> a1
        assert stats.component_count == 1

    def test_one_mutual_pair_among_eight(self):
        args = [f"x{i}" for i in range(8)]
        af = Framework(args, [("x0", "x1"), ("x1", "x0")])
        assert graph_stats(af).gci == 0.25

    def test_fully_mutual_clique(self):
        args = ["a", "b", "c", "d"]
        attacks = [(x, y) for x in args for y in args if x != y]
        assert graph_stats(af := Framework(args, attacks)).gci == 1.0
        assert graph_stats(af).depth is None

    def test_self_attack_does_not_raise_gci(self):
        af = Framework(["a", "b"], [("a", "a")])
        stats = graph_stats(af)
        assert stats.gci == 0.0
        assert not has_directed_cycle(af)
        assert has_directed_cycle(af, ignore_self_loops=False)

    def test_empty_framework_stats(self):
        stats = graph_stats(Framework([]))
        assert stats.gci is None
        assert stats.depth == 0
        assert stats.component_count == 0

    def test_pattern_mix_counts(self, fixture_af):
        labels = {pair: "P1" for pair in list(fixture_af.attacks)[:3]}
        stats = graph_stats(fixture_af, pattern_labels=labels)
        assert sum(stats.pattern_mix.values()) == stats.attack_count


class TestOracleEquivalence:
    def test_grounded_and_preferred_match_brute_force(self):
        rng = random.Random(7)
        for _ in range(120):
            arguments, attacks = random_framework(rng, max_args=8)
            af = Framework(arguments, attacks)
            assert grounded_extension(af).members == brute_grounded(arguments, attacks)
            got = [e.members for e in preferred_extensions(af)]
            assert got == brute_preferred(arguments, attacks)

    def test_grounded_contained_in_every_preferred(self):
        rng = random.Random(11)
        for _ in range(150):
            arguments, attacks = random_framework(rng, max_args=12)
            af = Framework(arguments, attacks)
            grounded = grounded_extension(af).members
            for ext in preferred_extensions(af):
                assert grounded <= ext.members

    def test_acyclic_frameworks_have_unique_preferred_equal_grounded(self):
        rng = random.Random(13)
        for _ in range(150):
            arguments, attacks = random_dag_framework(rng, max_args=12)
            af = Framework(arguments, attacks)
            exts = preferred_extensions(af)
            assert len(exts) == 1
            assert exts[0].members == grounded_extension(af).members

    def test_returned_extensions_are_conflict_free_and_admissible(self):
        rng = random.Random(17)
        for _ in range(100):
            arguments, attacks = random_framework(rng, max_args=10)
            af = Framework(arguments, attacks)
            for ext in [grounded_extension(af), *preferred_extensions(af)]:
                assert is_conflict_free(ext.members, af)
                assert all(defends(ext.members, a, af) for a in ext.members)

    def test_gci_zero_iff_no_cycle_excluding_self_loops(self):
        rng = random.Random(19)
        for _ in range(150):
            arguments, attacks = random_framework(rng, max_args=9, edge_prob=0.2)
            af = Framework(arguments, attacks)
            stats = graph_stats(af)
            if stats.gci is None:
                continue
            assert (stats.gci == 0.0) == (not has_directed_cycle(af))
