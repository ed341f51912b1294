import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gainchroma import (
    BoundExceeded,
    build_cyclic,
    build_symmetric,
    count_auto,
    count_brute,
    count_delcon,
    count_inclexcl,
    count_mobius,
    gain_graph,
    regular_action,
    standard_colors,
    subset_action,
    switch,
    theta,
    trivial_action,
    verify_all,
    zero_free_colors,
)
from helpers import naive_count, random_graph

Z2 = build_cyclic(2)
Z3 = build_cyclic(3)
Z4 = build_cyclic(4)
S3 = build_symmetric(3)

ALL_COUNTERS = [count_brute, count_delcon, count_inclexcl, count_mobius]


def loop_vertex(group, gain):
    return gain_graph(group, 1, [(0, 0, gain)])


def digon(group=Z2, gains=(0, 1)):
    return gain_graph(group, 2, [(0, 1, gains[0]), (0, 1, gains[1])])


class TestBruteForce:
    def test_edgeless_power(self):
        g = gain_graph(Z3, 4, [])
        assert count_brute(g, regular_action(Z3)).value == 3**4

    def test_empty_graph_counts_one(self):
        g = gain_graph(Z3, 0, [])
        assert count_brute(g, regular_action(Z3)).value == 1
        assert count_brute(g, zero_free_colors(Z3, 0)).value == 1

    def test_empty_spin_set(self):
        g = gain_graph(Z3, 2, [(0, 1, 1)])
        assert count_brute(g, zero_free_colors(Z3, 0)).value == 0

    @pytest.mark.parametrize("group,gain", [(Z2, 0), (Z2, 1), (Z4, 3), (S3, 4)])
    def test_single_link(self, group, gain):
        g = gain_graph(group, 2, [(0, 1, gain)])
        for action in (regular_action(group), standard_colors(group, 1)):
            q = action.size
            assert count_brute(g, action).value == q * (q - 1)

    def test_digon_standard_colors(self):
        g = digon()
        assert naive_count(g, standard_colors(Z2, 1)) == 4
        assert count_brute(g, standard_colors(Z2, 1)).value == 4

    def test_bound(self):
        g = gain_graph(Z2, 4, [])
        with pytest.raises(BoundExceeded):
            count_brute(g, standard_colors(Z2, 2), max_states=100)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_matches_naive(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3, S3])
        g = random_graph(rng, group, max_vertices=4, max_edges=6)
        action = rng.choice(
            [regular_action(group), trivial_action(group, 2), standard_colors(group, 1)]
        )
        assert count_brute(g, action).value == naive_count(g, action)


class TestDeletionContraction:
    @pytest.mark.parametrize("group,gain", [(Z2, 1), (Z4, 1), (Z4, 2), (S3, 3)])
    def test_single_loop_vertex(self, group, gain):
        g = loop_vertex(group, gain)
        for action in (
            regular_action(group),
            standard_colors(group, 1),
            subset_action(3) if group is S3 else trivial_action(group, 3),
        ):
            expected = action.size - len(action.fixed(gain))
            assert count_delcon(g, action).value == expected

    def test_two_loop_vertices_with_identity_link(self):
        # loop g at one vertex, loop h at the other, identity link between
        g = gain_graph(Z3, 2, [(0, 0, 1), (1, 1, 2), (0, 1, 0)])
        action = standard_colors(Z3, 1)
        q = action.size
        assert count_delcon(g, action).value == (q - 1) * (q - 2)

    def test_identity_loop_kills(self):
        g = gain_graph(Z2, 1, [(0, 0, 0)])
        assert count_delcon(g, regular_action(Z2)).value == 0

    def test_call_budget(self):
        g = gain_graph(Z2, 3, [(0, 1, 0)] * 1)
        with pytest.raises(BoundExceeded):
            count_delcon(g, regular_action(Z2), max_calls=1)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3, Z4])
        g = random_graph(rng, group, max_vertices=4, max_edges=6)
        action = rng.choice(
            [regular_action(group), standard_colors(group, 1), trivial_action(group, 3)]
        )
        assert count_delcon(g, action).value == count_brute(g, action).value


class TestInclusionExclusion:
    def test_identity_link(self):
        g = gain_graph(Z3, 2, [(0, 1, 0)])
        a = regular_action(Z3)
        assert count_inclexcl(g, a).value == 9 - 3

    def test_single_loop_regular(self):
        g = loop_vertex(Z2, 1)
        assert count_inclexcl(g, regular_action(Z2)).value == 2

    def test_digon_regular(self):
        assert count_inclexcl(digon(), regular_action(Z2)).value == 0

    def test_bound(self):
        g = gain_graph(Z2, 2, [(0, 1, 0)] * 5)
        with pytest.raises(BoundExceeded):
            count_inclexcl(g, regular_action(Z2), max_subsets=16)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3, S3])
        g = random_graph(rng, group, max_vertices=4, max_edges=6)
        action = rng.choice(
            [regular_action(group), standard_colors(group, 1), trivial_action(group, 2)]
        )
        assert count_inclexcl(g, action).value == count_brute(g, action).value


class TestMobius:
    def test_digon_term_by_term(self):
        # mu values (1, -1, -1, 1) against h products (4, 2, 2, 0)
        assert count_mobius(digon(), regular_action(Z2)).value == 4 - 2 - 2 + 0

    def test_identity_loop_is_zero(self):
        g = gain_graph(Z2, 2, [(0, 1, 1), (1, 1, 0)])
        assert count_mobius(g, regular_action(Z2)).value == 0
        assert count_brute(g, regular_action(Z2)).value == 0

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z4, S3])
        g = random_graph(rng, group, max_vertices=4, max_edges=6)
        action = rng.choice(
            [regular_action(group), standard_colors(group, 1), trivial_action(group, 2)]
        )
        assert count_mobius(g, action).value == count_brute(g, action).value


class TestTheta:
    def test_balanced_link(self):
        g = gain_graph(Z2, 2, [(0, 1, 0)])
        assert theta(g, standard_colors(Z2, 1)) == Fraction(6, 3)

    def test_k3_one_twisted_edge(self):
        g = gain_graph(Z2, 3, [(0, 1, 0), (0, 2, 0), (1, 2, 1)])
        assert theta(g, regular_action(Z2)) == 2

    def test_lone_vertex(self):
        g = gain_graph(Z3, 1, [])
        for action in (regular_action(Z3), standard_colors(Z3, 2)):
            assert theta(g, action) == 1

    def test_empty_spin_set_with_balance_rejected(self):
        g = gain_graph(Z3, 1, [])
        with pytest.raises(ValueError):
            theta(g, zero_free_colors(Z3, 0))

    def test_multiplicative_on_disjoint_union(self):
        rng = random.Random(13)
        for _ in range(10):
            g1 = random_graph(rng, Z3, max_vertices=3, max_edges=4)
            g2 = random_graph(rng, Z3, max_vertices=3, max_edges=4)
            shift = g1.vertex_count
            combined = gain_graph(
                Z3,
                g1.vertex_count + g2.vertex_count,
                [(e.u, e.v, e.gain) for e in g1.edges]
                + [(e.u + shift, e.v + shift, e.gain) for e in g2.edges],
            )
            action = standard_colors(Z3, 1)
            assert count_brute(combined, action).value == (
                count_brute(g1, action).value * count_brute(g2, action).value
            )
            assert theta(combined, action) == theta(g1, action) * theta(g2, action)


class TestVerifyAll:
    def test_agreement_on_examples(self):
        cases = [
            (digon(), regular_action(Z2)),
            (gain_graph(Z2, 2, [(0, 1, 0), (1, 1, 0)]), regular_action(Z2)),
            (gain_graph(S3, 3, [(0, 1, 2), (1, 2, 3), (0, 2, 4)]), subset_action(3)),
        ]
        for g, a in cases:
            report = verify_all(g, a)
            assert report.agree and not report.errors
            assert report.value == naive_count(g, a)

    def test_reports_bound_overruns(self):
        g = gain_graph(Z2, 5, [])
        report = verify_all(g, standard_colors(Z2, 3), max_states=10)
        assert "brute" in report.errors
        assert report.agree  # the remaining methods still agree

    def test_identity_loop_zeroes_every_method(self):
        g = gain_graph(Z2, 2, [(0, 1, 1), (1, 1, 0)])
        report = verify_all(g, regular_action(Z2))
        assert not report.errors
        assert set(report.results) == {"brute", "delcon", "inclexcl", "mobius"}
        assert report.agree and report.value == 0

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_switching_invariance(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3, Z4, S3])
        g = random_graph(rng, group, max_vertices=4, max_edges=6)
        action = standard_colors(group, 1)
        eta = tuple(rng.randrange(group.order) for _ in range(g.vertex_count))
        assert count_brute(g, action).value == count_brute(switch(g, eta), action).value


class TestCountAuto:
    def test_matches_methods(self):
        rng = random.Random(19)
        for _ in range(15):
            group = rng.choice([Z2, Z3])
            g = random_graph(rng, group, max_vertices=4, max_edges=6)
            action = standard_colors(group, 1)
            assert count_auto(g, action) == count_brute(g, action).value
