import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gainchroma import (
    MultiPoly,
    SimpleGraph,
    UniPoly,
    build_cyclic,
    build_symmetric,
    chromatic_polynomial,
    disjoint_union_action,
    gain_graph,
    grand_polynomial,
    graph_chromatic,
    leading_form,
    regular_action,
    regular_plus_zeroes,
    standard_colors,
    trivial_action,
    zero_free_colors,
    zero_free_polynomial,
)
from helpers import naive_count, random_graph

Z2 = build_cyclic(2)
Z3 = build_cyclic(3)
Z4 = build_cyclic(4)
S3 = build_symmetric(3)


def digon(group=Z2, gains=(0, 1)):
    return gain_graph(group, 2, [(0, 1, gains[0]), (0, 1, gains[1])])


class TestMultiPoly:
    def test_rendering(self):
        p = MultiPoly(1, {(2,): 4, (1,): -2})
        assert p.render() == "4*k1^2 - 2*k1"
        q = MultiPoly(2, {(2, 0): 4, (1, 1): 4, (0, 2): 1, (1, 0): -2, (0, 1): -1})
        assert q.render() == "4*k1^2 + 4*k1*k2 + k2^2 - 2*k1 - k2"
        assert MultiPoly.zero(3).render() == "0"
        assert MultiPoly.constant(2, -5).render() == "-5"

    def test_arithmetic(self):
        a = MultiPoly.linear(2, [2, 1])
        b = MultiPoly.linear(2, [0, 1])
        prod = a * a - a - b * a + b
        # (2k1+k2)^2 - (2k1+k2) - k2(2k1+k2) + k2 = (2k1+k2-k2)(2k1+k2-1)
        assert prod == MultiPoly(
            2, {(2, 0): 4, (1, 1): 2, (1, 0): -2}
        )

    def test_evaluate(self):
        p = MultiPoly(2, {(2, 0): 4, (1, 1): 4, (0, 2): 1, (1, 0): -4, (0, 1): -1})
        assert p.evaluate([1, 1]) == 4
        assert p.evaluate([0, 0]) == 0
        with pytest.raises(ValueError):
            p.evaluate([1])

    def test_degrees_and_parts(self):
        p = MultiPoly(1, {(2,): 4, (1,): -2})
        assert p.total_degree() == 2
        assert p.homogeneous_part(2) == MultiPoly(1, {(2,): 4})
        assert MultiPoly.zero(1).total_degree() == -1

    def test_zero_coefficients_dropped(self):
        p = MultiPoly(1, {(1,): 1}) - MultiPoly(1, {(1,): 1})
        assert p.is_zero and p.terms == {}

    def test_power(self):
        k = MultiPoly.linear(1, [1])
        assert (k**3).terms == {(3,): 1}
        assert (k**0).terms == {(0,): 1}


class TestUniPoly:
    def test_rendering(self):
        assert UniPoly((0, -1, 1)).render() == "λ^2 - λ"
        assert UniPoly((-1, 1)).render() == "λ - 1"
        assert UniPoly.zero().render() == "0"
        assert UniPoly((3,)).render() == "3"

    def test_arithmetic_and_eval(self):
        lam = UniPoly.x()
        p = lam * (lam - UniPoly.constant(1))
        assert p.evaluate(5) == 20
        assert p.degree() == 2
        assert (p - p).is_zero

    def test_integer_coefficients(self):
        assert UniPoly((Fraction(2), Fraction(1))).integer_coefficients() == (2, 1)
        with pytest.raises(ArithmeticError):
            UniPoly((Fraction(1, 2),)).integer_coefficients()


class TestGrandPolynomial:
    def test_lone_vertex(self):
        g = gain_graph(Z2, 1, [])
        assert grand_polynomial(g, [regular_action(Z2)]) == MultiPoly(1, {(1,): 2})

    def test_k2_identity_link(self):
        g = gain_graph(Z2, 2, [(0, 1, 0)])
        assert grand_polynomial(g, [regular_action(Z2)]) == MultiPoly(
            1, {(2,): 4, (1,): -2}
        )

    def test_loop_vertex_two_parts(self):
        g = gain_graph(Z2, 1, [(0, 0, 1)])
        parts = [regular_action(Z2), trivial_action(Z2, 1)]
        assert grand_polynomial(g, parts) == MultiPoly(2, {(1, 0): 2})

    def test_identity_loop_zero(self):
        g = gain_graph(Z2, 1, [(0, 0, 0)])
        assert grand_polynomial(g, [regular_action(Z2)]).is_zero

    def test_empty_graph_constant_one(self):
        g = gain_graph(Z2, 0, [])
        assert grand_polynomial(g, [regular_action(Z2)]) == MultiPoly.constant(1, 1)

    def test_group_mismatch_rejected(self):
        g = gain_graph(Z2, 1, [])
        with pytest.raises(ValueError):
            grand_polynomial(g, [regular_action(Z3)])

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_oracle_identity(self, seed):
        # evaluating the polynomial equals naive counting on a concretely
        # assembled disjoint-union spin set
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3])
        g = random_graph(rng, group, max_vertices=3, max_edges=4)
        parts = rng.choice(
            [
                [regular_action(group)],
                [regular_action(group), trivial_action(group, 1)],
                [trivial_action(group, 2), regular_action(group)],
            ]
        )
        poly = grand_polynomial(g, parts)
        for mults in itertools.product(range(3), repeat=len(parts)):
            action = disjoint_union_action(parts, list(mults))
            assert poly.evaluate(list(mults)) == naive_count(g, action)

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_degree_and_leading_form(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3])
        g = random_graph(rng, group, max_vertices=3, max_edges=4)
        parts = [regular_action(group), trivial_action(group, 1)]
        poly = grand_polynomial(g, parts)
        top = leading_form(g, parts)
        if not poly.is_zero:
            assert poly.total_degree() == g.vertex_count
        assert poly.homogeneous_part(g.vertex_count) == top


class TestLeadingForm:
    def test_k2(self):
        g = gain_graph(Z2, 2, [(0, 1, 0)])
        assert leading_form(g, [regular_action(Z2)]) == MultiPoly(1, {(2,): 4})

    def test_loop_vertex(self):
        g = gain_graph(Z2, 1, [(0, 0, 1)])
        assert leading_form(g, [regular_action(Z2)]) == MultiPoly(1, {(1,): 2})

    def test_loops_only_equals_grand(self):
        rng = random.Random(41)
        for _ in range(10):
            n = rng.randint(1, 3)
            triples = [
                (v, v, rng.randrange(3)) for v in range(n) for _ in range(rng.randint(0, 2))
            ]
            g = gain_graph(Z3, n, triples)
            parts = [regular_action(Z3), trivial_action(Z3, 2)]
            assert grand_polynomial(g, parts) == leading_form(g, parts)


class TestRegularPlusZeroes:
    def test_k2(self):
        g = gain_graph(Z2, 2, [(0, 1, 0)])
        lam = MultiPoly.linear(2, [2, 1])
        assert regular_plus_zeroes(g) == lam * lam - lam

    def test_loop_vertex(self):
        g = gain_graph(Z2, 1, [(0, 0, 1)])
        assert regular_plus_zeroes(g) == MultiPoly(2, {(1, 0): 2})

    def test_identity_loop(self):
        g = gain_graph(Z2, 1, [(0, 0, 0)])
        assert regular_plus_zeroes(g).is_zero

    @given(st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_matches_two_part_grand(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3, S3])
        g = random_graph(rng, group, max_vertices=4, max_edges=5)
        parts = [regular_action(group), trivial_action(group, 1)]
        assert regular_plus_zeroes(g) == grand_polynomial(g, parts)


class TestChromaticPolynomial:
    def test_k2(self):
        g = gain_graph(Z2, 2, [(0, 1, 1)])
        assert chromatic_polynomial(g) == UniPoly((0, -1, 1))

    def test_nonidentity_loop(self):
        for group, gain in [(Z2, 1), (Z3, 2), (S3, 5)]:
            g = gain_graph(group, 1, [(0, 0, gain)])
            assert chromatic_polynomial(g) == UniPoly((-1, 1))

    def test_identity_loop(self):
        g = gain_graph(Z3, 1, [(0, 0, 0)])
        assert chromatic_polynomial(g).is_zero

    def test_unbalanced_digon(self):
        # counts are (|Q| - 1)^2 at every standard spin set, so the
        # polynomial must be (lambda - 1)^2
        assert chromatic_polynomial(digon()) == UniPoly((1, -2, 1))

    @given(st.integers(0, 10**6))
    @settings(max_examples=20, deadline=None)
    def test_interpolates_brute_counts(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3])
        g = random_graph(rng, group, max_vertices=3, max_edges=5)
        poly = chromatic_polynomial(g)
        for k in range(4):
            action = standard_colors(group, k)
            lam = k * group.order + 1
            assert poly.evaluate(lam) == naive_count(g, action)

    def test_deletion_contraction_identity(self):
        from gainchroma import contract_link, delete_edge

        rng = random.Random(47)
        for _ in range(10):
            g = random_graph(rng, Z3, max_vertices=4, max_edges=5)
            links = [e for e in g.edges if not e.is_loop]
            if not links:
                continue
            e = rng.choice(links)
            whole = chromatic_polynomial(g)
            assert whole == chromatic_polynomial(delete_edge(g, e.id)) - chromatic_polynomial(
                contract_link(g, e.id)
            )


class TestZeroFreePolynomial:
    def test_k2(self):
        g = gain_graph(Z2, 2, [(0, 1, 1)])
        assert zero_free_polynomial(g) == UniPoly((0, -1, 1))

    def test_nonidentity_loop_is_discardable(self):
        # a nonidentity loop is never satisfied under regular colors, so the
        # polynomial is that of the bare vertex: brute counts are 2, 4 at
        # k = 1, 2 over Z2, giving the polynomial lambda itself
        g = gain_graph(Z2, 1, [(0, 0, 1)])
        assert naive_count(g, zero_free_colors(Z2, 1)) == 2
        assert naive_count(g, zero_free_colors(Z2, 2)) == 4
        assert zero_free_polynomial(g) == UniPoly((0, 1))

    def test_identity_loop(self):
        g = gain_graph(Z2, 1, [(0, 0, 0)])
        assert zero_free_polynomial(g).is_zero

    def test_loop_deletion_invariance(self):
        rng = random.Random(53)
        for _ in range(10):
            g = random_graph(rng, Z4, max_vertices=3, max_edges=4)
            stripped = gain_graph(
                g.group,
                g.vertex_count,
                [(e.u, e.v, e.gain) for e in g.edges if not (e.is_loop and e.gain != 0)],
            )
            assert zero_free_polynomial(g) == zero_free_polynomial(stripped)

    @given(st.integers(0, 10**6))
    @settings(max_examples=20, deadline=None)
    def test_interpolates_brute_counts(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3])
        g = random_graph(rng, group, max_vertices=3, max_edges=5)
        poly = zero_free_polynomial(g)
        for k in range(1, 4):
            action = zero_free_colors(group, k)
            assert poly.evaluate(k * group.order) == naive_count(g, action)

    def test_deletion_contraction_for_links(self):
        from gainchroma import contract_link, delete_edge

        rng = random.Random(59)
        for _ in range(10):
            g = random_graph(rng, Z3, max_vertices=4, max_edges=5)
            links = [e for e in g.edges if not e.is_loop]
            if not links:
                continue
            e = rng.choice(links)
            assert zero_free_polynomial(g) == zero_free_polynomial(
                delete_edge(g, e.id)
            ) - zero_free_polynomial(contract_link(g, e.id))


class TestGraphChromatic:
    def test_k2(self):
        assert graph_chromatic(SimpleGraph(2, ((0, 1),))) == UniPoly((0, -1, 1))

    def test_triangle(self):
        lam = UniPoly.x()
        one = UniPoly.constant(1)
        expected = lam * (lam - one) * (lam - UniPoly.constant(2))
        assert graph_chromatic(SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))) == expected

    def test_loop_kills(self):
        assert graph_chromatic(SimpleGraph(1, ((0, 0),))).is_zero

    def test_matches_trivial_action_counts(self):
        rng = random.Random(61)
        for _ in range(10):
            n = rng.randint(1, 4)
            edges = tuple(
                (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 5))
            )
            template = SimpleGraph(n, edges)
            g = gain_graph(Z3, n, [(u, v, rng.randrange(3)) for u, v in edges])
            poly = graph_chromatic(template)
            for m in range(1, 4):
                action = trivial_action(Z3, m)
                assert poly.evaluate(m) == naive_count(g, action)


class TestSpecializationIdentities:
    @given(st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_three_specializations(self, seed):
        rng = random.Random(seed)
        group = rng.choice([Z2, Z3])
        g = random_graph(rng, group, max_vertices=3, max_edges=4)
        chrom = chromatic_polynomial(g)
        zf = zero_free_polynomial(g)
        underlying = graph_chromatic(
            SimpleGraph(g.vertex_count, tuple((e.u, e.v) for e in g.edges))
        )
        for k in range(0, 3):
            assert chrom.evaluate(k * group.order + 1) == naive_count(
                g, standard_colors(group, k)
            )
            if k >= 1:
                assert zf.evaluate(k * group.order) == naive_count(
                    g, zero_free_colors(group, k)
                )
                assert underlying.evaluate(k) == naive_count(g, trivial_action(group, k))
