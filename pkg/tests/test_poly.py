import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailspec.graph import Graph, build_cycle, build_flower, build_multistar, build_path, delete_vertices
from tailspec.oracle import bareiss_det, shifted_det
from tailspec.poly import (
    IntPoly,
    charpoly,
    chebyshev_q,
    joukowski_cleared,
    poly_gcd,
    pseudo_remainder,
    schwenk_expand,
    square_free,
    square_free_decomposition,
    tail_equation_poly,
)

from conftest import random_graph

T = IntPoly([0, 1])


def interpolated_charpoly(g: Graph) -> IntPoly:
    """Oracle: det(k I - A) at k = 0..n by Bareiss, then exact Lagrange interpolation."""
    n = g.n
    xs = list(range(n + 1))
    ys = [shifted_det(g, k) for k in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += ys[i] * b / denom
    assert all(c.denominator == 1 for c in coeffs)
    return IntPoly(int(c) for c in coeffs)


class TestIntPoly:
    def test_canonical_form(self):
        assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPoly([0, 0]).is_zero() and IntPoly().degree == -1

    def test_arithmetic(self):
        p = IntPoly([1, 1])
        assert p * p == IntPoly([1, 2, 1])
        assert p ** 3 == IntPoly([1, 3, 3, 1])
        assert p - p == IntPoly()
        assert 2 - p == IntPoly([1, -1])
        assert p(Fraction(1, 2)) == Fraction(3, 2)

    def test_strings_round_trip(self):
        p = IntPoly([-(10**30), 0, 7])
        assert IntPoly.from_strings(p.to_strings()) == p
        assert p.to_strings() == ["-1000000000000000000000000000000", "0", "7"]

    def test_str(self):
        assert str(IntPoly([-2, -3, 0, 1])) == "t^3 - 3t - 2"

    def test_pseudo_remainder_sign(self):
        # remainder of x^2 + 1 by -2x + 1 is 5/4; the pseudo-remainder must stay positive
        r = pseudo_remainder(IntPoly([1, 0, 1]), IntPoly([1, -2]))
        assert r.degree == 0 and r.lead > 0

    def test_gcd(self):
        a = IntPoly([-1, 0, 1]) * IntPoly([2, 3])
        b = IntPoly([1, 1]) * IntPoly([5, 0, 1])
        assert poly_gcd(a, b) == IntPoly([1, 1])

    def test_square_free(self):
        p = IntPoly([-1, 1]) ** 3 * IntPoly([1, 1]) ** 2 * IntPoly([0, 2, 0, 0])
        assert square_free(p) == IntPoly([0, -1, 0, 1])

    def test_square_free_decomposition(self):
        p = IntPoly([0, 0, 0, -4, 0, 1])  # t^3 (t^2 - 4)
        assert square_free_decomposition(p) == {1: IntPoly([-4, 0, 1]), 3: IntPoly([0, 1])}

    @settings(max_examples=40)
    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.lists(st.integers(1, 4), min_size=1, max_size=4))
    def test_decomposition_recomposes(self, roots, mults):
        p = IntPoly([1])
        distinct = sorted(set(roots))
        for r, m in zip(distinct, mults):
            p = p * IntPoly([-r, 1]) ** m
        dec = square_free_decomposition(p)
        q = IntPoly([1])
        for m, f in dec.items():
            q = q * f ** m
        assert q == p.primitive()


class TestCharpoly:
    def test_empty(self):
        assert charpoly(Graph(0)) == IntPoly([1])

    def test_triangle(self):
        assert charpoly(build_cycle(3)) == T ** 3 - 3 * T - 2

    def test_k13(self):
        assert charpoly(build_multistar((1, 1, 1))) == T ** 4 - 3 * T ** 2

    def test_k4(self):
        k4 = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
        # complete graph: (t - 3)(t + 1)^3
        assert charpoly(k4) == (T - 3) * (T + 1) ** 3

    def test_against_sympy(self):
        import sympy

        g = build_flower((3, 2, 4))
        lam = sympy.Symbol("lam")
        expected = sympy.Matrix(g.adjacency_matrix().tolist()).charpoly(lam).all_coeffs()[::-1]
        assert charpoly(g).coeffs == tuple(int(c) for c in expected)

    @pytest.mark.parametrize("seed", range(15))
    def test_matches_interpolated_determinants(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.2, 0.8))
        p = charpoly(g)
        assert p == interpolated_charpoly(g)
        assert p.degree == g.n and p.lead == 1

    @pytest.mark.parametrize("seed", range(10))
    def test_integer_points(self, seed):
        rng = random.Random(100 + seed)
        g = random_graph(rng, rng.randint(2, 12))
        p = charpoly(g)
        for lam0 in range(-3, 4):
            assert p(lam0) == shifted_det(g, lam0)

    def test_disjoint_union_multiplies(self):
        g = Graph.from_edges(7, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
        assert charpoly(g) == charpoly(build_cycle(3)) * charpoly(build_cycle(4))

    def test_bareiss_small(self):
        assert bareiss_det([[2, 1], [1, 2]]) == 3
        assert bareiss_det([[0, 1], [1, 0]]) == -1
        assert bareiss_det([[1, 2], [2, 4]]) == 0


class TestChebyshev:
    def test_low_orders(self):
        assert chebyshev_q(0) == IntPoly([1])
        assert chebyshev_q(1) == T
        assert chebyshev_q(2) == T ** 2 - 1

    def test_q5_factors(self):
        q5 = chebyshev_q(5)
        assert q5 == T ** 5 - 4 * T ** 3 + 3 * T
        assert q5 == T * (T ** 2 - 1) * (T ** 2 - 3)

    @pytest.mark.parametrize("m", range(1, 31))
    def test_is_path_charpoly(self, m):
        assert chebyshev_q(m) == charpoly(build_path(m))

    def test_negative(self):
        with pytest.raises(ValueError):
            chebyshev_q(-1)


class TestSchwenk:
    def test_triangle(self):
        assert schwenk_expand(build_cycle(3), 1) == T ** 3 - 3 * T - 2

    def test_k13_root(self):
        assert schwenk_expand(build_multistar((1, 1, 1)), 1) == T ** 4 - 3 * T ** 2

    def test_p2(self):
        assert schwenk_expand(build_path(2), 1) == T ** 2 - 1

    def test_size_bound(self):
        with pytest.raises(ValueError):
            schwenk_expand(build_path(21), 1)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_graphs(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(6, 8))
        p = charpoly(g)
        for v in range(1, g.n + 1):
            assert schwenk_expand(g, v) == p

    def test_disconnected_subgraphs(self):
        g = build_flower((3, 4, 2))
        assert schwenk_expand(g, 1) == charpoly(g)


class TestTailEquation:
    def test_triangle(self):
        s = tail_equation_poly(T ** 3 - 3 * T - 2, T ** 2 - 1)
        assert s == IntPoly([-1, 0, 1, 2, 1])
        assert s == IntPoly([-1, 1, 1]) * IntPoly([1, 1, 1])

    def test_k13(self):
        s = tail_equation_poly(T ** 4 - 3 * T ** 2, T ** 3)
        # (x^2 + 1)^2 (2x^2 - 1): only the last factor has real roots
        assert s == IntPoly([1, 0, 1]) ** 2 * IntPoly([-1, 0, 2])

    def test_p5_centre(self):
        s = tail_equation_poly(chebyshev_q(5), (T ** 2 - 1) ** 2)
        q = IntPoly([-1, 0, 1, 0, 1])
        assert pseudo_remainder(s, q).is_zero()

    def test_single_vertex(self):
        assert tail_equation_poly(T, IntPoly([1])) == IntPoly([1])

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            tail_equation_poly(T ** 3, T)

    @pytest.mark.parametrize("seed", range(10))
    def test_graph_inputs_never_vanish_at_zero(self, seed):
        # constant term of the cleared polynomial is lead(P) = 1
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 8)).with_anchor(1)
        P, Pv = charpoly(g), charpoly(delete_vertices(g, [1]))
        assert joukowski_cleared(P, Pv)(0) == 1

    @given(
        st.lists(st.integers(-5, 5), min_size=1, max_size=6).filter(lambda c: c[-1] != 0),
        st.data(),
    )
    def test_cleared_constant_term_is_leading_coefficient(self, pc, data):
        n = len(pc) - 1
        pv = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)) if n else []
        if pv and pv[-1] == 0:
            pv[-1] = 1
        P, Pv = IntPoly(pc), IntPoly(pv)
        assert joukowski_cleared(P, Pv)(0) == pc[-1]
        assert tail_equation_poly(P, Pv)(0) != 0

    def test_non_monic_example(self):
        # x^2 (2(x + 1/x)^2 - x (x + 1/x)) = 2(x^2 + 1)^2 - x^2 (x^2 + 1)
        assert joukowski_cleared(IntPoly([0, 0, 2]), IntPoly([0, 1])) == IntPoly([2, 0, 3, 0, 1])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 7), st.data())
    def test_matches_substitution_exactly(self, n, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        g = random_graph(rng, n).with_anchor(data.draw(st.integers(1, n)))
        P, Pv = charpoly(g), charpoly(delete_vertices(g, [g.anchor]))
        s = tail_equation_poly(P, Pv)
        cleared = joukowski_cleared(P, Pv)
        k = cleared.trailing_zeros()
        sign = 1 if cleared.lead * s.lead > 0 else -1
        for x in (Fraction(1, 3), Fraction(-2, 7), Fraction(5, 9)):
            lam = x + 1 / x
            direct = x ** n * (P(lam) - x * Pv(lam))
            assert direct == sign * x ** k * s(x)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 7), st.data())
    def test_roots_solve_original_equation(self, n, data):
        """A real root x of S off {-1, 0, 1} solves P(x + 1/x) = x Pv(x + 1/x)."""
        import numpy as np

        rng = random.Random(data.draw(st.integers(0, 10**6)))
        g = random_graph(rng, n).with_anchor(data.draw(st.integers(1, n)))
        P, Pv = charpoly(g), charpoly(delete_vertices(g, [g.anchor]))
        s = tail_equation_poly(P, Pv)
        if s.degree < 1:
            return
        for r in np.roots([float(c) for c in reversed(s.coeffs)]):
            if abs(r.imag) > 1e-9 or abs(abs(r.real) - 1) < 1e-6 or abs(r.real) < 1e-6:
                continue
            x = r.real
            lam = x + 1 / x
            scale = 1 + sum(abs(float(c)) * abs(lam) ** k for k, c in enumerate(P.coeffs))
            assert abs(float(P(lam)) - x * float(Pv(lam))) <= 1e-6 * scale
