"""Exact integer polynomials and characteristic polynomials of graphs.

Everything here is done over Python's arbitrary-precision integers; no
floating point enters the coefficient computations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

import numpy as np

from .graph import Graph, delete_vertices, simple_cycles_through

Number = Union[int, Fraction, float, complex]

SCHWENK_MAX_VERTICES = 20


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial, ``coeffs[k]`` multiplies ``t**k``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...] = ()

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: "IntPoly | int") -> "IntPoly":
        return _lift(other) - self

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        other = _lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, t: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def shift_down(self, k: int) -> "IntPoly":
        """Divide by ``t**k``; the low coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError(f"polynomial is not divisible by t^{k}")
        return IntPoly(self.coeffs[k:])

    def trailing_zeros(self) -> int:
        """Multiplicity of the root at 0."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def derivative(self) -> "IntPoly":
        return IntPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Divide out the content; the leading coefficient is made positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return IntPoly([x // c for x in self.coeffs])

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "IntPoly":
        return cls(int(s) for s in items)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _lift(p: "IntPoly | int") -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly([p])


# -- exact division machinery -------------------------------------------------


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of ``|lc(b)|**(deg a - deg b + 1) * a`` on division by ``b``.

    Using the absolute value of the leading coefficient keeps the result a
    positive multiple of the true remainder, which Sturm sequences rely on.
    """
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    lb = b.lead
    steps = 0
    while len(r) - 1 >= db and any(r):
        shift = len(r) - 1 - db
        lr = r[-1]
        # r <- lb*r - lr*t^shift*b
        r = [lb * c for c in r]
        for i, c in enumerate(b.coeffs):
            r[i + shift] -= lr * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    total = max(a.degree - db + 1, 0)
    # each step multiplied by lb; top up to the full power
    factor = lb ** (total - steps) if total > steps else 1
    out = IntPoly([c * factor for c in r])
    if lb < 0 and total % 2 == 1:
        out = -out
    return out


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, pseudo_remainder(a, b).primitive()
    return a.primitive()


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient of an exact division over the rationals, scaled to integer coefficients.

    Only the roots of the result are meaningful, not its content.
    """
    q = [Fraction(0)] * max(a.degree - b.degree + 1, 0)
    r = [Fraction(c) for c in a.coeffs]
    lb = Fraction(b.lead)
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + b.degree] / lb
        q[k] = coef
        for i, c in enumerate(b.coeffs):
            r[k + i] -= coef * c
    if any(r):
        raise ArithmeticError("division is not exact")
    den = reduce(lambda x, y: x * y // gcd(x, y), (f.denominator for f in q), 1)
    return IntPoly(int(f * den) for f in q)


def square_free(p: IntPoly) -> IntPoly:
    """Primitive square-free part of ``p`` (same distinct roots, all simple)."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return exact_quotient(p, g).primitive()


def square_free_decomposition(p: IntPoly) -> dict[int, IntPoly]:
    """Split ``p`` as ``prod(f_i ** i)`` with square-free, pairwise coprime ``f_i``.

    Uses the gcd tower ``g_0 = p``, ``g_{k+1} = gcd(g_k, g_k')``: the roots of
    ``g_k`` are the roots of ``p`` of multiplicity > k. Only factors of positive
    degree are returned, each primitive.
    """
    out: dict[int, IntPoly] = {}
    if p.degree <= 0:
        return out
    tower = [p.primitive()]
    while tower[-1].degree > 0:
        g = tower[-1]
        tower.append(poly_gcd(g, g.derivative()))
    parts = [square_free(g) for g in tower]
    for i in range(1, len(parts)):
        f = exact_quotient(parts[i - 1], parts[i]).primitive()
        if f.degree > 0:
            out[i] = f
    return out


# -- graph polynomials ---------------------------------------------------------


def charpoly(g: Graph) -> IntPoly:
    """``det(t I - A(g))`` by the Faddeev-LeVerrier recursion in exact integers.

    Works up to a few dozen vertices; the empty graph gives the constant 1.
    """
    n = g.n
    if n == 0:
        return IntPoly([1])
    adj = g.adjacency_lists()
    nbrs = [np.array([w - 1 for w in adj[v]], dtype=int) for v in range(1, n + 1)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    eye = np.zeros((n, n), dtype=object)
    np.fill_diagonal(eye, 1)
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        am = _adj_times(nbrs, m)
        m = am + coeffs[n - k + 1] * eye
        am = _adj_times(nbrs, m)
        tr = sum(am[i, i] for i in range(n))
        q, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs[n - k] = q
    return IntPoly(coeffs)


def _adj_times(nbrs: list[np.ndarray], m: np.ndarray) -> np.ndarray:
    out = np.zeros_like(m)
    for i, idx in enumerate(nbrs):
        if len(idx):
            out[i] = m[idx].sum(axis=0)
    return out


def chebyshev_q(m: int) -> IntPoly:
    """Characteristic polynomial of the path on ``m`` vertices, ``U_m(t/2)``."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    prev, cur = IntPoly([1]), IntPoly([0, 1])
    if m == 0:
        return prev
    t = IntPoly([0, 1])
    for _ in range(m - 1):
        prev, cur = cur, t * cur - prev
    return cur


def schwenk_expand(g: Graph, v: int) -> IntPoly:
    """Characteristic polynomial of ``g`` by Schwenk's vertex expansion at ``v``:

        P(F) = t P(F - v) - sum_{w ~ v} P(F - {v, w}) - 2 sum_{Z through v} P(F - Z)

    The sub-polynomials come from :func:`charpoly`.
    """
    if g.n > SCHWENK_MAX_VERTICES:
        raise ValueError(
            f"Schwenk expansion limited to {SCHWENK_MAX_VERTICES} vertices, got {g.n}"
        )
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} outside [1, {g.n}]")
    cache: dict[frozenset[int], IntPoly] = {}

    def p_minus(vs: frozenset[int]) -> IntPoly:
        if vs not in cache:
            cache[vs] = charpoly(delete_vertices(g, vs))
        return cache[vs]

    t = IntPoly([0, 1])
    out = t * p_minus(frozenset([v]))
    for w in g.neighbors(v):
        out = out - p_minus(frozenset([v, w]))
    for cyc in simple_cycles_through(g, v):
        out = out - 2 * p_minus(cyc)
    return out


def joukowski_cleared(P: IntPoly, Pv: IntPoly) -> IntPoly:
    """``x**n [P(x + 1/x) - x Pv(x + 1/x)]`` with ``n = deg P``, before stripping."""
    n = P.degree
    if n < 0:
        raise ValueError("P must be nonzero")
    if not Pv.is_zero() and Pv.degree != n - 1:
        raise ValueError(f"deg Pv must be deg P - 1 = {n - 1}, got {Pv.degree}")
    # x^n (x + 1/x)^k = (x^2 + 1)^k x^(n-k)
    xsq1 = IntPoly([1, 0, 1])
    powers = [IntPoly([1])]
    for _ in range(n):
        powers.append(powers[-1] * xsq1)
    out = IntPoly()
    for k, c in enumerate(P.coeffs):
        if c:
            out = out + c * powers[k] * IntPoly.monomial(n - k)
    for k, c in enumerate(Pv.coeffs):
        if c:
            out = out - c * powers[k] * IntPoly.monomial(n + 1 - k)
    return out


def tail_equation_poly(P: IntPoly, Pv: IntPoly) -> IntPoly:
    """Integer polynomial ``S(x)`` whose roots in ``(-1, 0) U (0, 1)`` are the
    tail parameters of the discrete eigenvalues ``x + 1/x``.

    Powers of ``x`` are divided out (``x = 0`` is ``lambda = infinity``) and the
    result is normalised to a positive leading coefficient.
    """
    s = joukowski_cleared(P, Pv)
    if s.is_zero():
        raise ArithmeticError("cleared tail equation vanished identically")
    s = s.shift_down(s.trailing_zeros())
    return -s if s.lead < 0 else s
