"""Root isolation, root refinement, monotone equation solving and a dense
symmetric eigensolver.

Root counting is exact (rational Sturm sequences); only the final polish of
an isolated root uses floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from .poly import IntPoly, pseudo_remainder, square_free

Rational = Union[int, Fraction]

REFINE_TOL = 1e-13
MONOTONE_TOL = 1e-14
MONOTONE_T_MIN = 1e-8
QL_MAX_ITER = 30


class EigenConvergenceError(ArithmeticError):
    """QL iteration did not converge within the iteration cap."""


# -- Sturm isolation ----------------------------------------------------------


@dataclass(frozen=True)
class RootInterval:
    """Open interval ``(lo, hi)`` holding exactly one root of ``poly``.

    ``poly`` is the square-free polynomial that was isolated, so the root is
    simple and ``poly`` changes sign across it.
    """

    lo: Fraction
    hi: Fraction
    poly: IntPoly
    refined: Optional[float] = None
    residual: Optional[float] = None

    def refine(self, tol: float = REFINE_TOL) -> "RootInterval":
        x = refine_root(self, tol)
        return replace(self, refined=x, residual=abs(float(self.poly(x))))


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of ``p``, each member scaled by a positive constant."""
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = pseudo_remainder(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-_positive_primitive(r))
    return seq


def _positive_primitive(p: IntPoly) -> IntPoly:
    c = p.content()
    return IntPoly([x // c for x in p.coeffs])


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: list[IntPoly], c: Rational) -> int:
    signs = [s for s in (_sign(q(c)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_isolate(p: IntPoly, lo: Rational, hi: Rational) -> list[RootInterval]:
    """Isolate every distinct real root of ``p`` in the open interval ``(lo, hi)``.

    Intervals come back sorted, pairwise disjoint, with endpoints that are not
    roots of ``p``.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    q = square_free(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)

    def count(a: Fraction, b: Fraction) -> int:
        # V(a) - V(b) counts roots in (a, b]
        return sign_variations(seq, a) - sign_variations(seq, b) - (q(b) == 0)

    def nonroot_split(a: Fraction, b: Fraction) -> Fraction:
        for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
            m = a + (b - a) * num / den
            if q(m) != 0:
                return m
        k = 11
        while True:
            m = a + (b - a) * Fraction(k // 2, k)
            if q(m) != 0:
                return m
            k += 2

    out: list[RootInterval] = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append(RootInterval(*_pull_in(q, seq, a, b), poly=q))
            continue
        m = nonroot_split(a, b)
        stack.append((m, b, count(m, b)))
        stack.append((a, m, count(a, m)))
    out.sort(key=lambda r: r.lo)
    return out


def _pull_in(q: IntPoly, seq: list[IntPoly], a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Move root endpoints of a one-root interval slightly inwards."""
    step = (b - a) / 2
    while q(a) == 0:
        step /= 2
        cand = a + step
        if q(cand) != 0 and sign_variations(seq, cand) - sign_variations(seq, b) - (q(b) == 0) == 1:
            a = cand
    step = (b - a) / 2
    while q(b) == 0:
        step /= 2
        cand = b - step
        if q(cand) != 0 and sign_variations(seq, a) - sign_variations(seq, cand) == 1:
            b = cand
    return a, b


def refine_root(r: RootInterval, tol: float = REFINE_TOL) -> float:
    """Shrink ``r`` by exact bisection to width <= ``tol``, then polish with Newton.

    A Newton iterate that leaves the current bracket is discarded in favour of
    the bracket midpoint, so the result always stays inside ``(r.lo, r.hi)``.
    """
    q = r.poly
    a, b = r.lo, r.hi
    sa = _sign(q(a))
    tol_q = Fraction(tol)
    while b - a > tol_q:
        m = (a + b) / 2
        sm = _sign(q(m))
        if sm == 0:
            return float(m)
        if sm == sa:
            a = m
        else:
            b = m
    fa, fb = float(a), float(b)
    x = float((a + b) / 2)
    dq = q.derivative()
    for _ in range(8):
        fx = float(q(x))
        if fx == 0.0:
            break
        d = float(dq(x))
        if d == 0.0:
            break
        nx = x - fx / d
        if not fa <= nx <= fb:
            break
        if nx == x:
            break
        x = nx
    return min(max(x, fa), fb)


# -- monotone transcendental equations ----------------------------------------


def solve_monotone(
    f: Callable[[float], float],
    t_lo: float = MONOTONE_T_MIN,
    tol: float = MONOTONE_TOL,
    t_hi: float = 1.0,
) -> Optional[float]:
    """Zero of a strictly decreasing ``f`` on ``t > 0``, or None.

    None means ``f(t_lo) <= 0``, i.e. no zero to the right of ``t_lo``. The
    bracket starts at ``[t_lo, t_hi]`` and doubles until ``f`` turns negative.
    """
    if f(t_lo) <= 0:
        return None
    a = t_lo
    b = max(t_hi, t_lo * 2)
    while f(b) > 0:
        a, b = b, 2 * b
        if b > 1e6:
            raise ArithmeticError("bracket doubling did not find a sign change")
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        if f(m) > 0:
            a = m
        else:
            b = m
    # one interpolation step inside the final bracket
    fa, fb = f(a), f(b)
    if fa > 0 >= fb and fa != fb:
        return min(max(a + (b - a) * fa / (fa - fb), a), b)
    return 0.5 * (a + b)


# -- symmetric eigensolver ------------------------------------------------------


@dataclass(frozen=True)
class SymMatrix:
    """Dense real symmetric matrix kept as its lower triangle."""

    dim: int
    lower: np.ndarray

    @classmethod
    def from_dense(cls, a, atol: float = 0.0) -> "SymMatrix":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"need a nonempty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        if np.max(np.abs(a - a.T), initial=0.0) > atol:
            raise ValueError("matrix is not symmetric")
        low = np.tril(a)
        low.setflags(write=False)
        return cls(a.shape[0], low)

    def dense(self) -> np.ndarray:
        return self.lower + np.tril(self.lower, -1).T

    def permuted(self, order) -> "SymMatrix":
        """Symmetric permutation ``P A P^T`` with row ``k`` taken from ``order[k]``."""
        idx = np.asarray(order)
        return SymMatrix.from_dense(self.dense()[np.ix_(idx, idx)])


def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Returns ``(diag, offdiag)``. Columns that are already in tridiagonal form
    are skipped, so banded inputs cost little.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            d[k] = a[k, k]
            e[k] = x[0]
            continue
        alpha = math.hypot(x[0], tail)
        if x[0] > 0:
            alpha = -alpha
        v = x.copy()
        v[0] -= alpha
        beta = 2.0 / np.dot(v, v)
        sub = a[k + 1:, k + 1:]
        p = beta * (sub @ v)
        w = p - (0.5 * beta * np.dot(v, p)) * v
        sub -= np.outer(v, w) + np.outer(w, v)
        d[k] = a[k, k]
        e[k] = alpha
    if n >= 2:
        d[n - 2] = a[n - 2, n - 2]
        e[n - 2] = a[n - 1, n - 2]
    d[n - 1] = a[n - 1, n - 1]
    return d, e


def tridiagonal_eigenvalues(diag, offdiag, max_iter: int = QL_MAX_ITER) -> list[float]:
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL."""
    d = [float(v) for v in diag]
    n = len(d)
    e = [float(v) for v in offdiag] + [0.0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 2.2e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise EigenConvergenceError(f"QL iteration stalled at index {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


def sym_eigenvalues(m: SymMatrix, max_iter: int = QL_MAX_ITER) -> list[float]:
    """All eigenvalues of ``m`` in nondecreasing order.

    Householder tridiagonalization followed by implicit QL; works on a copy.
    """
    d, e = tridiagonalize(m.dense())
    return tridiagonal_eigenvalues(d, e, max_iter)
