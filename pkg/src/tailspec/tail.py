"""Spectrum of a finite anchored graph with a one-sided infinite path attached.

The essential spectrum is always the band [-2, 2]. A point ``lam`` off the band
is an eigenvalue iff

    P(lam) - G(lam) * Pv(lam) = 0,

where ``P`` and ``Pv`` are the characteristic polynomials of the finite graph
and of the finite graph with its anchor removed, and ``G`` is the Green's
function of the tail at its first vertex. For the free path ``G = x`` under
``lam = x + 1/x``, ``|x| < 1``, which turns the condition into the integer
polynomial equation handled by :func:`tailspec.poly.tail_equation_poly`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np

from .graph import Graph, delete_vertices
from .numerics import REFINE_TOL, SymMatrix, refine_root, sturm_isolate
from .poly import IntPoly, charpoly, joukowski_cleared, tail_equation_poly

Scalar = Union[float, complex]

BAND = (-2.0, 2.0)
NEAR_BAND = 1e-6

ABOVE = "above-band"
BELOW = "below-band"


def lambda_from_x(x: Scalar) -> Scalar:
    return x + 1 / x


def x_from_lambda(lam: float) -> float:
    """Inverse of ``x + 1/x`` on ``|lam| > 2``, choosing ``|x| < 1``."""
    if abs(lam) <= 2:
        raise ValueError(f"|lambda| must exceed 2, got {lam}")
    # 2 / (lam + sign*sqrt(lam^2 - 4)) avoids cancellation
    return 2.0 / (lam + math.copysign(math.sqrt(lam * lam - 4.0), lam))


def green_free(z: Scalar, i: int, j: int) -> Scalar:
    """Entry ``(i, j)`` of the resolvent of the free half-line Jacobi matrix at ``z + 1/z``.

    ``r_ij(z) = (z**(i+j) - z**|i-j|) / (z - 1/z)`` for ``0 < |z| < 1``.
    """
    if i < 1 or j < 1:
        raise ValueError(f"indices are 1-based, got ({i}, {j})")
    if z == 0 or abs(z) >= 1:
        raise ValueError(f"need 0 < |z| < 1, got {z}")
    return (z ** (i + j) - z ** abs(i - j)) / (z - 1 / z)


def path_green(lam: float) -> float:
    """Green's function of the free half-line at its first vertex, for real ``|lam| > 2``."""
    return x_from_lambda(lam)


@dataclass(frozen=True)
class DiscreteEigenvalue:
    lam: float
    x: float
    side: str
    residual: float
    near_band: bool = False

    def to_dict(self) -> dict:
        d = {"lambda": self.lam, "x": self.x, "side": self.side, "residual": self.residual}
        if self.near_band:
            d["flag"] = "near-band, low confidence"
        return d


@dataclass(frozen=True)
class SpectrumReport:
    band: tuple[float, float] = BAND
    eigenvalues: tuple[DiscreteEigenvalue, ...] = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def lambdas(self) -> list[float]:
        return [e.lam for e in self.eigenvalues]

    def to_dict(self) -> dict:
        return {
            "band": list(self.band),
            "eigenvalues": [e.to_dict() for e in self.eigenvalues],
            "diagnostics": dict(self.diagnostics),
        }


def anchored_polys(g: Graph) -> tuple[IntPoly, IntPoly]:
    """``(P(g), P(g - anchor))``."""
    if g.anchor is None:
        raise ValueError("graph has no anchor vertex")
    return charpoly(g), charpoly(delete_vertices(g, [g.anchor]))


def _float_eval(p: IntPoly, t: float) -> float:
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * t + float(c)
    return acc


def discrete_spectrum(g: Graph, tol: float = REFINE_TOL) -> SpectrumReport:
    """Band plus every discrete eigenvalue of ``g`` with the free tail at its anchor."""
    P, Pv = anchored_polys(g)
    return _spectrum_from_polys(P, Pv, tol)


def _spectrum_from_polys(P: IntPoly, Pv: IntPoly, tol: float) -> SpectrumReport:
    cleared = joukowski_cleared(P, Pv)
    S = tail_equation_poly(P, Pv)
    at_edges = int(S(1) == 0) + int(S(-1) == 0)
    found = []
    for lo, hi, side in ((-1, 0, BELOW), (0, 1, ABOVE)):
        for iv in sturm_isolate(S, lo, hi):
            x = refine_root(iv, tol)
            lam = lambda_from_x(x)
            res = abs(_float_eval(P, lam) - x * _float_eval(Pv, lam))
            found.append(DiscreteEigenvalue(lam, x, side, res, abs(x) > 1 - NEAR_BAND))
    diagnostics = {
        "stripped_x_power": cleared.trailing_zeros(),
        "tail_poly_degree": S.degree,
        "band_edge_roots_discarded": at_edges,
    }
    return SpectrumReport(BAND, tuple(found), diagnostics)


def full_spectrum_report(g: Graph, tol: float = REFINE_TOL) -> SpectrumReport:
    """:func:`discrete_spectrum` sorted by eigenvalue, with the polynomials attached."""
    P, Pv = anchored_polys(g)
    rep = _spectrum_from_polys(P, Pv, tol)
    diag = dict(rep.diagnostics)
    diag["charpoly"] = P.to_strings()
    diag["charpoly_minus_anchor"] = Pv.to_strings()
    diag["tail_poly"] = tail_equation_poly(P, Pv).to_strings()
    diag["n"] = g.n
    diag["anchor"] = g.anchor
    return replace(rep, eigenvalues=tuple(sorted(rep.eigenvalues, key=lambda e: e.lam)), diagnostics=diag)


def schur_complement_matrix(
    g: Graph, lam: float, green: Callable[[float], float] = path_green
) -> SymMatrix:
    """``lam I - A(g) - G(lam) E`` with ``E`` the unit matrix at the anchor slot.

    Its determinant vanishes exactly when ``lam`` is a discrete eigenvalue.
    ``green`` defaults to the free half-line.
    """
    if g.anchor is None:
        raise ValueError("graph has no anchor vertex")
    if abs(lam) <= 2:
        raise ValueError(f"|lambda| must exceed 2, got {lam}")
    c = lam * np.eye(g.n) - g.adjacency_matrix(dtype=float)
    c[g.anchor - 1, g.anchor - 1] -= green(lam)
    return SymMatrix.from_dense(c)
