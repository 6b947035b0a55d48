"""Closed-form discrete spectra for multiple stars and flowers with a tail.

With ``x = +-exp(-t)`` and ``Q(2 cosh t, m) = sinh((m+1)t) / sinh t`` the tail
equation for both families turns into ``phi(t) = exp(t)`` with a strictly
decreasing ``phi``; it has a solution iff ``phi(0+) > 1``, and then exactly one.

Per-term ratios, written via half-angle identities:

* star ray of length k:   sinh(kt) / sinh((k+1)t)
* flower petal, lam > 2:  (sinh(kt) + sinh t) / sinh((k+1)t) = cosh((k-1)t/2) / cosh((k+1)t/2)
* flower petal, lam < -2: (sinh(kt) + (-1)^(k+1) sinh t) / sinh((k+1)t),
  which is the cosh ratio above for odd k and sinh((k-1)t/2) / sinh((k+1)t/2) for even k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .numerics import MONOTONE_TOL, REFINE_TOL, refine_root, solve_monotone, sturm_isolate
from .poly import IntPoly, chebyshev_q

STAR = "star"
FLOWER = "flower"

SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class FamilySpec:
    family: str
    kappa: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        if self.family not in (STAR, FLOWER):
            raise ValueError(f"family must be 'star' or 'flower', got {self.family!r}")
        if not self.kappa:
            raise ValueError("kappa must be nonempty")
        if self.family == STAR and any(k < 1 for k in self.kappa):
            raise ValueError(f"star ray lengths must be >= 1, got {self.kappa}")
        if self.family == FLOWER and any(k < 2 for k in self.kappa):
            raise ValueError(f"flower petals need k >= 2, got {self.kappa}")

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def trivial(self) -> bool:
        """The star (1, 1): a path through the root, i.e. the two-sided line."""
        return self.family == STAR and self.kappa == (1, 1)


@dataclass(frozen=True)
class FamilyReport:
    spec: FamilySpec
    t_plus: Optional[float]
    t_minus: Optional[float]
    phi_zero_plus: float
    phi_zero_minus: float
    band: tuple[float, float] = (-2.0, 2.0)
    notes: tuple[str, ...] = field(default=())

    @property
    def lambda_plus(self) -> Optional[float]:
        return None if self.t_plus is None else 2.0 * math.cosh(self.t_plus)

    @property
    def lambda_minus(self) -> Optional[float]:
        return None if self.t_minus is None else -2.0 * math.cosh(self.t_minus)

    @property
    def lambdas(self) -> list[float]:
        return [v for v in (self.lambda_minus, self.lambda_plus) if v is not None]

    def to_dict(self) -> dict:
        eigs = []
        if self.t_minus is not None:
            eigs.append({"lambda": self.lambda_minus, "x": -math.exp(-self.t_minus), "side": "below-band"})
        if self.t_plus is not None:
            eigs.append({"lambda": self.lambda_plus, "x": math.exp(-self.t_plus), "side": "above-band"})
        return {
            "family": self.spec.family,
            "kappa": list(self.spec.kappa),
            "band": list(self.band),
            "eigenvalues": eigs,
            "t_plus": self.t_plus,
            "t_minus": self.t_minus,
            "lambda_plus": self.lambda_plus,
            "lambda_minus": self.lambda_minus,
            "phi_zero_limit": {"plus": self.phi_zero_plus, "minus": self.phi_zero_minus},
            "diagnostics": {"notes": list(self.notes)},
        }


# -- overflow-safe hyperbolic ratios ----------------------------------------------


def sinh_ratio(a: float, b: float, t: float) -> float:
    """``sinh(a t) / sinh(b t)`` for ``0 < a < b``, ``t > 0``."""
    if t < SERIES_CUTOFF:
        return (a / b) * (1.0 + (a * a - b * b) * t * t / 6.0)
    return math.exp((a - b) * t) * (-math.expm1(-2 * a * t)) / (-math.expm1(-2 * b * t))


def cosh_ratio(a: float, b: float, t: float) -> float:
    """``cosh(a t) / cosh(b t)`` for ``0 <= a < b``, ``t > 0``."""
    if t < SERIES_CUTOFF:
        return 1.0 + (a * a - b * b) * t * t / 2.0
    return math.exp((a - b) * t) * (1 + math.exp(-2 * a * t)) / (1 + math.exp(-2 * b * t))


def star_phi(kappa: tuple[int, ...]) -> Callable[[float], float]:
    return lambda t: sum(sinh_ratio(k, k + 1, t) for k in kappa)


def flower_phi_plus(kappa: tuple[int, ...]) -> Callable[[float], float]:
    return lambda t: 2.0 * sum(cosh_ratio((k - 1) / 2, (k + 1) / 2, t) for k in kappa)


def flower_phi_minus(kappa: tuple[int, ...]) -> Callable[[float], float]:
    def phi(t: float) -> float:
        total = 0.0
        for k in kappa:
            if k % 2:
                total += cosh_ratio((k - 1) / 2, (k + 1) / 2, t)
            else:
                total += sinh_ratio((k - 1) / 2, (k + 1) / 2, t)
        return 2.0 * total

    return phi


def star_phi_zero(kappa: tuple[int, ...]) -> Fraction:
    return sum((Fraction(k, k + 1) for k in kappa), Fraction(0))


def flower_phi_zero_plus(kappa: tuple[int, ...]) -> Fraction:
    return Fraction(2 * len(kappa))


def flower_phi_zero_minus(kappa: tuple[int, ...]) -> Fraction:
    return 2 * sum((Fraction(k + (-1) ** (k + 1), k + 1) for k in kappa), Fraction(0))


def _solve_side(phi: Callable[[float], float], phi0: Fraction, tol: float) -> Optional[float]:
    if phi0 <= 1:
        return None
    return solve_monotone(lambda t: phi(t) - math.exp(t), tol=tol)


# -- solvers --------------------------------------------------------------------


def star_spectrum(kappa, tol: float = MONOTONE_TOL) -> FamilyReport:
    spec = kappa if isinstance(kappa, FamilySpec) else FamilySpec(STAR, tuple(kappa))
    if spec.family != STAR:
        raise ValueError("star_spectrum needs a star spec")
    phi0 = star_phi_zero(spec.kappa)
    notes = []
    if spec.trivial:
        notes.append("trivial configuration (1, 1): no discrete spectrum")
        t = None
    else:
        t = _solve_side(star_phi(spec.kappa), phi0, tol)
        if t is None:
            notes.append(f"phi(0+) = {phi0} <= 1: no discrete spectrum")
    # bipartite: the spectrum is symmetric, so both sides share t
    return FamilyReport(spec, t, t, float(phi0), float(phi0), notes=tuple(notes))


def flower_spectrum(kappa, tol: float = MONOTONE_TOL) -> FamilyReport:
    spec = kappa if isinstance(kappa, FamilySpec) else FamilySpec(FLOWER, tuple(kappa))
    if spec.family != FLOWER:
        raise ValueError("flower_spectrum needs a flower spec")
    phi0_plus = flower_phi_zero_plus(spec.kappa)
    phi0_minus = flower_phi_zero_minus(spec.kappa)
    t_plus = _solve_side(flower_phi_plus(spec.kappa), phi0_plus, tol)
    t_minus = _solve_side(flower_phi_minus(spec.kappa), phi0_minus, tol)
    notes = []
    if t_minus is None:
        notes.append(f"below-band side: phi(0+) = {phi0_minus} <= 1, no eigenvalue")
    return FamilyReport(
        spec, t_plus, t_minus, float(phi0_plus), float(phi0_minus), notes=tuple(notes)
    )


def family_spectrum(spec: FamilySpec, tol: float = MONOTONE_TOL) -> FamilyReport:
    if spec.family == STAR:
        return star_spectrum(spec, tol)
    return flower_spectrum(spec, tol)


def star_uniform_poly(n: int, p: int, tol: float = REFINE_TOL) -> tuple[IntPoly, list[float]]:
    """``(n-1) x^(2p+2) - n x^2 + 1`` for the star with ``n`` rays of length ``p``,
    together with its roots in ``(-1, 0) U (0, 1)`` in increasing order."""
    if n < 2 or p < 1:
        raise ValueError(f"need n >= 2 and p >= 1, got n={n}, p={p}")
    poly = IntPoly.monomial(2 * p + 2, n - 1) + IntPoly([1, 0, -n])
    roots = [refine_root(iv, tol) for lo, hi in ((-1, 0), (0, 1)) for iv in sturm_isolate(poly, lo, hi)]
    return poly, roots


def family_charpoly(spec: FamilySpec) -> tuple[IntPoly, IntPoly]:
    """``(P, Pv)`` for the family graph and for it with the root removed.

    Star:   P = t Q - sum_j Q(k_j - 1) prod_{i != j} Q(k_i)
    Flower: P = t Q - 2 sum_j (Q(k_j - 1) + 1) prod_{i != j} Q(k_i)
    with Q = prod_j Q(k_j) = Pv and Q(m) the path polynomial.
    """
    qs = [chebyshev_q(k) for k in spec.kappa]
    pv = IntPoly([1])
    for q in qs:
        pv = pv * q
    t = IntPoly([0, 1])
    p = t * pv
    for j, k in enumerate(spec.kappa):
        others = IntPoly([1])
        for i, q in enumerate(qs):
            if i != j:
                others = others * q
        if spec.family == STAR:
            p = p - chebyshev_q(k - 1) * others
        else:
            p = p - 2 * (chebyshev_q(k - 1) + 1) * others
    return p, pv
