"""Independent checks: finite truncations of the tail, the free resolvent,
block-matrix (Schur complement) identities and an exact determinant.

Nothing in here goes through the tail polynomial, so agreement with
:mod:`tailspec.tail` is a genuine cross-check.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from .graph import Graph, build_path, couple
from .numerics import SymMatrix, refine_root, sturm_isolate, sym_eigenvalues
from .poly import charpoly, square_free_decomposition
from .tail import discrete_spectrum, green_free

DEFAULT_MARGIN = 0.02
DEFAULT_LENGTHS = (50, 100, 200, 400)
MAX_COND = 1e6
MAX_RESAMPLES = 100


@dataclass(frozen=True)
class TruncationReport:
    L: int
    total_dim: int
    eigenvalues: tuple[float, ...]
    outliers: tuple[float, ...]
    predicted: tuple[float, ...]
    max_abs_error: float
    band_fill: float

    @property
    def counts_agree(self) -> bool:
        return len(self.outliers) == len(self.predicted)

    @property
    def errors(self) -> list[float]:
        if not self.counts_agree:
            return []
        return [abs(a - b) for a, b in zip(self.outliers, self.predicted)]

    def to_dict(self, with_eigenvalues: bool = False) -> dict:
        d = {
            "L": self.L,
            "total_dim": self.total_dim,
            "outliers": list(self.outliers),
            "predicted": list(self.predicted),
            "counts_agree": self.counts_agree,
            "max_abs_error": self.max_abs_error,
            "band_fill": self.band_fill,
        }
        if with_eigenvalues:
            d["eigenvalues"] = list(self.eigenvalues)
        return d


def truncate(g: Graph, L: int) -> SymMatrix:
    """Adjacency matrix of ``g`` with a path of ``L`` vertices hung on its anchor.

    Vertices of ``g`` come first, then the path starting at the vertex next to
    the anchor.
    """
    if g.anchor is None:
        raise ValueError("graph has no anchor vertex")
    if L < 1:
        raise ValueError(f"tail length must be positive, got {L}")
    return SymMatrix.from_dense(couple(g, build_path(L).with_anchor(1)).adjacency_matrix(dtype=float))


def truncation_eigenvalues(g: Graph, L: int) -> list[float]:
    m = truncate(g, L)
    # tail first, far end leading: its columns are already tridiagonal, so
    # Householder only works on the last n + 1 columns
    return sym_eigenvalues(m.permuted(np.arange(m.dim)[::-1]))


def band_fill(eigs: Sequence[float]) -> float:
    """Largest gap between consecutive eigenvalues lying in [-2, 2]."""
    inside = [v for v in eigs if -2.0 <= v <= 2.0]
    if len(inside) < 2:
        return math.inf
    return max(b - a for a, b in zip(inside, inside[1:]))


def convergence_study(
    g: Graph,
    lengths: Iterable[int] = DEFAULT_LENGTHS,
    margin: float = DEFAULT_MARGIN,
    predicted: Optional[Sequence[float]] = None,
) -> list[TruncationReport]:
    """Truncated spectra for each tail length, with band outliers matched to the
    discrete spectrum predicted by the tail equation (sorted order)."""
    lengths = list(lengths)
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ValueError(f"lengths must be strictly increasing, got {lengths}")
    if predicted is None:
        predicted = discrete_spectrum(g).lambdas
    pred = tuple(sorted(predicted))
    out = []
    for L in lengths:
        eigs = truncation_eigenvalues(g, L)
        outl = tuple(v for v in eigs if abs(v) > 2.0 + margin)
        if len(outl) == len(pred):
            err = max((abs(a - b) for a, b in zip(outl, pred)), default=0.0)
        else:
            err = math.inf
        out.append(TruncationReport(L, g.n + L, tuple(eigs), outl, pred, err, band_fill(eigs)))
    return out


def reports_to_csv(reports: Sequence[TruncationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["L", "predicted", "computed", "abs_error"])
    for r in reports:
        if r.counts_agree:
            for p, c in zip(r.predicted, r.outliers):
                w.writerow([r.L, f"{p:.17g}", f"{c:.17g}", f"{abs(p - c):.17g}"])
        else:
            for p in r.predicted:
                w.writerow([r.L, f"{p:.17g}", "", ""])
    return buf.getvalue()


# -- free resolvent ---------------------------------------------------------------


def resolvent_check(z: float, i: int, j: int, L: int) -> float:
    """``|((lam - A(P_L))^-1)_ij - r_ij(z)|`` at ``lam = z + 1/z``.

    The truncation error is of order ``|z|**(2L)``, far below double precision
    for the lengths of interest, so the dense solve runs in mpmath with enough
    digits to resolve it.
    """
    if not 0 < abs(z) < 1:
        raise ValueError(f"need 0 < |z| < 1, got {z}")
    if not (1 <= i <= L and 1 <= j <= L):
        raise ValueError(f"indices ({i}, {j}) outside [1, {L}]")
    digits = int(-(2 * L + 2) * math.log10(abs(z))) + 30
    with mpmath.workdps(max(digits, 30)):
        zz = mpmath.mpf(z)
        lam = zz + 1 / zz
        a = mpmath.zeros(L, L)
        for k in range(L):
            a[k, k] = lam
            if k + 1 < L:
                a[k, k + 1] = a[k + 1, k] = -1
        rhs = mpmath.zeros(L, 1)
        rhs[j - 1] = 1
        col = mpmath.lu_solve(a, rhs)
        exact = (zz ** (i + j) - zz ** abs(i - j)) / (zz - 1 / zz)
        return float(abs(col[i - 1] - exact))


def resolvent_check_float(z: float, i: int, j: int, L: int) -> float:
    """Same comparison in double precision (saturates near machine epsilon)."""
    lam = z + 1 / z
    a = lam * np.eye(L) - build_path(L).adjacency_matrix(dtype=float)
    rhs = np.zeros(L)
    rhs[j - 1] = 1.0
    return abs(np.linalg.solve(a, rhs)[i - 1] - green_free(z, i, j))


# -- block matrices ------------------------------------------------------------------


SCHUR_DPS = 50


def _rel(a, b) -> float:
    return float(mpmath.mnorm(a - b, "F") / mpmath.mnorm(b, "F"))


def _block(rows) -> "mpmath.matrix":
    """Assemble a 2x2 grid of mpmath matrices."""
    top, bottom = rows
    n1, n2 = top[0].rows, bottom[0].rows
    m1, m2 = top[0].cols, top[1].cols
    out = mpmath.zeros(n1 + n2, m1 + m2)
    for (r0, c0), blk in (((0, 0), top[0]), ((0, m1), top[1]), ((n1, 0), bottom[0]), ((n1, m1), bottom[1])):
        for r in range(blk.rows):
            for c in range(blk.cols):
                out[r0 + r, c0 + c] = blk[r, c]
    return out


def schur_identities(a, dim1: int) -> dict[str, float]:
    """Relative residuals of the block factorizations, block inverses and
    determinant formula for ``a`` split after row/column ``dim1``.

    Evaluated with ``SCHUR_DPS`` digits: with diagonal blocks conditioned up
    to ``MAX_COND`` the products lose about log10(cond) digits, which double
    precision cannot spare against a 1e-12 budget.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if not 0 < dim1 < n:
        raise ValueError(f"split {dim1} outside (0, {n})")
    with mpmath.workdps(SCHUR_DPS):
        m = mpmath.matrix(a.tolist())
        a11, a12 = m[:dim1, :dim1], m[:dim1, dim1:]
        a21, a22 = m[dim1:, :dim1], m[dim1:, dim1:]
        n1, n2 = dim1, n - dim1
        i1, i2 = mpmath.eye(n1), mpmath.eye(n2)
        z12, z21 = mpmath.zeros(n1, n2), mpmath.zeros(n2, n1)
        a11i, a22i = mpmath.inverse(a11), mpmath.inverse(a22)
        c22 = a22 - a21 * a11i * a12
        c11 = a11 - a12 * a22i * a21
        c11i, c22i = mpmath.inverse(c11), mpmath.inverse(c22)

        f1 = _block([[i1, z12], [a21 * a11i, i2]]) * _block([[a11, z12], [z21, c22]]) * _block([[i1, a11i * a12], [z21, i2]])
        f2 = _block([[i1, a12 * a22i], [z21, i2]]) * _block([[c11, z12], [z21, a22]]) * _block([[i1, z12], [a22i * a21, i2]])
        inv1 = _block([
            [c11i, -c11i * a12 * a22i],
            [-a22i * a21 * c11i, a22i + a22i * a21 * c11i * a12 * a22i],
        ])
        inv2 = _block([
            [a11i + a11i * a12 * c22i * a21 * a11i, -a11i * a12 * c22i],
            [-c22i * a21 * a11i, c22i],
        ])
        ainv = mpmath.inverse(m)
        det = mpmath.det(m)
        return {
            "factor1": _rel(f1, m),
            "factor2": _rel(f2, m),
            "inverse1": _rel(inv1, ainv),
            "inverse2": _rel(inv2, ainv),
            "det22": float(abs(mpmath.det(a11) * mpmath.det(c22) - det) / abs(det)),
            "det11": float(abs(mpmath.det(a22) * mpmath.det(c11) - det) / abs(det)),
        }


def random_block_matrix(dim1: int, dim2: int, seed: int) -> np.ndarray:
    """Seeded symmetric matrix, entries uniform in [-1, 1], with the whole matrix
    and both diagonal blocks conditioned better than ``MAX_COND``."""
    if dim1 < 1 or dim2 < 1:
        raise ValueError(f"block dimensions must be positive, got ({dim1}, {dim2})")
    rng = np.random.default_rng(seed)
    n = dim1 + dim2
    for _ in range(MAX_RESAMPLES):
        m = rng.uniform(-1.0, 1.0, (n, n))
        m = np.tril(m) + np.tril(m, -1).T
        if max(np.linalg.cond(m), np.linalg.cond(m[:dim1, :dim1]), np.linalg.cond(m[dim1:, dim1:])) <= MAX_COND:
            return m
    raise ArithmeticError(f"no well-conditioned sample after {MAX_RESAMPLES} draws")


def schur_identity_check(dim1: int, dim2: int, seed: int) -> dict[str, float]:
    return schur_identities(random_block_matrix(dim1, dim2, seed), dim1)


# -- exact determinants and multiplicities ---------------------------------------------


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def shifted_det(g: Graph, lam0: int) -> int:
    """``det(lam0 I - A(g))`` computed exactly."""
    a = g.adjacency_matrix()
    return bareiss_det((lam0 * np.eye(g.n, dtype=int) - a).tolist())


@dataclass(frozen=True)
class PersistenceCount:
    eigenvalue: float
    multiplicity: int
    count: int

    def to_dict(self) -> dict:
        return {"eigenvalue": self.eigenvalue, "multiplicity": self.multiplicity, "count": self.count}


def embedded_multiplicity_probe(g: Graph, L: int, tol: float = 1e-8) -> list[PersistenceCount]:
    """For each eigenvalue of ``g`` of multiplicity >= 3, how many eigenvalues of
    the length-``L`` truncation sit within ``tol`` of it.

    Such eigenvalues must survive attaching the tail with multiplicity at least
    ``mult - 2``. Graphs that are not connected return an empty list.
    """
    if g.anchor is None:
        raise ValueError("graph has no anchor vertex")
    if not g.is_connected():
        return []
    bound = max(g.degree(v) for v in range(1, g.n + 1)) + 1 if g.n else 1
    targets = []
    for mult, factor in square_free_decomposition(charpoly(g)).items():
        if mult < 3:
            continue
        for iv in sturm_isolate(factor, -bound, bound):
            targets.append((refine_root(iv), mult))
    if not targets:
        return []
    eigs = np.array(truncation_eigenvalues(g, L))
    return [
        PersistenceCount(lam, mult, int(np.sum(np.abs(eigs - lam) <= tol)))
        for lam, mult in sorted(targets)
    ]
