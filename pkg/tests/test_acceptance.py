"""One test per acceptance criterion; tolerances are the contract values."""
import math
import random
import time

import numpy as np
import pytest

from tailspec.families import flower_spectrum, star_spectrum, star_uniform_poly
from tailspec.graph import build_cycle, build_flower, build_multistar
from tailspec.oracle import (
    band_fill,
    convergence_study,
    resolvent_check,
    schur_identity_check,
    truncation_eigenvalues,
)
from tailspec.poly import charpoly, schwenk_expand
from tailspec.tail import discrete_spectrum

from conftest import all_graphs, random_graph


def close(a, b, tol):
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def test_ac1_star_111():
    start = time.perf_counter()
    target = [-3 / math.sqrt(2), 3 / math.sqrt(2)]
    assert target[1] == 2.1213203435596424
    family = star_spectrum((1, 1, 1)).lambdas
    generic = discrete_spectrum(build_multistar((1, 1, 1))).lambdas
    _, roots = star_uniform_poly(3, 1)
    uniform = [x + 1 / x for x in roots]
    for a in (family, generic, uniform):
        assert close(a, target, 1e-10)
        for b in (family, generic, uniform):
            assert close(a, b, 1e-10)
    (rep,) = convergence_study(build_multistar((1, 1, 1)), [400])
    assert close(rep.outliers, target, 1e-8)
    assert time.perf_counter() - start < 5


def test_ac2_triangle():
    g = build_cycle(3).with_anchor(1)
    sqrt5 = 2.2360679774997896
    generic = discrete_spectrum(g).lambdas
    assert close(generic, [sqrt5], 1e-10)
    assert not any(v < -2 for v in generic)
    fam = flower_spectrum((2,))
    assert fam.lambda_plus is not None and abs(fam.lambda_plus - sqrt5) <= 1e-10
    assert fam.lambda_minus is None
    assert fam.phi_zero_minus == pytest.approx(2 / 3, abs=1e-15)
    (rep,) = convergence_study(g, [400])
    assert close(rep.outliers, [sqrt5], 1e-8)


def test_ac3_bowtie():
    roots = [(-1 - math.sqrt(13)) / 6, (-1 + math.sqrt(13)) / 6]
    target = [x + 1 / x for x in roots]
    # rough values, good to about 1e-5
    assert close(target, [-2.0703682, 2.7370401], 1e-5)
    generic = discrete_spectrum(build_flower((2, 2))).lambdas
    family = flower_spectrum((2, 2)).lambdas
    assert close(generic, target, 1e-10)
    assert close(family, generic, 1e-10)
    (rep,) = convergence_study(build_flower((2, 2)), [800])
    assert close(rep.outliers, target, 1e-7)


def test_ac4_star_22():
    x = math.sqrt((math.sqrt(5) - 1) / 2)
    assert abs(x ** 4 + x ** 2 - 1) <= 1e-15
    lam = x + 1 / x
    assert lam == pytest.approx(2.0581710, abs=1e-7)
    generic = discrete_spectrum(build_multistar((2, 2))).lambdas
    family = star_spectrum((2, 2)).lambdas
    assert close(generic, [-lam, lam], 1e-10)
    assert close(family, [-lam, lam], 1e-10)
    assert abs(generic[0] + generic[1]) <= 1e-10


def test_ac5_schwenk():
    start = time.perf_counter()
    checked = 0
    for n in range(1, 6):
        for g in all_graphs(n):
            if not g.is_connected():
                continue
            p = charpoly(g)
            for v in range(1, n + 1):
                assert schwenk_expand(g, v) == p
                checked += 1
    rng = random.Random(20240601)
    done = 0
    while done < 200:
        g = random_graph(rng, rng.randint(6, 8), rng.uniform(0.3, 0.7))
        if not g.is_connected():
            continue
        assert schwenk_expand(g, rng.randint(1, g.n)) == charpoly(g)
        done += 1
    assert checked > 3000
    assert time.perf_counter() - start < 60


def test_ac6_green():
    z = 0.5
    for i, j in [(1, 1), (1, 2), (2, 2)]:
        assert resolvent_check(z, i, j, 60) <= 1e-12
        res = [resolvent_check(z, i, j, L) for L in range(20, 62)]
        ratios = [b / a for a, b in zip(res, res[1:])]
        assert max(ratios) <= abs(z) + 0.01


def test_ac7_schur():
    rng = random.Random(7)
    for seed in range(100):
        dim1 = rng.randint(1, 7)
        dim2 = rng.randint(1, 8 - dim1)
        res = schur_identity_check(dim1, dim2, seed)
        assert res["factor1"] <= 1e-12 and res["factor2"] <= 1e-12
        assert res["inverse1"] <= 1e-10 and res["inverse2"] <= 1e-10
        assert res["det22"] <= 1e-10 and res["det11"] <= 1e-10


def test_ac8_band():
    g = build_cycle(3).with_anchor(1)
    assert band_fill(truncation_eigenvalues(g, 1000)) <= 0.02
    counts = {len(r.outliers) for r in convergence_study(g, [200, 400, 800])}
    assert counts == {1}


def test_ac9_multiplicity():
    g = build_multistar((1, 1, 1, 1))
    for L in (10, 100, 400):
        eigs = np.array(truncation_eigenvalues(g, L))
        assert np.sum(np.abs(eigs) <= 1e-8) >= 2
