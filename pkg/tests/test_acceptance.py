"""Acceptance suite: one group of tests per numbered criterion.

Run ``pytest tests/test_acceptance.py`` (or this file directly) to get one
pass/fail line per criterion at the end of the report.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from polyspaces.cohomology import (build_planar_presentation, build_pol_presentation, build_presentation,
                                   build_up_presentation, characteristic_classes, cube_zero_count, edge_data,
                                   intersection_form, liouville_volume)
from polyspaces.equilateral import (invariant_dimensions, invariant_presentation, is_standardizable,
                                    matrix_determinant, quotient_poincare, standardization_determinant)
from polyspaces.groebner import buchberger, s_polynomial
from polyspaces.invariants import alternating_short_sum, klyachko_poincare, poincare, signature
from polyspaces.lengths import chamber_representatives, random_chambers
from polyspaces.polyring import Z2

SWEEP = ([a for m in range(3, 7) for a in chamber_representatives(m)]
         + random_chambers(7, 25, seed=7) + random_chambers(8, 25, seed=8))


def sweep_ids():
    return ["m%d-%s" % (a.m, "-".join(str(x) for x in a.alpha)) for a in SWEEP]


@pytest.fixture(scope="module")
def pol_cache():
    return {}


def pol(cache, alpha, coeffs="Z"):
    key = (alpha, coeffs)
    if key not in cache:
        cache[key] = build_pol_presentation(alpha, coeffs)
    return cache[key]


# -- 1 -----------------------------------------------------------------------------------------

def test_criterion_01_quadrilaterals():
    a = build_pol_presentation((1, 1, 1, 2))
    assert a.metadata["groebner_coefficients"] == "Z"
    assert a.basis.canonical_strings() == ["V3", "V2", "V1", "R^2"]
    assert a.graded_dimensions() == [1, 0, 1]
    assert not a.gen("R").is_zero()
    assert (a.gen("R") ** 2).is_zero()

    # the worked example with the long edges last: Z[V1]/(V1^2) and R = 0 on the nose
    b = build_pol_presentation((1, 2, 2, 2))
    assert b.metadata["groebner_coefficients"] == "Z"
    assert b.basis.canonical_strings() == ["R", "V3", "V2", "V1^2"]
    assert b.graded_dimensions() == [1, 0, 1]
    assert b.gen("R").is_zero()

    # (2,2,2,1) itself: the same ring; R vanishes with a long edge distinguished,
    # and with the short last edge R = -2 V1, which is 0 mod 2
    c = build_pol_presentation((2, 2, 2, 1), edge=1)
    assert c.graded_dimensions() == [1, 0, 1]
    assert c.gen("R").is_zero()
    d = build_pol_presentation((2, 2, 2, 1))
    assert d.graded_dimensions() == [1, 0, 1]
    V1 = d.gen("V1")
    assert (V1 * V1).is_zero()
    assert d.gen("R") == -2 * V1
    assert d.integral_coordinates(d.ring.gen("V1"), 2) in ([1], [-1])
    assert build_pol_presentation((2, 2, 2, 1), Z2).gen("R").is_zero()


# -- 2 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("m", range(4, 9))
def test_criterion_02_projective_family(m):
    alpha = (1,) * (m - 1) + (m - 2,)
    pres = build_pol_presentation(alpha)
    R = pres.ring.gen("R")
    assert pres.metadata["groebner_coefficients"] == "Z"
    for d in range(0, 2 * (m - 3) + 1, 2):
        assert pres.standard_monomials(d) == [(d // 2,) + (0,) * (m - 1)]
        assert pres.reduce(R ** (d // 2)) == R ** (d // 2)
    assert (pres.gen("R") ** (m - 2)).is_zero()
    for i in range(1, m):
        assert pres.reduce(pres.ring.gen("V%d" % i)).is_zero()
    assert poincare(alpha, "Pol").coeffs == tuple([1, 0] * (m - 3) + [1])
    planar = build_planar_presentation(alpha)
    assert planar.graded_dimensions() == [1] * (m - 2)
    assert (planar.gen("R") ** (m - 3)).poly == planar.compute_ring.gen("R") ** (m - 3)
    assert (planar.gen("R") ** (m - 2)).is_zero()


# -- 3 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("m", range(4, 9))
def test_criterion_03_torus_family(m):
    eps = Fraction(1, 2 * (m - 3))
    alpha = (eps,) * (m - 3) + (1, 1, 1)
    pres = build_pol_presentation(alpha)
    n = m - 3
    assert pres.graded_dimensions()[::2] == [comb(n, k) for k in range(n + 1)]
    ring = pres.ring
    R = ring.gen("R")
    assert pres.basis.contains(R)
    for i in range(1, n + 1):
        V = ring.gen("V%d" % i)
        assert pres.basis.contains(R * V)
        assert pres.basis.contains(V * V)


# -- 4 -----------------------------------------------------------------------------------------

def test_criterion_04_regular_pentagon():
    alpha = (1, 1, 1, 1, 1)
    pres = build_pol_presentation(alpha)
    assert pres.betti() == [1, 5, 1]
    R = pres.gen("R")
    V = [pres.gen("V%d" % i) for i in range(1, 5)]
    assert R * V[0] == R * V[1] == R * V[2] == R * V[3]
    assert R * R == -3 * (R * V[0])

    ring = pres.ring
    T = ring.gen("R") + sum((ring.gen("V%d" % i) for i in range(1, 5)), ring.zero())
    form = intersection_form(pres, [T] + [ring.gen("V%d" % i) for i in range(1, 5)])
    assert form.matrix == [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(5)] for i in range(5)]

    cc = characteristic_classes(pres)
    omega = cc["omega"]
    qring = omega.presentation.compute_ring
    assert omega.poly == 3 * qring.gen("R") + 2 * sum((qring.gen("V%d" % i) for i in range(1, 5)), qring.zero())
    assert (omega * omega).poly == omega.presentation.reduce(5 * qring.gen("R") * qring.gen("V1"))
    assert liouville_volume(pres) == Fraction(5, 2)

    assert form.signature() == -3
    assert alternating_short_sum(alpha) == -3
    assert poincare(alpha, "Pol").at_i() == -3
    assert signature(alpha) == -3


# -- 5 -----------------------------------------------------------------------------------------

def test_criterion_05_hexagon_pair():
    a, b = (2, 2, 3, 5, 5, 10), (2, 2, 3, 5, 5, 8)
    for alpha in (a, b):
        assert str(poincare(alpha, "Pol")) == "1 + 4t^2 + 4t^4 + t^6"
    za, zb = build_pol_presentation(a, Z2), build_pol_presentation(b, Z2)
    assert (za.gen("R") ** 3).is_zero()
    cube = zb.gen("R") ** 3
    assert not cube.is_zero()
    assert zb.graded_dimensions()[6] == 1
    assert zb.standard_monomials(6) == [cube.poly.leading_monomial()]
    assert cube_zero_count(build_pol_presentation(a)) == 72
    assert cube_zero_count(build_pol_presentation(b)) == 80


# -- 6 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("alpha", SWEEP, ids=sweep_ids())
def test_criterion_06_formula_cross_validation(alpha, pol_cache):
    closed = poincare(alpha, "Pol")
    assert closed == klyachko_poincare(alpha)
    assert closed.is_palindromic()
    pres = pol(pol_cache, alpha)
    if pres.empty:
        assert closed.coeffs == ()
        return
    assert pres.graded_dimensions() == list(closed.coeffs)
    for space in ("UP", "APol"):
        other = build_presentation(alpha, space)
        assert other.graded_dimensions() == list(poincare(alpha, space).coeffs)


# -- 7 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("alpha", SWEEP, ids=sweep_ids())
def test_criterion_07_ideal_quotient(alpha, pol_cache):
    up = build_up_presentation(alpha, "Q")
    pres = pol(pol_cache, alpha)
    R = up.compute_ring.gen("R")
    for q in pres.relators:
        lifted = up.compute_ring(q.terms)
        assert up.reduce(R * R * lifted).is_zero()
    if not pres.empty:
        assert pres.graded_dimensions() == list(poincare(alpha, "Pol").coeffs)


# -- 8 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("alpha", SWEEP, ids=sweep_ids())
def test_criterion_08_characteristic_classes(alpha, pol_cache):
    pres = pol(pol_cache, alpha)
    if pres.empty:
        return
    cc = characteristic_classes(pres)
    m = alpha.m
    c = [cc["c%d" % i] for i in range(1, m + 1)]
    squares = [x * x for x in c]
    assert all(s == squares[0] for s in squares)
    assert cc["p"] == squares[0]
    data = edge_data(alpha)
    qpres = c[0].presentation
    R = qpres.element(qpres.compute_ring.gen("R"))
    for i in data.edges:
        if (1 << (i - 1)) not in data.subposet:
            assert c[i - 1] == R
    weighted = qpres.element(0)
    for a_i, c_i in zip(alpha.alpha, c):
        weighted = weighted + qpres.element(c_i.poly * a_i)
    assert weighted == cc["omega"]


# -- 9 -----------------------------------------------------------------------------------------

@pytest.mark.parametrize("alpha", SWEEP, ids=sweep_ids())
def test_criterion_09_planar_halving(alpha):
    planar = build_planar_presentation(alpha)
    spatial = build_pol_presentation(alpha, Z2)
    if spatial.empty:
        assert planar.empty
        return
    assert planar.graded_dimensions() == spatial.graded_dimensions()[::2]


def _planar_euler_from_ring(alpha):
    planar = build_planar_presentation(alpha)
    if planar.empty:
        return 0
    return sum((-1) ** k * n for k, n in enumerate(planar.graded_dimensions()))


def test_criterion_09_planar_euler_odd_m():
    for alpha in SWEEP:
        if alpha.m % 2:
            assert _planar_euler_from_ring(alpha) == alternating_short_sum(alpha)


def test_criterion_09_planar_euler_all_m():
    # the criterion states the identity for the whole sweep, even m included
    failures = [alpha.alpha for alpha in SWEEP
                if _planar_euler_from_ring(alpha) != alternating_short_sum(alpha)]
    assert not failures, "%d of %d chambers disagree, e.g. %s (all with even m: %s)" % (
        len(failures), len(SWEEP), tuple(str(x) for x in failures[0]), all(len(f) % 2 == 0 for f in failures))


# -- 10 ----------------------------------------------------------------------------------------

def test_criterion_10_equilateral():
    for m in (3, 5, 7, 9):
        for x in range(-5, 6):
            for y in range(-5, 6):
                if (x - y) % 2 == 0:
                    assert standardization_determinant(x, y, m) == matrix_determinant(x, y, m)
    for m in (5, 7, 9):
        assert is_standardizable(1, m, search_bound=50) is None
        units = [(x, y) for x in range(-50, 51) for y in range(-50, 51)
                 if (x - y) % 2 == 0 and abs(standardization_determinant(x, y, m)) == 1]
        assert units == []
    for m, expected in ((5, [1, 1, 1]), (7, [1, 1, 2, 1, 1])):
        assert invariant_dimensions(m) == expected
        assert quotient_poincare(m).even_part() == expected
        assert invariant_presentation(m).graded_dimensions()[::2] == expected


# -- 11 ----------------------------------------------------------------------------------------

def _engine_trial(rnd, ring, gens, reference):
    p = ring.zero()
    for _ in range(rnd.randint(1, 5)):
        mono = tuple(rnd.randint(0, 2) for _ in range(ring.nvars))
        p = p + ring.monomial(mono, rnd.randint(-7, 7))
    nf = reference.reduce(p)
    assert reference.reduce(nf) == nf
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    shuffled = [g * rnd.choice([1, -1, 2, Fraction(1, 3)]) for g in shuffled]
    basis = buchberger(shuffled, ring)
    assert basis.polys == reference.polys
    polys = basis.polys
    i, j = rnd.randrange(len(polys)), rnd.randrange(len(polys))
    assert basis.reduce(s_polynomial(polys[i], polys[j])).is_zero()


def test_criterion_11_groebner_engine():
    rnd = random.Random(2024)
    setups = []
    for alpha in ((1, 1, 1, 1, 1), (2, 2, 3, 5, 5, 10)):
        pres = build_pol_presentation(alpha, "Q")
        ring = pres.compute_ring
        gens = list(pres.relators)
        reference = buchberger(gens, ring)
        assert reference.check_confluence()
        setups.append((ring, gens, reference))
    for trial in range(1000):
        _engine_trial(rnd, *setups[trial % 2])


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
