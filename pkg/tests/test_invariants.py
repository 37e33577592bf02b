from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyspaces.errors import EvenEdgeCount, InexactDivision, NonGeneric
from polyspaces.invariants import (PoincarePolynomial, alternating_short_sum, even_cohomology_identities,
                                   exact_divide, klyachko_poincare, planar_euler, poincare, signature)

generic_alphas = st.lists(st.integers(1, 25), min_size=3, max_size=8).filter(lambda a: sum(a) % 2 == 1)


def test_poincare_examples():
    assert str(poincare((2, 2, 3, 5, 5, 10), "Pol")) == "1 + 4t^2 + 4t^4 + t^6"
    for m in range(4, 9):
        alpha = (1,) * (m - 1) + (m - 2,)
        assert poincare(alpha, "pol").coeffs == tuple([1, 0] * (m - 3) + [1])
    assert poincare((1, 1, 10), "Pol").coeffs == ()
    assert str(poincare((1, 1, 10))) == "0"


def test_other_spaces():
    # UP(1,1,1,2) is CP^3 and APol(1,1,1,2) is CP^2
    assert poincare((1, 1, 1, 2), "UP").coeffs == (1, 0, 1, 0, 1, 0, 1)
    assert poincare((1, 1, 1, 2), "apol").coeffs == (1, 0, 1, 0, 1)
    with pytest.raises(ValueError):
        poincare((1, 1, 1, 2), "nope")


def test_klyachko_examples():
    assert str(klyachko_poincare((1, 1, 1, 1, 1))) == "1 + 5t^2 + t^4"
    assert str(klyachko_poincare((1, 1, 1, 2))) == "1 + t^2"
    assert str(klyachko_poincare((2, 2, 3, 5, 5, 8))) == "1 + 4t^2 + 4t^4 + t^6"


def test_signature_examples():
    assert signature((1, 1, 1, 1, 1)) == -3
    assert signature((1, 1, 1, 1, 3)) == 1
    assert poincare((1, 1, 1, 1, 3)).at_i() == 1
    assert signature((1, 1, 1)) == 1
    with pytest.raises(EvenEdgeCount):
        signature((1, 1, 1, 2))
    with pytest.raises(NonGeneric):
        signature((1, 1, 1, 1, 2, 2))


def test_planar_euler_examples():
    assert planar_euler((1, 1, 1, 1, 1)) == -3
    assert planar_euler((1, 1, 1, 1, 1, 4)) == 0   # RP^3
    assert alternating_short_sum((1, 1, 1, 1, 1, 4)) == 1
    assert planar_euler((1, 1, 1, 1, 3)) == 1      # RP^2
    eps = Fraction(1, 4)
    assert planar_euler((eps, eps, 1, 1, 1)) == 0  # torus


def test_exact_divide():
    assert exact_divide([1, 0, -1], [1, -1]) == [1, 1]
    with pytest.raises(InexactDivision):
        exact_divide([1, 0, 1], [1, -1])


def test_polynomial_rendering_and_evaluation():
    p = PoincarePolynomial([1, 0, 5, 0, 1])
    assert str(p) == "1 + 5t^2 + t^4"
    assert p.at_i() == -3
    assert p.at(1) == 7
    assert p.is_palindromic()
    assert p.even_part() == [1, 5, 1]
    assert str(PoincarePolynomial([0, -2, 0, 1])) == "-2t + t^3"


@settings(max_examples=150)
@given(generic_alphas)
def test_formulas_agree(alpha):
    pol = poincare(alpha, "Pol")
    assert pol == klyachko_poincare(alpha)
    for space in ("Pol", "APol", "UP"):
        p = poincare(alpha, space)
        assert p.is_palindromic()
        assert all(c >= 0 for c in p.coeffs)
        assert all(c == 0 for c in p.coeffs[1::2])
    assert all(even_cohomology_identities(alpha).values())
    if len(alpha) % 2:
        assert planar_euler(alpha) == alternating_short_sum(alpha)
        assert signature(alpha) == pol.at_i().real
        assert pol.at_i().imag == 0
