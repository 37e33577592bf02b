from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyspaces.errors import DimensionMismatch, Inconsistent, NonGeneric
from polyspaces.lengths import (LengthVector, SubsetFamily, chamber_representatives, classify_pair,
                                distinguished_longs, distinguished_subposet, find_collinear_signs,
                                is_empty_space, is_generic, long_family, longs_avoiding_last, mask_of,
                                random_chambers, reconstruct_shorts, short_family)


def sets(family):
    return sorted(tuple(sorted(s)) for s in family)


def brute_generic(alpha):
    """Every sign vector, no symmetry reduction."""
    for signs in itertools.product((1, -1), repeat=len(alpha)):
        if sum(s * a for s, a in zip(signs, alpha)) == 0:
            return False
    return True


def brute_shorts(alpha):
    m = len(alpha)
    total = sum(alpha)
    out = set()
    for r in range(m + 1):
        for J in itertools.combinations(range(1, m + 1), r):
            if 2 * sum(alpha[j - 1] for j in J) < total:
                out.add(tuple(J))
    return sorted(out)


generic_alphas = st.lists(st.integers(1, 30), min_size=3, max_size=7).filter(lambda a: sum(a) % 2 == 1)


# -- parsing -----------------------------------------------------------------

def test_parse_integers_and_rationals():
    a = LengthVector.parse("1/3, 1/3,1,1,1")
    assert a.alpha[0] == Fraction(1, 3)
    assert a.m == 5
    assert a.integer_weights() == (1, 1, 3, 3, 3)


@pytest.mark.parametrize("bad", ["1.5,1,1", "1e3,1,1", "1,1", "0,1,1", "-1,2,2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        LengthVector.parse(bad)


def test_floats_rejected():
    with pytest.raises(TypeError):
        LengthVector([1.0, 1, 1])


# -- genericity -------------------------------------------------------------------

@pytest.mark.parametrize("alpha, expected", [
    ((1, 1, 1, 1), False),
    ((1, 1, 1, 1, 1), True),
    ((2, 2, 3, 5, 5, 10), True),
])
def test_is_generic_examples(alpha, expected):
    assert is_generic(alpha) is expected
    assert brute_generic(alpha) is expected


def test_nongeneric_message_names_the_collinear_sum():
    with pytest.raises(NonGeneric) as info:
        short_family((1, 1, 1, 1))
    assert str(info.value) == "non-generic: 1+1−1−1=0"
    assert sum(s * a for s, a in zip(info.value.witness, (1, 1, 1, 1))) == 0


@given(st.lists(st.integers(1, 12), min_size=3, max_size=8))
def test_genericity_matches_full_sign_enumeration(alpha):
    assert is_generic(alpha) == brute_generic(alpha)
    signs = find_collinear_signs(alpha)
    if signs is not None:
        assert sum(s * a for s, a in zip(signs, alpha)) == 0


# -- short families -------------------------------------------------------------

def test_maximal_shorts_quadrilaterals():
    assert sets(short_family((1, 1, 1, 2)).maximal()) == [(1, 2), (1, 3), (2, 3), (4,)]
    assert sets(short_family((2, 2, 2, 1)).maximal()) == [(1, 4), (2, 4), (3, 4)]


def test_triangle_shorts():
    assert sets(short_family((1, 1, 1))) == [(), (1,), (2,), (3,)]


def test_distinguished_subposet_examples():
    # the empty set belongs to S_5 by definition
    assert sets(distinguished_subposet((1, 1, 1, 1, 1), 5)) == [(), (1,), (2,), (3,), (4,)]
    assert sets(distinguished_subposet((2, 2, 3, 5, 5, 10), 6)) == [(), (1,), (2,), (3,)]
    assert sets(distinguished_subposet((1, 1, 10), 3)) == []


def test_distinguished_longs_and_longs_avoiding_last():
    alpha = (1, 1, 1, 2)
    assert sets(distinguished_longs(alpha).minimal()) == [(1,), (2,), (3,)]
    assert sets(longs_avoiding_last(alpha).minimal()) == [(1, 2, 3)]


def test_empty_space_detection():
    assert is_empty_space((1, 1, 10))
    assert not is_empty_space((1, 1, 1))


@given(generic_alphas)
def test_short_family_matches_brute_force(alpha):
    assert sets(short_family(alpha)) == brute_shorts(alpha)


@given(generic_alphas)
def test_family_closure_and_complement(alpha):
    s = short_family(alpha)
    l = long_family(alpha)
    m = len(alpha)
    full = (1 << m) - 1
    assert s.is_down_closed() and l.is_up_closed()
    for x in range(1 << m):
        assert (x in s.members) != ((full ^ x) in s.members)
        assert (x in s.members) != (x in l.members)
    assert 0 in s.members
    singletons_short = all((1 << i) in s.members for i in range(m))
    assert singletons_short == (not is_empty_space(alpha))


@given(generic_alphas, st.randoms(use_true_random=False))
def test_short_family_is_equivariant(alpha, rnd):
    m = len(alpha)
    perm = list(range(1, m + 1))
    rnd.shuffle(perm)
    a = LengthVector(alpha)
    b = a.permuted(perm)
    image = sorted(tuple(sorted(perm[i - 1] for i in J)) for J in short_family(a).as_sets())
    assert image == sets(short_family(b))


# -- reconstruction ---------------------------------------------------------------

def test_reconstruct_quadrilateral():
    sk = distinguished_subposet((1, 1, 1, 2), 4)
    assert sets(sk) == [()]
    assert reconstruct_shorts(sk, 4, 4).members == short_family((1, 1, 1, 2)).members


def test_reconstruct_empty_subposet():
    empty = SubsetFamily((1, 2), frozenset(), "subposet", 3)
    s = reconstruct_shorts(empty, 3, 3)
    assert 0 in s.members
    assert mask_of([3]) not in s.members


def test_reconstruct_rejects_non_down_closed():
    bad = SubsetFamily((1, 2, 3), frozenset({mask_of([1, 2])}), "subposet", 4)
    with pytest.raises(Inconsistent):
        reconstruct_shorts(bad, 4, 4)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_reconstruct_every_chamber(m):
    for alpha in chamber_representatives(m):
        for k in range(1, m + 1):
            sk = distinguished_subposet(alpha, k)
            assert reconstruct_shorts(sk, k, m).members == short_family(alpha).members


def test_reconstruct_random_heptagons():
    for alpha in random_chambers(7, 15, seed=3):
        sk = distinguished_subposet(alpha, 7)
        assert reconstruct_shorts(sk, 7, 7).members == short_family(alpha).members


# -- classification ----------------------------------------------------------------

def test_classify_examples():
    assert classify_pair((1, 1, 1, 2), (1, 1, 1, 2)) == (1, 2, 3, 4)
    assert classify_pair((1, 1, 1, 2), (2, 2, 2, 1)) is None
    perm = classify_pair((1, 2, 3, 5), (3, 1, 5, 2))
    assert perm is not None
    image = {frozenset(perm[i - 1] for i in J) for J in short_family((1, 2, 3, 5)).as_sets()}
    assert image == set(short_family((3, 1, 5, 2)).as_sets())
    # the reordering itself is also a witness (witnesses are not unique here)
    reorder = (2, 4, 1, 3)
    assert LengthVector((1, 2, 3, 5)).permuted(reorder) == LengthVector((3, 1, 5, 2))
    image = {frozenset(reorder[i - 1] for i in J) for J in short_family((1, 2, 3, 5)).as_sets()}
    assert image == set(short_family((3, 1, 5, 2)).as_sets())


def test_classify_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        classify_pair((1, 1, 1), (1, 1, 1, 2))


@settings(max_examples=40)
@given(generic_alphas, st.randoms(use_true_random=False))
def test_classify_finds_relabellings(alpha, rnd):
    perm = list(range(1, len(alpha) + 1))
    rnd.shuffle(perm)
    a = LengthVector(alpha)
    b = a.permuted(perm)
    found = classify_pair(a, b)
    assert found is not None
    image = {frozenset(found[i - 1] for i in J) for J in short_family(a).as_sets()}
    assert image == set(short_family(b).as_sets())


def test_chamber_counts():
    assert [len(chamber_representatives(m)) for m in (3, 4, 5)] == [2, 3, 7]
