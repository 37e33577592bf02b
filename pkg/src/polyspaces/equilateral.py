"""Equilateral polygon spaces: the symmetric group action on ``H^2`` and the invariant ring."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Optional, Sequence

from .cohomology import RingPresentation, _rational_view, build_pol_presentation
from .errors import ParityViolation, TooLarge
from .invariants import PoincarePolynomial, exact_divide, poly_mul
from .linalg import bareiss_determinant, rank_mod_p, row_echelon
from .polyring import QQ, PolyRing

MAX_AVERAGING_M = 7


def _check_odd(m: int) -> int:
    m = int(m)
    if m < 3 or m % 2 == 0:
        raise ValueError("equilateral computations need an odd edge count m >= 3, got %d" % m)
    return m


def equilateral(m: int) -> tuple:
    return (1,) * m


# ---------------------------------------------------------------------------
# standardizing H^2

def standardization_matrix(x: int, y: int, m: int) -> list:
    """Rows ``b_m, b_1, ..., b_{m-1}`` written in ``R, V_1..V_{m-1}``.

    ``b_i = (x/2) c_i + (y/2) sum_j c_j`` with ``c_m = -R`` and ``c_i = R + 2 V_i``.
    """
    m = _check_odd(m)
    if (x - y) % 2:
        raise ParityViolation("x and y must have the same parity (x=%d, y=%d)" % (x, y))
    # (y/2)(m-2) R + y sum V_i is the symmetric part
    sym_r2 = y * (m - 2)  # twice the R coefficient
    rows = []
    first = [(-x + sym_r2) // 2] + [y] * (m - 1)
    rows.append(first)
    for i in range(1, m):
        row = [(x + sym_r2) // 2] + [y] * (m - 1)
        row[i] += x
        rows.append(row)
    return rows


def standardization_determinant(x: int, y: int, m: int) -> int:
    """``-x^(m-1) (x + y m) / 2``."""
    m = _check_odd(m)
    if (x - y) % 2:
        raise ParityViolation("x and y must have the same parity (x=%d, y=%d)" % (x, y))
    return -(x ** (m - 1)) * (x + y * m) // 2


def matrix_determinant(x: int, y: int, m: int) -> int:
    """Determinant of :func:`standardization_matrix` by integer elimination."""
    return bareiss_determinant(standardization_matrix(x, y, m))


def _is_unit_after_inverting(value: int, n: int) -> bool:
    if value == 0:
        return False
    value = abs(value)
    g = gcd(value, n)
    while g > 1:
        value //= g
        g = gcd(value, n)
    return value == 1


def is_standardizable(n: int, m: int, search_bound: int = 50) -> Optional[tuple]:
    """A pair ``(x, y)`` whose basis is invertible over ``Z[1/n]``, or ``None`` within the bound."""
    m = _check_odd(m)
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        return (2, 0)
    if _is_unit_after_inverting(m, n):
        return (m, 1)
    pairs = ((x, y) for x in range(-search_bound, search_bound + 1)
             for y in range(-search_bound, search_bound + 1) if (x - y) % 2 == 0)
    for x, y in sorted(pairs, key=lambda p: (max(abs(p[0]), abs(p[1])), p)):
        if _is_unit_after_inverting(standardization_determinant(x, y, m), n):
            return (x, y)
    return None


def mod2_action_is_standard(m: int) -> bool:
    """Whether the ``x=m, y=1`` basis stays a basis mod 2 (a permuted ``Z2``-basis)."""
    mat = standardization_matrix(m, 1, m)
    full_rank = rank_mod_p(mat, 2) == m
    odd = standardization_determinant(m, 1, m) % 2 == 1
    if full_rank != odd:
        raise AssertionError("rank and determinant parity disagree mod 2")
    return full_rank


# ---------------------------------------------------------------------------
# the invariant ring

def quotient_poincare(m: int) -> PoincarePolynomial:
    """``(1 - t^(m-1)) (1 - t^(m+1)) / ((1 - t^2) (1 - t^4))``."""
    m = _check_odd(m)
    num = poly_mul([1] + [0] * (m - 2) + [-1], [1] + [0] * m + [-1])
    return PoincarePolynomial(exact_divide(num, poly_mul([1, 0, -1], [1, 0, 0, 0, -1])))


def invariant_presentation(m: int) -> RingPresentation:
    """``Q[p, s1..s_h]`` (``h = (m-1)/2``) modulo the recursion and the two binomial relators.

    ``s_i`` stands for the ``i``-th elementary symmetric polynomial in the
    Chern classes. The degree ``m+1`` relator includes its ``i = h+1`` term,
    with ``s_{h+1}`` eliminated through the recursion.
    """
    m = _check_odd(m)
    h = (m - 1) // 2
    names = ["s%d" % i for i in range(1, h + 1)] + ["p"]
    ring = PolyRing(names, [2 * i for i in range(1, h + 1)] + [4], QQ)
    p = ring.gen("p")

    def sigma(i):
        if i < 0:
            return ring.zero()
        if i == 0:
            return ring.one()
        return ring.gen("s%d" % i)

    recursion = []
    for i in range(1, h):
        recursion.append(sigma(1) * sigma(i) - (i + 1) * sigma(i + 1) - (m - (i - 1)) * p * sigma(i - 1))
    low = ring.zero()
    for i in range(h % 2, h + 1, 2):
        low = low + comb(m - i, (m + 1) // 2 - i) * p ** ((h - i) // 2) * sigma(i)
    # the sum runs up to i = h + 1; sigma_{h+1} comes from one more step of the recursion
    extra = (sigma(1) * sigma(h) - (m - (h - 1)) * p * sigma(h - 1)) * Fraction(1, h + 1)
    high = ring.zero()
    for i in range((h + 1) % 2, h + 2, 2):
        if i == h + 1:
            high = high + Fraction(1, comb(m, i)) * extra
            continue
        high = high + Fraction(comb(h + 1, i), comb(m, i)) * p ** ((h + 1 - i) // 2) * sigma(i)
    families = {"R1": recursion, "low": [low], "high": [high]}
    return RingPresentation("Invariant", ring, families, 2 * (m - 3), None, None, {"m": m})


# ---------------------------------------------------------------------------
# permutation action

@dataclass
class PermutationAction:
    """``c_i -> c_{perm(i)}`` on a ``Q``-extended ``Pol`` presentation.

    ``perm`` is 1-based: ``perm[i-1]`` is the image of ``i``. The presentation
    must use the last edge as its distinguished edge.
    """

    perm: tuple
    pres: RingPresentation

    def __post_init__(self):
        self.perm = tuple(int(i) for i in self.perm)
        m = self.pres.alpha.m
        if sorted(self.perm) != list(range(1, m + 1)):
            raise ValueError("not a permutation of 1..%d" % m)
        if self.pres.distinguished != m:
            raise ValueError("the action is written for the last edge distinguished")
        self.qpres = _rational_view(self.pres)
        ring = self.qpres.compute_ring
        R = ring.gen("R")

        def c(j):
            return -R if j == m else R + 2 * ring.gen("V%d" % j)

        self.images = {"R": -c(self.perm[m - 1])}
        for i in range(1, m):
            self.images["V%d" % i] = (c(self.perm[i - 1]) + c(self.perm[m - 1])) * Fraction(1, 2)

    def apply(self, poly):
        q = self.qpres
        return q.reduce(q.lift(poly).substitute(self.images, q.compute_ring))

    def matrix(self, d: int) -> list:
        """Columns are the images of the degree-``d`` standard monomials."""
        q = self.qpres
        monos = q.standard_monomials(d)
        cols = [q.coordinates(self.apply(q.compute_ring.monomial(mono)), d) for mono in monos]
        return [[Fraction(cols[j][i]) for j in range(len(monos))] for i in range(len(monos))]

    def preserves_ideal(self) -> bool:
        q = self.qpres
        return all(not q.reduce(g.substitute(self.images, q.compute_ring)) for g in q.basis.polys)

    def compose(self, other: "PermutationAction") -> "PermutationAction":
        """The action of ``self.perm o other.perm``."""
        return PermutationAction(tuple(self.perm[j - 1] for j in other.perm), self.pres)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _cycle_type_representatives(m: int) -> list:
    """``(permutation, class size)`` for each cycle type of ``Sym_m``."""
    out = []

    def partitions(n, largest):
        if n == 0:
            yield []
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield [k] + rest

    for part in partitions(m, m):
        perm = [0] * m
        start = 0
        for k in part:
            for j in range(k):
                perm[start + j] = start + (j + 1) % k + 1
            start += k
        size = factorial(m)
        for k, mult in Counter(part).items():
            size //= k ** mult * factorial(mult)
        out.append((tuple(perm), size))
    return out


def invariant_dimensions(m: int, up_to: Optional[int] = None, method: str = "classes") -> list:
    """Dimensions of the ``Sym_m``-fixed part of ``H^*(Pol_m; Q)`` in degrees ``0, 2, ..., up_to``.

    ``method="classes"`` averages traces over conjugacy classes; ``"group"``
    averages the action matrices over every element and takes the rank.
    """
    m = _check_odd(m)
    if m > MAX_AVERAGING_M:
        raise TooLarge("group averaging is limited to m <= %d" % MAX_AVERAGING_M)
    pres = build_pol_presentation(equilateral(m))
    up_to = pres.top_degree if up_to is None else up_to
    order = factorial(m)
    dims = []
    if method == "classes":
        reps = [(PermutationAction(p, pres), size) for p, size in _cycle_type_representatives(m)]
        for d in range(0, up_to + 1, 2):
            total = Fraction(0)
            for act, size in reps:
                mat = act.matrix(d)
                total += size * sum(mat[i][i] for i in range(len(mat)))
            avg = total / order
            if avg.denominator != 1:
                raise AssertionError("non-integral character average %s" % avg)
            dims.append(int(avg))
    elif method == "group":
        acts = [PermutationAction(p, pres) for p in itertools.permutations(range(1, m + 1))]
        for d in range(0, up_to + 1, 2):
            n = len(pres.standard_monomials(d))
            acc = [[Fraction(0)] * n for _ in range(n)]
            for act in acts:
                mat = act.matrix(d)
                for i in range(n):
                    for j in range(n):
                        acc[i][j] += mat[i][j]
            dims.append(len(row_echelon([[x / order for x in row] for row in acc])) if n else 0)
    else:
        raise ValueError("unknown method %r" % method)
    return dims


def symmetric_basis_images(x: int, y: int, m: int) -> list:
    """``b_1..b_m`` as ``R, V`` polynomials over ``Q`` in the equilateral ``Pol`` ring."""
    pres = _rational_view(build_pol_presentation(equilateral(m)))
    ring = pres.compute_ring
    rows = standardization_matrix(x, y, m)
    order = rows[1:] + rows[:1]
    names = ring.names
    return [pres.element(sum((ring.gen(n) * c for n, c in zip(names, row)), ring.zero())) for row in order]
