"""Exact integer and rational linear algebra on small dense matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon([list(r) for r in rows]))


def row_echelon(rows: List[list]) -> List[list]:
    """Reduced row echelon form over ``Q`` (nonzero rows only)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    out: List[list] = []
    col = 0
    for col in range(ncols):
        piv = next((r for r in a if r[col] != 0), None)
        if piv is None:
            continue
        a.remove(piv)
        inv = 1 / piv[col]
        piv = [x * inv for x in piv]
        for r in a:
            if r[col]:
                f = r[col]
                for j in range(col, ncols):
                    r[j] -= f * piv[j]
        for r in out:
            if r[col]:
                f = r[col]
                for j in range(col, ncols):
                    r[j] -= f * piv[j]
        out.append(piv)
    return out


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] * inv
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def lattice_basis(vectors: Sequence[Sequence[Fraction]], tags: Optional[list] = None):
    """Hermite-style basis of the ``Z``-span of rational vectors.

    Returns ``(basis, basis_tags)`` where every basis vector is an integer
    combination of the inputs; ``tags`` (anything supporting ``+`` and
    integer ``*``) are combined alongside so each basis vector keeps a
    preimage. The basis is in row echelon form with positive pivots.
    """
    if not vectors:
        return [], []
    ncols = len(vectors[0])
    den = 1
    for v in vectors:
        for x in v:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    rows = [[int(Fraction(x) * den) for x in v] for v in vectors]
    tags = list(tags) if tags is not None else [None] * len(rows)
    live = [(r, t) for r, t in zip(rows, tags) if any(r)]
    basis = []
    for col in range(ncols):
        with_col = [(r, t) for r, t in live if r[col]]
        live = [(r, t) for r, t in live if not r[col]]
        while len(with_col) > 1:
            with_col.sort(key=lambda rt: abs(rt[0][col]))
            (pr, pt) = with_col[0]
            rest = []
            for r, t in with_col[1:]:
                q = r[col] // pr[col]
                nr = [x - q * y for x, y in zip(r, pr)]
                nt = _combine(t, pt, -q)
                if nr[col]:
                    rest.append((nr, nt))
                elif any(nr):
                    live.append((nr, nt))
            with_col = [(pr, pt)] + rest
        if with_col:
            r, t = with_col[0]
            if r[col] < 0:
                r = [-x for x in r]
                t = _combine(None, t, -1) if t is not None else None
            basis.append((r, t))
    vectors_out = [[Fraction(x, den) for x in r] for r, _ in basis]
    return vectors_out, [t for _, t in basis]


def _combine(t, s, q):
    """``t + q*s`` for optional tags."""
    if s is None:
        return t
    if t is None:
        return s * q
    return t + s * q


def solve_triangular_coordinates(basis: Sequence[Sequence[Fraction]], vector: Sequence) -> list:
    """Coordinates of ``vector`` in an echelon ``basis`` (exact, rational)."""
    v = [Fraction(x) for x in vector]
    coords = []
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x)
        c = v[piv] / b[piv]
        coords.append(c)
        if c:
            v = [x - c * y for x, y in zip(v, b)]
    if any(v):
        raise ValueError("vector is not in the span of the basis")
    return coords


def signature(matrix: Sequence[Sequence]) -> int:
    """Signature of a symmetric rational matrix via symmetric Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    idx = list(range(n))
    while idx:
        piv = next((i for i in idx if a[i][i] != 0), None)
        if piv is None:
            # find an off-diagonal entry and replace e_i by e_i + e_j
            pair = next(((i, j) for i in idx for j in idx if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            continue
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(piv)
        for i in idx:
            if a[i][piv]:
                f = a[i][piv] / d
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
        for i in idx:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos - neg


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det
