"""Closed-form Betti numbers, signatures and Euler characteristics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import EvenEdgeCount, InexactDivision
from .lengths import distinguished_subposet, require_generic, short_family

SPACES = ("Pol", "APol", "UP")
_EXCESS = {"Pol": 2, "APol": 1, "UP": 0}


def normalize_space(space: str) -> str:
    for name in SPACES:
        if str(space).lower() == name.lower():
            return name
    raise ValueError("unknown space %r (expected pol, apol or up)" % space)


# -- integer polynomials in one variable t, stored low degree first ---------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a: Sequence[int], b: Sequence[int]) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a: Sequence[int], b: Sequence[int]) -> list:
    return poly_add(a, [-x for x in b])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def monomial(k: int, c: int = 1) -> list:
    return _trim([0] * k + [c])


def exact_divide(num: Sequence[int], den: Sequence[int]) -> list:
    """Quotient of integer polynomials; raises :class:`InexactDivision` on a remainder."""
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = den[-1]
    if not num:
        return []
    q = [0] * max(len(num) - len(den) + 1, 1)
    r = list(num)
    for k in range(len(num) - len(den), -1, -1):
        c = r[k + len(den) - 1]
        if c % lead:
            raise InexactDivision("non-integral quotient coefficient")
        c //= lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                r[k + i] -= c * d
    if any(r):
        raise InexactDivision("division left remainder %s" % _trim(r))
    return _trim(q)


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer polynomial in ``t``; ``coeffs[k]`` is the coefficient of ``t^k``."""

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) for c in coeffs])))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def betti(self) -> list:
        return list(self.coeffs)

    def even_part(self) -> list:
        """Coefficients of ``t^0, t^2, t^4, ...``."""
        return list(self.coeffs[::2])

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def at_i(self) -> complex:
        """Exact value at ``t = i`` as a Gaussian integer ``(real, imag)`` packed in a complex."""
        re = im = 0
        for k, c in enumerate(self.coeffs):
            r = k % 4
            if r == 0:
                re += c
            elif r == 1:
                im += c
            elif r == 2:
                re -= c
            else:
                im -= c
        return complex(re, im)

    def at(self, t):
        return sum(c * t ** k for k, c in enumerate(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = "t" if k == 1 else "t^%d" % k
                body = mono if abs(c) == 1 else "%d%s" % (abs(c), mono)
            parts.append((c < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out


def _open_part(sizes: Sequence[int]) -> list:
    """``sum_J t^{2|J|}`` as coefficient list."""
    out: list = []
    for s in sizes:
        out = poly_add(out, monomial(2 * s))
    return out


def _sizes(family) -> list:
    return [len(j) for j in family]


def poincare(alpha, space: str = "Pol") -> PoincarePolynomial:
    """Betti numbers from the short subsets containing the last edge."""
    alpha = require_generic(alpha)
    space = normalize_space(space)
    m = alpha.m
    e = _EXCESS[space]
    num: list = []
    for s in _sizes(distinguished_subposet(alpha)):
        num = poly_add(num, poly_sub(monomial(2 * s), monomial(2 * (m - s - e))))
    return PoincarePolynomial(exact_divide(num, [1, 0, -1]))


def klyachko_poincare(alpha) -> PoincarePolynomial:
    """Betti numbers of ``Pol`` from the whole short family."""
    alpha = require_generic(alpha)
    m = alpha.m
    binom = [1]
    for _ in range(m - 1):
        binom = poly_mul(binom, [1, 0, 1])
    num = poly_sub(binom, _open_part(_sizes(short_family(alpha))))
    return PoincarePolynomial(exact_divide(num, [0, 0, -1, 0, 1]))


def alternating_short_sum(alpha) -> int:
    return sum((-1) ** len(j) for j in distinguished_subposet(alpha))


def signature(alpha) -> int:
    alpha = require_generic(alpha)
    if alpha.m % 2 == 0:
        raise EvenEdgeCount("the signature needs an odd edge count (real dimension divisible by 4)")
    return alternating_short_sum(alpha)


def planar_euler(alpha) -> int:
    """Euler characteristic of the planar polygon space, ``P_Pol(i)``.

    For odd ``m`` this is the alternating sum over ``S_m``; for even ``m``
    the planar space is a closed manifold of odd dimension and the value is 0.
    """
    value = poincare(alpha, "Pol").at_i()
    return int(value.real)


def even_cohomology_identities(alpha) -> dict:
    """Check the two pair relations for ``Pol c APol`` and ``APol c UP``.

    For a closed pair ``Q c M`` of real dimension ``n``, codimension ``r``,
    with ``P_open`` the Poincaré polynomial of ``M - Q``::

        (1 - t^r) P_Q = P_open(t) - t^n P_open(1/t)
        (1 - t^r) P_M = P_open(t) - t^(n+r) P_open(1/t)

    Both complements share ``P_open = sum_{J in S_m} t^(2|J|)``.
    """
    alpha = require_generic(alpha)
    m = alpha.m
    sizes = _sizes(distinguished_subposet(alpha))
    p_open = _open_part(sizes)

    def reflected(n):
        out: list = []
        for s in sizes:
            out = poly_add(out, monomial(n - 2 * s))
        return out

    polys = {s: list(poincare(alpha, s).coeffs) for s in SPACES}
    checks = {}
    for q, big, n in (("Pol", "APol", 2 * (m - 2)), ("APol", "UP", 2 * (m - 1))):
        lhs_q = poly_mul([1, 0, -1], polys[q])
        lhs_m = poly_mul([1, 0, -1], polys[big])
        checks["%s in %s (submanifold)" % (q, big)] = lhs_q == poly_sub(p_open, reflected(n))
        checks["%s in %s (ambient)" % (q, big)] = lhs_m == poly_sub(p_open, reflected(n + 2))
    return checks
