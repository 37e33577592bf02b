"""Sparse graded polynomials over exact coefficient rings.

A :class:`PolyRing` fixes the variables, their degrees, the coefficient ring
and the monomial order; :class:`Poly` values are immutable maps from exponent
tuples to nonzero coefficients.

The monomial order compares weighted degree first, then (when the ring has a
distinguished variable ``R``) prefers *smaller* powers of ``R``, then breaks
ties lexicographically on the remaining exponents in declaration order. It is
multiplicative, ``1`` is the global minimum, and ``V_i^2 > R*V_i``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import GradingMismatch

Monomial = Tuple[int, ...]


class CoefficientRing:
    """One of the exact coefficient domains ``Z``, ``Q``, ``Z2``, ``Z4``."""

    def __init__(self, tag: str, modulus: int = 0):
        self.tag = tag
        self.modulus = modulus

    def __repr__(self):
        return "CoefficientRing(%r)" % self.tag

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    @property
    def is_field(self) -> bool:
        return self.tag in ("Q", "Z2")

    def __call__(self, x):
        if self.modulus:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            return int(x) % self.modulus
        if self.tag == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("%s is not an integer" % x)
                return x.numerator
            return int(x)
        return Fraction(x)

    def is_unit(self, c) -> bool:
        if self.modulus:
            c %= self.modulus
            return c != 0 and _gcd(c, self.modulus) == 1
        if self.tag == "Z":
            return c in (1, -1)
        return c != 0

    def inverse(self, c):
        if self.modulus:
            return pow(c % self.modulus, -1, self.modulus)
        if self.tag == "Z":
            if c not in (1, -1):
                raise ZeroDivisionError("%s is not a unit in Z" % c)
            return c
        return 1 / Fraction(c)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")
Z2 = CoefficientRing("Z2", 2)
Z4 = CoefficientRing("Z4", 4)
COEFFICIENT_RINGS = {"Z": ZZ, "Q": QQ, "Z2": Z2, "Z4": Z4}


def coefficient_ring(tag) -> CoefficientRing:
    if isinstance(tag, CoefficientRing):
        return tag
    try:
        return COEFFICIENT_RINGS[str(tag).upper()]
    except KeyError:
        raise ValueError("unknown coefficient ring %r (expected one of Z, Q, Z2, Z4)" % tag) from None


class PolyRing:
    """Graded polynomial ring ``coeffs[names]`` with the R-dominant order."""

    def __init__(self, names: Sequence[str], degrees: Sequence[int], coeffs="Z",
                 r_variable: Optional[str] = None):
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if any(d <= 0 for d in degrees):
            raise ValueError("variable degrees must be positive")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.coeffs = coefficient_ring(coeffs)
        self.nvars = len(self.names)
        self.r_index = self.names.index(r_variable) if r_variable is not None else None
        self._index = {n: i for i, n in enumerate(self.names)}
        self._keys: Dict[Monomial, tuple] = {}
        self.one_monomial: Monomial = (0,) * self.nvars

    def __repr__(self):
        return "PolyRing(%s[%s])" % (self.coeffs.tag, ", ".join(self.names))

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.degrees == other.degrees and self.coeffs == other.coeffs
                and self.r_index == other.r_index)

    def __hash__(self):
        return hash((self.names, self.degrees, self.coeffs, self.r_index))

    def with_coefficients(self, coeffs) -> "PolyRing":
        r = self.names[self.r_index] if self.r_index is not None else None
        return PolyRing(self.names, self.degrees, coeffs, r)

    def with_degrees(self, degrees: Sequence[int]) -> "PolyRing":
        r = self.names[self.r_index] if self.r_index is not None else None
        return PolyRing(self.names, degrees, self.coeffs, r)

    # -- monomials ---------------------------------------------------------

    def index(self, name: str) -> int:
        return self._index[name]

    def degree_of(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def key(self, mono: Monomial) -> tuple:
        """Sort key realising the monomial order (larger key = larger monomial)."""
        k = self._keys.get(mono)
        if k is None:
            deg = sum(e * d for e, d in zip(mono, self.degrees))
            if self.r_index is None:
                k = (deg,) + mono
            else:
                r = self.r_index
                k = (deg, -mono[r]) + mono[:r] + mono[r + 1:]
            self._keys[mono] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def monomials_of_degree(self, d: int) -> list:
        """All monomials of weighted degree ``d``, in decreasing order."""
        out = []

        def rec(i, left, acc):
            if i == self.nvars:
                if left == 0:
                    out.append(tuple(acc))
                return
            deg = self.degrees[i]
            for e in range(left // deg, -1, -1):
                acc.append(e)
                rec(i + 1, left - e * deg, acc)
                acc.pop()

        rec(0, d, [])
        out.sort(key=self.key, reverse=True)
        return out

    # -- constructors ------------------------------------------------------

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return Poly(self, {m: self.coeffs(c) for m, c in value.terms.items()})
        if isinstance(value, dict):
            return Poly(self, {tuple(m): self.coeffs(c) for m, c in value.items()})
        return Poly(self, {self.one_monomial: self.coeffs(value)})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Poly(self, {tuple(e): self.coeffs(1)})

    @property
    def gens(self) -> list:
        return [self.gen(n) for n in self.names]

    def monomial(self, mono: Monomial, coeff=1) -> "Poly":
        return Poly(self, {tuple(mono): self.coeffs(coeff)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self(1)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"


class Poly:
    """Immutable sparse polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object], _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            mod = ring.coeffs.modulus
            if mod:
                self.terms = {m: c % mod for m, c in terms.items() if c % mod}
            else:
                self.terms = {m: c for m, c in terms.items() if c}

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> "Poly":
        m = self.leading_monomial()
        return Poly(self.ring, {m: self.terms[m]}, True)

    def degrees(self) -> set:
        return {self.ring.degree_of(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Weighted degree (the maximum one when not homogeneous); ``-1`` for zero."""
        return max(self.degrees(), default=-1)

    def homogeneous_component(self, d: int) -> "Poly":
        deg = self.ring.degree_of
        return Poly(self.ring, {m: c for m, c in self.terms.items() if deg(m) == d}, True)

    def homogeneous_components(self) -> dict:
        return {d: self.homogeneous_component(d) for d in sorted(self.degrees())}

    def coefficient(self, mono) -> object:
        return self.terms.get(tuple(mono), 0)

    def r_valuation(self) -> int:
        """Largest ``j`` with ``R^j`` dividing the polynomial."""
        r = self.ring.r_index
        if r is None:
            raise ValueError("ring has no distinguished R variable")
        if not self.terms:
            return 0
        return min(m[r] for m in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings: %r vs %r" % (self.ring, other.ring))
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.coeffs(other)
            return Poly(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                out[mono] = out.get(mono, 0) + ca * cb
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def shift(self, mono: Monomial, coeff=1) -> "Poly":
        """Multiply by the term ``coeff * mono``."""
        c = self.ring.coeffs(coeff)
        return Poly(self.ring, {tuple(x + y for x, y in zip(m, mono)): c * v for m, v in self.terms.items()})

    def divide_by_monomial(self, mono: Monomial) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            q = tuple(x - y for x, y in zip(m, mono))
            if min(q, default=0) < 0:
                raise ValueError("%s does not divide %s" % (self.ring.format_monomial(mono), self))
            out[q] = c
        return Poly(self.ring, out, True)

    def change_ring(self, ring: PolyRing) -> "Poly":
        if ring.names != self.ring.names:
            raise ValueError("variable sets differ")
        return ring(self)

    # -- substitution --------------------------------------------------------

    def substitute(self, mapping: dict, target: Optional[PolyRing] = None) -> "Poly":
        """Ring homomorphism sending each named variable to a polynomial.

        Variables absent from ``mapping`` go to the same-named variable of
        ``target`` (which defaults to this ring). Replacements must be
        homogeneous of the variable's degree.
        """
        target = target or self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                img = mapping[name]
                img = target(img) if not isinstance(img, Poly) else img
                if img.ring != target:
                    img = target(img)
                degs = img.degrees()
                if degs and degs != {self.ring.degrees[i]}:
                    raise GradingMismatch("replacement for %s has degrees %s, expected %d"
                                          % (name, sorted(degs), self.ring.degrees[i]))
                images.append(img)
            else:
                images.append(target.gen(name))
        result = target.zero()
        cache: Dict[Tuple[int, int], Poly] = {}
        for mono, c in self.terms.items():
            term = target(c)
            for i, e in enumerate(mono):
                if e:
                    p = cache.get((i, e))
                    if p is None:
                        p = images[i] ** e
                        cache[(i, e)] = p
                    term = term * p
            result = result + term
        return result

    # -- rendering -----------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            body = self.ring.format_monomial(mono)
            neg = not self.ring.coeffs.modulus and c < 0
            mag = -c if neg else c
            if body == "1":
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = "%s*%s" % (mag, body)
            pieces.append((neg, text))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, text in pieces[1:]:
            out += (" - " if neg else " + ") + text
        return out

    __str__ = to_string

    def __repr__(self):
        return "Poly(%s)" % self.to_string()


def compare(a: Monomial, b: Monomial, ring: PolyRing) -> int:
    """``-1``, ``0`` or ``1`` as ``a`` is smaller than, equal to or larger than ``b``."""
    return ring.compare(tuple(a), tuple(b))


def multiply(a: Poly, b: Poly) -> Poly:
    return a * b


def substitute(p: Poly, var: str, replacement: Poly) -> Poly:
    return p.substitute({var: replacement})


def homogeneous_component(p: Poly, d: int) -> Poly:
    return p.homogeneous_component(d)


def spatial_ring(m: int, coeffs="Z", degree: int = 2) -> PolyRing:
    """``coeffs[R, V_1, ..., V_{m-1}]`` with every generator in ``degree``."""
    names = ["R"] + ["V%d" % i for i in range(1, m)]
    return PolyRing(names, [degree] * len(names), coeffs, r_variable="R")
