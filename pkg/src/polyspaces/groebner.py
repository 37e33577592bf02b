"""Buchberger completion, normal forms and ideal quotients by powers of ``R``.

Over a field every nonzero leading coefficient is a unit. Over ``Z`` (and
``Z4``) the engine insists that every leading coefficient it meets is a unit
and raises :class:`NonUnitLeadingCoefficient` otherwise; callers then redo
the computation over ``Q``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .errors import NonUnitLeadingCoefficient, NotConfluent
from .polyring import Monomial, Poly, PolyRing


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


class _Element:
    """A basis element with its leading data cached."""

    __slots__ = ("terms", "lm", "lc", "lc_inv")

    def __init__(self, ring: PolyRing, terms: dict):
        self.terms = terms
        self.lm = max(terms, key=ring.key)
        self.lc = terms[self.lm]
        self.lc_inv = ring.coeffs.inverse(self.lc)


def _normal_form(ring: PolyRing, terms: dict, basis: Sequence[_Element], full: bool = True) -> dict:
    """Reduce ``terms`` against ``basis``.

    Always treats the largest remaining monomial first and uses the first
    basis element whose leading monomial divides it.
    """
    key = ring.key
    mod = ring.coeffs.modulus
    p = dict(terms)
    heap = [(_neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    result = {}
    while heap:
        _, mono = heapq.heappop(heap)
        c = p.pop(mono, 0)
        if not c:
            continue
        for g in basis:
            if _divides(g.lm, mono):
                q = _sub(mono, g.lm)
                factor = c * g.lc_inv
                for gm, gc in g.terms.items():
                    if gm == g.lm:
                        continue
                    t = tuple(x + y for x, y in zip(gm, q))
                    old = p.get(t)
                    new = (old or 0) - factor * gc
                    if mod:
                        new %= mod
                    if new:
                        if old is None:
                            heapq.heappush(heap, (_neg(key(t)), t))
                        p[t] = new
                    elif old is not None:
                        del p[t]
                break
        else:
            result[mono] = c
            if not full:
                result.update(p)
                return result
    return result


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def _as_terms(p: Poly, ring: PolyRing) -> dict:
    if p.ring != ring:
        raise ValueError("polynomial ring mismatch: %r vs %r" % (p.ring, ring))
    return p.terms


def _make_element(ring: PolyRing, terms: dict) -> _Element:
    lm = max(terms, key=ring.key)
    lc = terms[lm]
    if not ring.coeffs.is_unit(lc):
        raise NonUnitLeadingCoefficient(
            "leading coefficient %s of %s is not a unit in %s"
            % (lc, Poly(ring, terms, True).to_string(), ring.coeffs.tag))
    inv = ring.coeffs.inverse(lc)
    mod = ring.coeffs.modulus
    if inv != 1:
        terms = {m: (c * inv) % mod if mod else c * inv for m, c in terms.items()}
    return _Element(ring, terms)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: normalised (leading coefficient 1), interreduced, sorted."""

    ring: PolyRing
    polys: tuple
    confluent: bool = True
    _elements: tuple = field(default=(), repr=False, compare=False)

    @classmethod
    def from_polys(cls, ring: PolyRing, polys: Iterable[Poly], confluent: bool) -> "GroebnerBasis":
        elems = tuple(_make_element(ring, p.terms) for p in polys if p)
        polys = tuple(Poly(ring, e.terms, True) for e in elems)
        return cls(ring, polys, confluent, elems)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def leading_monomials(self) -> list:
        return [e.lm for e in self._elements]

    @property
    def is_unit_ideal(self) -> bool:
        return any(not any(e.lm) for e in self._elements)

    def reduce(self, p: Poly) -> Poly:
        return Poly(self.ring, _normal_form(self.ring, _as_terms(p, self.ring), self._elements), True)

    def contains(self, p: Poly) -> bool:
        if not self.confluent:
            raise NotConfluent("ideal membership needs a confluent basis")
        return not self.reduce(p)

    def is_standard(self, mono: Monomial) -> bool:
        return not any(_divides(lm, mono) for lm in self.leading_monomials)

    def staircase(self, up_to: int) -> "Staircase":
        return Staircase.of(self, up_to)

    def graded_dimensions(self, up_to: int) -> list:
        return graded_dimensions(self, up_to)

    def check_confluence(self) -> bool:
        elems = self._elements
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                if _coprime(elems[i].lm, elems[j].lm):
                    continue
                s = _spoly_terms(self.ring, elems[i], elems[j])
                if _normal_form(self.ring, s, elems):
                    return False
        return True

    def canonical_strings(self) -> list:
        return [p.to_string() for p in self.polys]


@dataclass(frozen=True)
class Staircase:
    """Leading monomials plus standard monomials per degree."""

    leading: tuple
    standard: dict

    @classmethod
    def of(cls, basis: GroebnerBasis, up_to: int) -> "Staircase":
        ring = basis.ring
        leading = tuple(basis.leading_monomials)
        std: Dict[int, list] = {0: [] if basis.is_unit_ideal else [ring.one_monomial]}
        for d in range(1, up_to + 1):
            found = set()
            for i, vd in enumerate(ring.degrees):
                if vd > d:
                    continue
                for s in std.get(d - vd, []):
                    t = list(s)
                    t[i] += 1
                    t = tuple(t)
                    if t not in found and not any(_divides(lm, t) for lm in leading):
                        found.add(t)
            std[d] = sorted(found, key=ring.key, reverse=True)
        return cls(leading, std)

    def counts(self) -> list:
        return [len(self.standard[d]) for d in sorted(self.standard)]


def reduce(p: Poly, basis) -> Poly:
    """Normal form of ``p`` with respect to a basis or a list of polynomials."""
    if isinstance(basis, GroebnerBasis):
        return basis.reduce(p)
    ring = p.ring
    elems = [_make_element(ring, g.terms) for g in basis if g]
    return Poly(ring, _normal_form(ring, p.terms, elems), True)


def _spoly_terms(ring: PolyRing, a: _Element, b: _Element) -> dict:
    l = _lcm(a.lm, b.lm)
    qa, qb = _sub(l, a.lm), _sub(l, b.lm)
    mod = ring.coeffs.modulus
    out: dict = {}
    # b.lc * (l/lm_a) * a - a.lc * (l/lm_b) * b
    for m, c in a.terms.items():
        if m == a.lm:
            continue
        t = tuple(x + y for x, y in zip(m, qa))
        out[t] = out.get(t, 0) + b.lc * c
    for m, c in b.terms.items():
        if m == b.lm:
            continue
        t = tuple(x + y for x, y in zip(m, qb))
        out[t] = out.get(t, 0) - a.lc * c
    if mod:
        return {m: c % mod for m, c in out.items() if c % mod}
    return {m: c for m, c in out.items() if c}


def s_polynomial(r1: Poly, r2: Poly) -> Poly:
    """``(m2/g)(r1 - t1) - (m1/g)(r2 - t2)`` scaled by the leading coefficients."""
    ring = r1.ring
    a = _Element.__new__(_Element)
    b = _Element.__new__(_Element)
    for e, p in ((a, r1), (b, r2)):
        e.terms = p.terms
        e.lm = p.leading_monomial()
        e.lc = p.terms[e.lm]
        e.lc_inv = None
    return Poly(ring, _spoly_terms(ring, a, b), True)


def buchberger(generators: Sequence[Poly], ring: Optional[PolyRing] = None) -> GroebnerBasis:
    """Complete ``generators`` to the reduced Gröbner basis of the ideal they generate.

    Pairs are processed in order of increasing lcm degree; coprime leading
    monomials and Buchberger's chain criterion skip redundant pairs.
    """
    gens = [g for g in generators if g]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    key = ring.key
    basis: List[_Element] = []
    pending: Dict[tuple, tuple] = {}
    heap: list = []

    def add(terms: dict):
        elem = _make_element(ring, terms)
        idx = len(basis)
        basis.append(elem)
        for j in range(idx):
            if basis[j] is None:
                continue
            l = _lcm(basis[j].lm, elem.lm)
            pair = (j, idx)
            pending[pair] = l
            heapq.heappush(heap, (ring.degree_of(l), key(l), j, idx))

    for g in sorted(gens, key=lambda p: (p.degree, key(p.leading_monomial()))):
        live = [e for e in basis if e is not None]
        nf = _normal_form(ring, _as_terms(g, ring), live)
        if nf:
            add(nf)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        l = pending.pop((i, j), None)
        if l is None:
            continue
        a, b = basis[i], basis[j]
        if _coprime(a.lm, b.lm):
            continue
        if _chain_criterion(basis, pending, i, j, l):
            continue
        s = _spoly_terms(ring, a, b)
        if not s:
            continue
        nf = _normal_form(ring, s, basis)
        if nf:
            add(nf)

    return GroebnerBasis.from_polys(ring, _interreduce(ring, basis), True)


def _chain_criterion(basis, pending, i, j, l) -> bool:
    for k, e in enumerate(basis):
        if k == i or k == j:
            continue
        if not _divides(e.lm, l):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _interreduce(ring: PolyRing, elems: Sequence[_Element]) -> list:
    elems = [e for e in elems if e is not None]
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep: List[_Element] = []
    for e in sorted(elems, key=lambda e: ring.key(e.lm)):
        if any(_divides(k.lm, e.lm) for k in keep):
            continue
        keep.append(e)
    out = []
    for idx, e in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        tail = _normal_form(ring, tail, others)
        tail[e.lm] = e.lc
        out.append(Poly(ring, tail, True))
    out.sort(key=lambda p: ring.key(p.leading_monomial()))
    return out


def quotient_by_r_power(polys: Iterable[Poly], k: int) -> list:
    """``{ r / gcd(r, R^k) }`` for each relator ``r``."""
    out = []
    for p in polys:
        if not p:
            continue
        ring = p.ring
        j = min(p.r_valuation(), k)
        mono = [0] * ring.nvars
        mono[ring.r_index] = j
        out.append(p.divide_by_monomial(tuple(mono)))
    return out


quotient_by_R_power = quotient_by_r_power


def graded_dimensions(basis: GroebnerBasis, up_to: int) -> list:
    """Standard-monomial counts in degrees ``0..up_to``."""
    if not basis.confluent:
        raise NotConfluent("graded dimensions need a confluent basis")
    return basis.staircase(up_to).counts()
