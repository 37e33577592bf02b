"""Cohomology rings of polygon spaces as explicit presentations.

The upper path space ``UP`` is presented on ``R, V_i`` (one ``V`` per edge
other than the distinguished one) with three relator families:

* ``R1``: ``V_i^2 + R V_i``
* ``R2``: ``prod_{i in L} V_i`` for minimal ``L`` with ``L + {k}`` long
* ``R3``: ``R^2 * sum_{S c L, S in S_k} V_S R^(|L-S|-1)`` for minimal long ``L`` avoiding ``k``

``APol`` and ``Pol`` are the ideal quotients by ``R`` and ``R^2``; the planar
space uses the ``Pol`` relators over ``Z2`` with every generator in degree 1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import EmptySpace, NonUnitLeadingCoefficient, OddMiddleDegree
from .groebner import GroebnerBasis, buchberger, quotient_by_r_power
from .lengths import (LengthVector, distinguished_subposet, popcount, require_generic,
                      short_masks)
from .linalg import lattice_basis, signature as form_signature, bareiss_determinant
from .polyring import QQ, Poly, PolyRing, coefficient_ring

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# combinatorial input

@dataclass(frozen=True)
class EdgeData:
    """Subset data relative to a distinguished edge ``k``."""

    alpha: LengthVector
    k: int
    edges: tuple            # the edges other than k, in increasing order
    subposet: frozenset     # S_k as bitmasks over the original labels
    min_longs_with_k: tuple  # minimal L (subset of edges) with L + {k} long
    min_longs_without_k: tuple  # minimal long L inside edges

    @property
    def m(self) -> int:
        return self.alpha.m


def _minimal(family: set) -> list:
    out = []
    for x in family:
        y = x
        minimal = True
        while y:
            low = y & -y
            if x ^ low in family:
                minimal = False
                break
            y ^= low
        if minimal:
            out.append(x)
    return sorted(out, key=lambda x: (popcount(x), x))


def edge_data(alpha, k: Optional[int] = None) -> EdgeData:
    alpha = require_generic(alpha)
    m = alpha.m
    k = m if k is None else int(k)
    if not 1 <= k <= m:
        raise ValueError("distinguished edge %d outside 1..%d" % (k, m))
    kbit = 1 << (k - 1)
    shorts = short_masks(alpha)
    edges = tuple(i for i in range(1, m + 1) if i != k)
    inside = [x for x in range(1 << m) if not x & kbit]
    with_k = {x for x in inside if (x | kbit) not in shorts}
    without_k = {x for x in inside if x not in shorts}
    sk = distinguished_subposet(alpha, k).members
    return EdgeData(alpha, k, edges, sk, tuple(_minimal(with_k)), tuple(_minimal(without_k)))


def polygon_ring(data: EdgeData, coeffs="Z", degree: int = 2) -> PolyRing:
    names = ["R"] + ["V%d" % i for i in data.edges]
    return PolyRing(names, [degree] * len(names), coeffs, r_variable="R")


def _v_monomial(ring: PolyRing, data: EdgeData, mask: int, r_power: int) -> tuple:
    e = [0] * ring.nvars
    e[0] = r_power
    for pos, i in enumerate(data.edges, start=1):
        if mask >> (i - 1) & 1:
            e[pos] = 1
    return tuple(e)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def relator_families(data: EdgeData, space: str, ring: PolyRing) -> Dict[str, list]:
    """The three relator families for ``UP``, ``APol`` or ``Pol`` written out directly."""
    shift = {"UP": 2, "APol": 1, "Pol": 0}[space]
    R = ring.gen("R")
    r1 = [ring.gen("V%d" % i) ** 2 + R * ring.gen("V%d" % i) for i in data.edges]
    r2 = [ring.monomial(_v_monomial(ring, data, L, 0)) for L in data.min_longs_with_k]
    r3 = []
    for L in data.min_longs_without_k:
        terms = {}
        size = popcount(L)
        for S in _submasks(L):
            if S in data.subposet:
                mono = _v_monomial(ring, data, S, size - popcount(S) - 1 + shift)
                terms[mono] = ring.coeffs(1)
        r3.append(Poly(ring, terms))
    return {"R1": r1, "R2": r2, "R3": r3}


def danilov_relators(data: EdgeData, coeffs="Z") -> tuple:
    """Toric presentation on ``R, U_i, V_i`` with relators (a)-(d); returns ``(ring, families)``."""
    names = ["R"] + ["U%d" % i for i in data.edges] + ["V%d" % i for i in data.edges]
    ring = PolyRing(names, [2] * len(names), coeffs, r_variable="R")
    R = ring.gen("R")
    U = {i: ring.gen("U%d" % i) for i in data.edges}
    V = {i: ring.gen("V%d" % i) for i in data.edges}

    def prod(polys):
        out = ring.one()
        for p in polys:
            out = out * p
        return out

    members = lambda mask: [i for i in data.edges if mask >> (i - 1) & 1]
    fam = {
        "a": [U[i] - V[i] - R for i in data.edges],
        "b": [U[i] * V[i] for i in data.edges],
        "c": [prod(V[i] for i in members(L)) for L in data.min_longs_with_k],
        "d": [R * prod(U[i] for i in members(L)) for L in data.min_longs_without_k],
    }
    return ring, fam


def danilov_to_up(poly: Poly, target: PolyRing) -> Poly:
    """Eliminate ``U_i`` via ``U_i = V_i + R`` into the ``R, V`` ring."""
    R = target.gen("R")
    mapping = {}
    for name in poly.ring.names:
        if name.startswith("U"):
            mapping[name] = target.gen("V" + name[1:]) + R
        else:
            mapping[name] = target.gen(name)
    return poly.substitute(mapping, target)


def danilov_agrees(alpha, edge: Optional[int] = None) -> bool:
    """Whether eliminating ``U`` from the toric relators yields the ``UP`` ideal (over ``Q``)."""
    data = edge_data(alpha, edge)
    ring = polygon_ring(data, QQ)
    dring, fam = danilov_relators(data, QQ)
    images = [danilov_to_up(p, ring) for name in "bcd" for p in fam[name]]
    direct = [p for polys in relator_families(data, "UP", ring).values() for p in polys]
    return buchberger(images, ring).polys == buchberger(direct, ring).polys


# ---------------------------------------------------------------------------
# presentations

@dataclass
class CohomologyClass:
    """A cohomology class stored as its normal form."""

    poly: Poly
    presentation: "RingPresentation" = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __mul__(self, other) -> "CohomologyClass":
        return cup_product(self, other, self.presentation)

    def __add__(self, other) -> "CohomologyClass":
        other = self.presentation.element(other)
        return self.presentation.element(self.poly + other.poly)

    def __sub__(self, other) -> "CohomologyClass":
        other = self.presentation.element(other)
        return self.presentation.element(self.poly - other.poly)

    def __neg__(self):
        return self.presentation.element(-self.poly)

    def __rmul__(self, scalar):
        return self.presentation.element(self.poly * scalar)

    def __pow__(self, n: int):
        out = self.presentation.element(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CohomologyClass):
            return self.poly == other.poly
        return self.poly == self.presentation.element(other).poly

    def __hash__(self):
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self):
        return self.poly.to_string()


class RingPresentation:
    """Generators, relator families, a completed Gröbner basis and graded data.

    ``ring`` carries the coefficients the presentation is stated over. When
    integer completion meets a non-unit leading coefficient the basis is
    computed over ``Q`` instead and an integral additive basis is recovered
    per degree as the lattice spanned by integer polynomials.
    """

    def __init__(self, space: str, ring: PolyRing, families: Dict[str, list], top_degree: int,
                 alpha: Optional[LengthVector] = None, distinguished: Optional[int] = None,
                 metadata: Optional[dict] = None):
        self.space = space
        self.ring = ring
        self.families = {name: [ring(p) for p in polys] for name, polys in families.items()}
        self.top_degree = top_degree
        self.alpha = alpha
        self.distinguished = distinguished
        self.metadata = dict(metadata or {})
        self.basis = self._complete()
        self.empty = self.basis.is_unit_ideal
        self.standard = self.basis.staircase(max(top_degree, 0) + max(ring.degrees)).standard
        for d, monos in self.standard.items():
            if d > top_degree and monos:
                raise AssertionError("%s has classes above its top degree %d" % (space, top_degree))
        self._lattice: Dict[int, tuple] = {}

    def _complete(self) -> GroebnerBasis:
        gens = [p for polys in self.families.values() for p in polys]
        if self.ring.coeffs.tag in ("Z", "Z4"):
            try:
                basis = buchberger(gens, self.ring)
                self.metadata.setdefault("groebner_coefficients", self.ring.coeffs.tag)
                return basis
            except NonUnitLeadingCoefficient:
                if self.ring.coeffs.tag == "Z4":
                    raise
        qring = self.ring.with_coefficients(QQ) if self.ring.coeffs.tag == "Z" else self.ring
        self.metadata.setdefault("groebner_coefficients", qring.coeffs.tag)
        return buchberger([qring(p) for p in gens], qring)

    # -- basic queries -------------------------------------------------------

    @property
    def compute_ring(self) -> PolyRing:
        return self.basis.ring

    @property
    def relators(self) -> list:
        return [p for polys in self.families.values() for p in polys]

    @property
    def integral_standard(self) -> bool:
        """True when the standard monomials already form a ``Z``-basis."""
        return self.compute_ring.coeffs == self.ring.coeffs

    def lift(self, p) -> Poly:
        target = self.compute_ring
        if isinstance(p, CohomologyClass):
            p = p.poly
        if isinstance(p, Poly):
            if p.ring == target:
                return p
            if p.ring.names != target.names:
                raise ValueError("class lives in a different ring")
            return target(p)
        if isinstance(p, str):
            return target.gen(p)
        return target(p)

    def reduce(self, p) -> Poly:
        return self.basis.reduce(self.lift(p))

    def element(self, p) -> CohomologyClass:
        return CohomologyClass(self.reduce(p), self)

    def gen(self, name: str) -> CohomologyClass:
        return self.element(self.compute_ring.gen(name))

    def graded_dimensions(self) -> list:
        """Ranks in every degree ``0..top_degree``."""
        return [len(self.standard.get(d, [])) for d in range(self.top_degree + 1)]

    def betti(self) -> list:
        """Ranks in the degrees that can be nonzero (every ``ring.degrees[0]``-th degree)."""
        step = min(self.ring.degrees)
        return self.graded_dimensions()[::step]

    def standard_monomials(self, d: int) -> list:
        return list(self.standard.get(d, []))

    def coordinates(self, p, d: Optional[int] = None) -> list:
        nf = self.reduce(p)
        if d is None:
            d = nf.degree
        return [nf.terms.get(mono, 0) for mono in self.standard.get(d, [])]

    # -- integral structure ----------------------------------------------------

    def integral_basis(self, d: int) -> tuple:
        """``(vectors, preimages)`` for an additive ``Z``-basis in degree ``d``.

        Vectors are coordinates over the standard monomials; preimages are
        integer polynomials mapping onto them. Field presentations return the
        standard monomials themselves.
        """
        if d in self._lattice:
            return self._lattice[d]
        monos = self.standard.get(d, [])
        if self.integral_standard or not monos or d == 0:
            vecs = [[Fraction(int(i == j)) for j in range(len(monos))] for i in range(len(monos))]
            pre = [self.ring.monomial(mono) for mono in monos]
            self._lattice[d] = (vecs, pre)
            return self._lattice[d]
        vectors, tags = [], []
        for i, vd in enumerate(self.ring.degrees):
            if vd > d:
                continue
            _, lower = self.integral_basis(d - vd)
            x = self.ring.gens[i]
            for b in lower:
                q = x * b
                vectors.append([Fraction(c) for c in self.coordinates(q, d)])
                tags.append(q)
        basis, pre = lattice_basis(vectors, tags)
        if len(basis) != len(monos):
            raise AssertionError("integral lattice in degree %d has rank %d, expected %d"
                                 % (d, len(basis), len(monos)))
        self._lattice[d] = (basis, pre)
        return self._lattice[d]

    def integral_coordinates(self, p, d: Optional[int] = None) -> list:
        from .linalg import solve_triangular_coordinates
        nf = self.reduce(p)
        if d is None:
            d = nf.degree
        vecs, _ = self.integral_basis(d)
        return solve_triangular_coordinates(vecs, self.coordinates(nf, d))

    def structure_constants(self) -> list:
        """Products ``generator * standard monomial`` as normal forms."""
        out = []
        ring = self.compute_ring
        for i, name in enumerate(ring.names):
            for d in range(self.top_degree + 1):
                for mono in self.standard.get(d, []):
                    prod = self.basis.reduce(ring.gen(name) * ring.monomial(mono))
                    out.append((name, ring.format_monomial(mono), prod))
        return out

    # -- serialisation -------------------------------------------------------------

    def to_dict(self) -> dict:
        ring = self.compute_ring
        dims = self.graded_dimensions()
        data = {
            "schema_version": SCHEMA_VERSION,
            "space": self.space,
            "alpha": [str(a) for a in self.alpha] if self.alpha is not None else None,
            "distinguished_edge": self.distinguished,
            "coefficients": self.ring.coeffs.tag,
            "generators": [{"name": n, "degree": d} for n, d in zip(self.ring.names, self.ring.degrees)],
            "relators": {name: [p.to_string() for p in polys] for name, polys in self.families.items()},
            "groebner_basis": self.basis.canonical_strings(),
            "groebner_coefficients": ring.coeffs.tag,
            "empty": self.empty,
            "top_degree": self.top_degree,
            "graded_dimensions": [[d, n] for d, n in enumerate(dims) if n],
            "standard_monomials": [[d, [ring.format_monomial(m) for m in self.standard.get(d, [])]]
                                   for d in range(self.top_degree + 1) if self.standard.get(d)],
            "structure_constants": [[g, b, p.to_string()] for g, b, p in self.structure_constants()],
            "metadata": _jsonable(self.metadata),
        }
        if not self.integral_standard and self.ring.coeffs.tag == "Z":
            data["integral_basis"] = [[d, [p.to_string() for p in self.integral_basis(d)[1]]]
                                      for d in range(self.top_degree + 1) if self.standard.get(d)]
        return data

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Poly):
        return obj.to_string()
    return obj


def cup_product(a, b, pres: RingPresentation) -> CohomologyClass:
    return pres.element(pres.lift(a) * pres.lift(b))


# ---------------------------------------------------------------------------
# builders

_TOP = {"UP": 1, "APol": 2, "Pol": 3}


def build_presentation(alpha, space: str = "Pol", coeffs="Z", edge: Optional[int] = None) -> RingPresentation:
    """Presentation of ``H*(space(alpha); coeffs)`` with ``edge`` distinguished (default ``m``)."""
    from .invariants import normalize_space
    space = normalize_space(space)
    data = edge_data(alpha, edge)
    ring = polygon_ring(data, coefficient_ring(coeffs))
    up = relator_families(data, "UP", ring)
    if space == "UP":
        families = up
    else:
        power = 1 if space == "APol" else 2
        families = {"R1": up["R1"], "R2": up["R2"], "R3": quotient_by_r_power(up["R3"], power)}
    meta = {"edge_labels": list(data.edges)}
    return RingPresentation(space, ring, families, 2 * (data.m - _TOP[space]), data.alpha, data.k, meta)


def build_up_presentation(alpha, coeffs="Z", edge=None) -> RingPresentation:
    return build_presentation(alpha, "UP", coeffs, edge)


def build_apol_presentation(alpha, coeffs="Z", edge=None) -> RingPresentation:
    return build_presentation(alpha, "APol", coeffs, edge)


def build_pol_presentation(alpha, coeffs="Z", edge=None) -> RingPresentation:
    return build_presentation(alpha, "Pol", coeffs, edge)


def build_planar_presentation(alpha, edge=None) -> RingPresentation:
    """``H*(planar Pol; Z2)``: the ``Pol`` relators over ``Z2`` in degree 1."""
    data = edge_data(alpha, edge)
    ring = polygon_ring(data, "Z2", degree=1)
    up = relator_families(data, "UP", ring)
    families = {"R1": up["R1"], "R2": up["R2"], "R3": quotient_by_r_power(up["R3"], 2)}
    meta = {"edge_labels": list(data.edges), "w1_kappa": "R"}
    return RingPresentation("PlanarPol", ring, families, data.m - 3, data.alpha, data.k, meta)


def build_symmetric_presentation(alpha, minimal_only: bool = True) -> RingPresentation:
    """Permutation-symmetric presentation on Chern classes ``c_i`` and ``p`` over ``Q``."""
    alpha = require_generic(alpha)
    m = alpha.m
    names = ["c%d" % i for i in range(1, m + 1)] + ["p"]
    ring = PolyRing(names, [2] * m + [4], QQ)
    c = [ring.gen("c%d" % i) for i in range(1, m + 1)]
    p = ring.gen("p")
    shorts = short_masks(alpha)
    longs = {x for x in range(1 << m) if x not in shorts}
    targets = _minimal(longs) if minimal_only else sorted(longs, key=lambda x: (popcount(x), x))
    r1 = [ci ** 2 - p for ci in c]
    r2 = []
    for L in targets:
        size = popcount(L)
        rel = ring.zero()
        for M in _submasks(L):
            sm = popcount(M)
            if (size - sm) % 2 == 0:
                continue
            term = p ** ((size - sm - 1) // 2)
            for i in range(m):
                if M >> i & 1:
                    term = term * c[i]
            rel = rel + term
        r2.append(rel)
    meta = {"long_sets": "minimal" if minimal_only else "all"}
    return RingPresentation("SymmetricPol", ring, {"R1": r1, "R2": r2}, 2 * (m - 3), alpha, None, meta)


def chern_substitution(pres: RingPresentation) -> dict:
    """Images of ``c_1..c_m`` and ``p`` in the ``R, V`` ring of a ``Pol`` presentation (over ``Q``)."""
    ring = pres.compute_ring.with_coefficients(QQ)
    R = ring.gen("R")
    out = {}
    for i in range(1, pres.alpha.m + 1):
        out["c%d" % i] = -R if i == pres.distinguished else R + 2 * ring.gen("V%d" % i)
    out["p"] = R * R
    return out


def symmetric_presentation_check(alpha, minimal_only: bool = True) -> dict:
    """Map the symmetric relators into ``Pol`` and compare graded dimensions."""
    sym = build_symmetric_presentation(alpha, minimal_only)
    pol = _rational_view(build_pol_presentation(alpha))
    images = chern_substitution(pol)
    target = pol.compute_ring
    vanish = all(pol.reduce(r.substitute(images, target)).is_zero() for r in sym.relators)
    return {
        "relators vanish": vanish,
        "dimensions agree": sym.graded_dimensions() == pol.graded_dimensions(),
        "presentation": sym,
    }


# ---------------------------------------------------------------------------
# characteristic classes, intersection forms

def characteristic_classes(pres: RingPresentation) -> dict:
    """Chern classes ``c_i``, Pontryagin class ``p``, symplectic class and ``c_1`` of the tangent bundle.

    Also returns boolean checks under ``"checks"``.
    """
    if pres.space not in ("Pol", "APol", "UP"):
        raise ValueError("characteristic classes are defined on spatial presentations")
    alpha, k = pres.alpha, pres.distinguished
    m = alpha.m
    data = edge_data(alpha, k)
    qpres = pres if pres.compute_ring.coeffs == QQ else _rational_view(pres)
    R = qpres.compute_ring.gen("R")
    V = {i: qpres.compute_ring.gen("V%d" % i) for i in data.edges}
    classes = {}
    for i in range(1, m + 1):
        classes["c%d" % i] = qpres.element(-R if i == k else R + 2 * V[i])
    squares = [classes["c%d" % i] * classes["c%d" % i] for i in range(1, m + 1)]
    classes["p"] = squares[0]
    singletons = [i for i in data.edges if (1 << (i - 1)) in data.subposet]
    coeff_r = -alpha[k - 1] + sum(alpha[i - 1] for i in data.edges)
    omega = qpres.element(R * coeff_r + sum((V[i] * (2 * alpha[i - 1]) for i in singletons), qpres.compute_ring.zero()))
    classes["omega"] = omega
    c1 = qpres.element(R * (m - 2) + sum((V[i] * 2 for i in singletons), qpres.compute_ring.zero()))
    classes["c1_tangent"] = c1
    weighted = qpres.element(0)
    total = qpres.element(0)
    for i in range(1, m + 1):
        weighted = weighted + qpres.element(classes["c%d" % i].poly * alpha[i - 1])
        total = total + classes["c%d" % i]
    classes["checks"] = {
        "c_i^2 all equal": all(s == squares[0] for s in squares),
        "c_i = R for {i} long with k": all(
            classes["c%d" % i] == qpres.element(R) for i in data.edges if (1 << (i - 1)) not in data.subposet),
        "omega = sum alpha_i c_i": omega == weighted,
        "c1 = sum c_i": c1 == total,
    }
    return classes


def _rational_view(pres: RingPresentation) -> RingPresentation:
    """Same presentation with coefficients extended to ``Q``."""
    cached = getattr(pres, "_rational", None)
    if cached is None:
        view = RingPresentation.__new__(RingPresentation)
        view.__dict__.update(pres.__dict__)
        qring = pres.compute_ring.with_coefficients(QQ)
        view.basis = GroebnerBasis.from_polys(qring, [qring(p) for p in pres.basis.polys], True)
        view.ring = pres.ring.with_coefficients(QQ)
        view._lattice = {}
        view.metadata = dict(pres.metadata)
        pres._rational = view
        cached = view
    return cached


def liouville_volume(pres: RingPresentation) -> Fraction:
    """``int omega^n / n!`` with the orientation fixed by ``omega``."""
    n = pres.top_degree // 2
    omega = characteristic_classes(pres)["omega"]
    top_vecs, _ = pres.integral_basis(pres.top_degree)
    power = omega ** n
    coord = pres.coordinates(power, pres.top_degree)
    ratio = Fraction(coord[0]) / top_vecs[0][0]
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return abs(ratio) / fact


@dataclass
class IntersectionForm:
    labels: list
    matrix: list
    top_generator: Poly
    change_of_basis: Optional[list] = None

    def is_symmetric(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n))

    def determinant(self) -> int:
        return bareiss_determinant(self.matrix)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def signature(self) -> int:
        return form_signature(self.matrix)


def fundamental_orientation(pres: RingPresentation) -> tuple:
    """``(top vector, top preimage)`` for the oriented integral generator of the top degree.

    The sign is chosen so that ``omega^n`` pairs positively.
    """
    if pres.empty:
        raise EmptySpace("the polygon space is empty")
    vecs, pre = pres.integral_basis(pres.top_degree)
    if len(vecs) != 1:
        raise ValueError("top degree has rank %d, expected 1" % len(vecs))
    vec, gen = vecs[0], pre[0]
    omega = characteristic_classes(pres)["omega"]
    coord = Fraction(pres.coordinates(omega ** (pres.top_degree // 2), pres.top_degree)[0])
    if coord / vec[0] < 0:
        vec, gen = [-x for x in vec], -gen
    return vec, gen


def intersection_form(pres: RingPresentation, basis: Optional[Sequence] = None) -> IntersectionForm:
    """Cup-product pairing of the middle degree into the oriented top class.

    ``basis`` defaults to the integral additive basis of the middle degree;
    when given, the change of basis from that default is reported too.
    """
    if pres.space != "Pol":
        raise ValueError("intersection forms are computed on Pol presentations")
    m = pres.alpha.m
    if pres.empty:
        raise EmptySpace("the polygon space is empty")
    if m % 2 == 0:
        raise OddMiddleDegree("middle degree %d is odd for m=%d" % (m - 3, m))
    middle = m - 3
    top_vec, top_gen = fundamental_orientation(pres)
    default_vecs, default_pre = pres.integral_basis(middle)
    chosen = list(default_pre) if basis is None else [pres.ring(b) if not isinstance(b, str) else pres.ring.gen(b) for b in basis]
    matrix = []
    for a in chosen:
        row = []
        for b in chosen:
            coords = pres.coordinates(pres.lift(a) * pres.lift(b), pres.top_degree)
            value = Fraction(coords[0]) / top_vec[0]
            if value.denominator != 1:
                raise AssertionError("pairing %s . %s = %s is not integral" % (a, b, value))
            row.append(int(value))
        matrix.append(row)
    change = None
    if basis is not None:
        change = [[str(x) for x in pres.integral_coordinates(b, middle)] for b in chosen]
    return IntersectionForm([str(b) for b in chosen], matrix, top_gen, change)


def signature_of_form(form: IntersectionForm) -> int:
    return form.signature()


# ---------------------------------------------------------------------------
# Z4 brute force

def cube_zero_count(pres: RingPresentation, modulus: int = 4, degree: int = 2) -> int:
    """Number of ``x`` in ``H^degree (x) Z/modulus`` with ``x^3 = 0``."""
    vecs, pre = pres.integral_basis(degree)
    target = 3 * degree
    n = len(pre)
    if not pres.standard.get(target):
        return modulus ** n
    tvecs, _ = pres.integral_basis(target)
    cubes = {}
    for i, j, l in itertools.combinations_with_replacement(range(n), 3):
        prod = pres.lift(pre[i]) * pres.lift(pre[j]) * pres.lift(pre[l])
        coords = pres.integral_coordinates(prod, target)
        if any(Fraction(c).denominator != 1 for c in coords):
            raise AssertionError("non-integral structure constant")
        cubes[(i, j, l)] = [int(c) for c in coords]
    count = 0
    for a in itertools.product(range(modulus), repeat=n):
        acc = [0] * len(tvecs)
        for (i, j, l), coords in cubes.items():
            mult = _multinomial(i, j, l)
            w = a[i] * a[j] * a[l] * mult
            if w:
                for t, c in enumerate(coords):
                    acc[t] += w * c
        if all(x % modulus == 0 for x in acc):
            count += 1
    return count


def _multinomial(i, j, l) -> int:
    if i == j == l:
        return 1
    if i == j or j == l or i == l:
        return 3
    return 6


def full_cube_zero_count(pres: RingPresentation, modulus: int = 4) -> int:
    """Same count with ``x`` ranging over the whole graded group ``H* (x) Z/modulus``."""
    degrees = [d for d in range(pres.top_degree + 1) if pres.standard.get(d)]
    basis = []
    for d in degrees:
        _, pre = pres.integral_basis(d)
        basis.extend((d, b) for b in pre)
    n = len(basis)
    index = {}
    offset = 0
    for d in degrees:
        index[d] = offset
        offset += len(pres.standard[d])

    def coords(p):
        nf = pres.reduce(p)
        out = [0] * n
        for d, comp in nf.homogeneous_components().items():
            for t, c in enumerate(pres.integral_coordinates(comp, d)):
                out[index[d] + t] = int(c) % modulus
        return out

    table = [[coords(pres.lift(basis[i][1]) * pres.lift(basis[j][1])) for j in range(n)] for i in range(n)]

    def mul(x, y):
        out = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    w = xi * yj
                    for t, c in enumerate(table[i][j]):
                        if c:
                            out[t] += w * c
        return [v % modulus for v in out]

    count = 0
    for a in itertools.product(range(modulus), repeat=n):
        if not any(mul(mul(a, a), a)):
            count += 1
    return count
