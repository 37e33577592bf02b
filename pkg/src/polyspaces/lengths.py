"""Length vectors and their short/long subset families.

Subsets of ``{1..m}`` are handled internally as bitmasks (bit ``i-1`` stands
for edge ``i``) and exposed to callers as frozensets of 1-based indices.
Everything here is exponential in ``m``; that is fine for the ``m <= 20``
range the rest of the package works in.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DimensionMismatch, Inconsistent, NonGeneric

SHORTS = "shorts"
SUBPOSET = "subposet"
LONGS = "longs"
LONGS_WITH_LAST = "longs_with_last"


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("lengths must be exact (int, Fraction or 'p/q' string), got float %r" % x)
    if isinstance(x, str) and ("." in x or "e" in x.lower()):
        raise ValueError("decimal lengths are not accepted: %r" % x)
    return Fraction(x)


@dataclass(frozen=True)
class LengthVector:
    """An exact positive length vector ``alpha = (alpha_1, ..., alpha_m)``."""

    alpha: tuple

    def __init__(self, alpha: Iterable):
        values = tuple(_to_fraction(a) for a in alpha)
        if len(values) < 3:
            raise ValueError("a polygon needs at least 3 edges, got %d" % len(values))
        if any(a <= 0 for a in values):
            raise ValueError("all lengths must be strictly positive")
        object.__setattr__(self, "alpha", values)

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        """Parse ``"2,2,3,5,5,10"`` or ``"1/3,1/3,1,1,1"``."""
        parts = [p.strip() for p in text.replace(" ", "").split(",") if p.strip()]
        return cls(parts)

    @property
    def m(self) -> int:
        return len(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def integer_weights(self) -> tuple:
        """The lengths scaled by the lcm of their denominators."""
        den = 1
        for a in self.alpha:
            den = den * a.denominator // math.gcd(den, a.denominator)
        return tuple(int(a * den) for a in self.alpha)

    def permuted(self, perm: Sequence[int]) -> "LengthVector":
        """Return ``pi . alpha``: the length of edge ``perm[i]`` becomes ``alpha_{i+1}``.

        ``perm`` is 1-based: ``perm[i-1] = pi(i)``.
        """
        out = [None] * self.m
        for i, j in enumerate(perm):
            out[j - 1] = self.alpha[i]
        return LengthVector(out)

    def __str__(self):
        return ",".join(str(a) for a in self.alpha)


def as_length_vector(alpha) -> LengthVector:
    if isinstance(alpha, LengthVector):
        return alpha
    if isinstance(alpha, str):
        return LengthVector.parse(alpha)
    return LengthVector(alpha)


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def subset_of(mask: int) -> frozenset:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _subset_sums(weights: Sequence[int]) -> list:
    sums = [0] * (1 << len(weights))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + weights[low.bit_length() - 1]
    return sums


@dataclass(frozen=True)
class SubsetFamily:
    """An explicit family of subsets of ``ground``, stored as bitmasks."""

    ground: tuple
    members: frozenset
    kind: str
    m: int = field(default=0)

    def __contains__(self, subset) -> bool:
        if isinstance(subset, int):
            return subset in self.members
        return mask_of(subset) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.as_sets())

    def as_sets(self) -> list:
        return [subset_of(x) for x in sorted(self.members, key=lambda x: (popcount(x), _rev_key(x)))]

    def maximal(self) -> list:
        ms = [x for x in self.members if not any(y != x and (x & y) == x for y in self.members)]
        return [subset_of(x) for x in sorted(ms, key=lambda x: (popcount(x), _rev_key(x)))]

    def minimal(self) -> list:
        ms = [x for x in self.members if not any(y != x and (x & y) == y for y in self.members)]
        return [subset_of(x) for x in sorted(ms, key=lambda x: (popcount(x), _rev_key(x)))]

    def size_counts(self) -> list:
        """``counts[k]`` = number of members of cardinality ``k``."""
        counts = [0] * (len(self.ground) + 1)
        for x in self.members:
            counts[popcount(x)] += 1
        return counts

    def is_down_closed(self) -> bool:
        for x in self.members:
            y = x
            while y:
                low = y & -y
                if x ^ low not in self.members:
                    return False
                y ^= low
        return True

    def is_up_closed(self) -> bool:
        full = mask_of(self.ground)
        for x in self.members:
            rest = full & ~x
            while rest:
                low = rest & -rest
                if x | low not in self.members:
                    return False
                rest ^= low
        return True


def _rev_key(mask: int) -> tuple:
    return tuple(sorted(subset_of(mask)))


# ---------------------------------------------------------------------------
# genericity and short subsets

def find_collinear_signs(alpha) -> Optional[tuple]:
    """Return a sign vector with ``sum eps_i alpha_i = 0``, or ``None``."""
    alpha = as_length_vector(alpha)
    w = alpha.integer_weights()
    total = sum(w)
    if total % 2:
        return None
    half = total // 2
    # fix eps_1 = +1: look for J containing edge 1 with weight half
    reach = {w[0]: 1}
    for i in range(1, len(w)):
        new = dict(reach)
        for s, mask in reach.items():
            t = s + w[i]
            if t <= half and t not in new:
                new[t] = mask | (1 << i)
        reach = new
    if half in reach:
        mask = reach[half]
        return tuple(1 if mask >> i & 1 else -1 for i in range(len(w)))
    return None


def is_generic(alpha) -> bool:
    return find_collinear_signs(alpha) is None


def _collinear_message(alpha: LengthVector, signs) -> str:
    text = "".join(("+" if s > 0 else "\u2212") + str(a) for s, a in zip(signs, alpha.alpha))
    return "non-generic: %s=0" % text.lstrip("+")


def require_generic(alpha) -> LengthVector:
    alpha = as_length_vector(alpha)
    signs = find_collinear_signs(alpha)
    if signs is not None:
        raise NonGeneric(_collinear_message(alpha, signs), witness=signs)
    return alpha


def short_masks(alpha) -> frozenset:
    alpha = require_generic(alpha)
    w = alpha.integer_weights()
    total = sum(w)
    sums = _subset_sums(w)
    return frozenset(mask for mask, s in enumerate(sums) if 2 * s < total)


def short_family(alpha) -> SubsetFamily:
    alpha = require_generic(alpha)
    return SubsetFamily(tuple(range(1, alpha.m + 1)), short_masks(alpha), SHORTS, alpha.m)


def long_family(alpha) -> SubsetFamily:
    alpha = require_generic(alpha)
    shorts = short_masks(alpha)
    members = frozenset(x for x in range(1 << alpha.m) if x not in shorts)
    return SubsetFamily(tuple(range(1, alpha.m + 1)), members, LONGS, alpha.m)


def distinguished_subposet(alpha, k: Optional[int] = None) -> SubsetFamily:
    """``S_k = {J subset of [m]-{k} : J + {k} short}``; ``k`` defaults to ``m``."""
    alpha = require_generic(alpha)
    m = alpha.m
    k = m if k is None else k
    if not 1 <= k <= m:
        raise ValueError("edge index %d outside 1..%d" % (k, m))
    kbit = 1 << (k - 1)
    shorts = short_masks(alpha)
    members = frozenset(x ^ kbit for x in shorts if x & kbit)
    ground = tuple(i for i in range(1, m + 1) if i != k)
    return SubsetFamily(ground, members, SUBPOSET, m)


def distinguished_longs(alpha) -> SubsetFamily:
    """``L_m = {L subset of [m-1] : L + {m} long}``."""
    alpha = require_generic(alpha)
    m = alpha.m
    top = 1 << (m - 1)
    shorts = short_masks(alpha)
    members = frozenset(x for x in range(top) if (x | top) not in shorts)
    return SubsetFamily(tuple(range(1, m)), members, LONGS_WITH_LAST, m)


def longs_avoiding_last(alpha) -> SubsetFamily:
    """Long subsets of ``{1..m}`` not containing the last edge."""
    alpha = require_generic(alpha)
    m = alpha.m
    shorts = short_masks(alpha)
    members = frozenset(x for x in range(1 << (m - 1)) if x not in shorts)
    return SubsetFamily(tuple(range(1, m)), members, LONGS, m)


def is_empty_space(alpha) -> bool:
    """True when some single edge is long, i.e. no closed polygon exists."""
    alpha = require_generic(alpha)
    total = sum(alpha.alpha)
    return any(2 * a > total for a in alpha.alpha)


def reconstruct_shorts(sk: SubsetFamily, k: int, m: int) -> SubsetFamily:
    """Recover ``S`` from ``S_k`` alone."""
    if not sk.is_down_closed():
        raise Inconsistent("S_%d is not closed under taking subsets" % k)
    kbit = 1 << (k - 1)
    full = (1 << m) - 1
    for x in sk.members:
        if x & kbit or x & ~full:
            raise Inconsistent("member %s of S_%d is not a subset of [m]-{k}" % (sorted(subset_of(x)), k))
    members = set()
    for j in range(1 << m):
        if j & kbit:
            if j ^ kbit in sk.members:
                members.add(j)
        elif (full & ~j) ^ kbit not in sk.members:
            members.add(j)
    return SubsetFamily(tuple(range(1, m + 1)), frozenset(members), SHORTS, m)


# ---------------------------------------------------------------------------
# classification up to relabelling of the edges

def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << (j - 1)
    return out


def _element_profile(members: frozenset, m: int) -> list:
    profile = []
    for i in range(m):
        counts = [0] * (m + 1)
        for x in members:
            if x >> i & 1:
                counts[popcount(x)] += 1
        profile.append(tuple(counts))
    return profile


def classify_pair(a, b) -> Optional[tuple]:
    """Find ``pi`` with ``pi(S(a)) = S(b)``; returns ``(pi(1), ..., pi(m))`` or ``None``."""
    a = require_generic(a)
    b = require_generic(b)
    if a.m != b.m:
        raise DimensionMismatch("edge counts differ: %d vs %d" % (a.m, b.m))
    m = a.m
    sa, sb = short_masks(a), short_masks(b)
    if len(sa) != len(sb):
        return None
    pa, pb = _element_profile(sa, m), _element_profile(sb, m)
    if sorted(pa) != sorted(pb):
        return None
    # restricted families of sets over already-assigned elements must agree
    perm = [0] * m
    used = [False] * m

    def consistent(depth: int) -> bool:
        lo = (1 << depth) - 1
        image = 0
        for i in range(depth):
            image |= 1 << (perm[i] - 1)
        left = {x for x in sa if x & ~lo == 0}
        right = {x for x in sb if x & ~image == 0}
        if len(left) != len(right):
            return False
        return all(permute_mask(x, perm[:depth]) in right for x in left)

    def search(depth: int) -> bool:
        if depth == m:
            return True
        for j in range(m):
            if used[j] or pa[depth] != pb[j]:
                continue
            perm[depth] = j + 1
            used[j] = True
            if consistent(depth + 1) and search(depth + 1):
                return True
            used[j] = False
        return False

    if search(0):
        return tuple(perm)
    return None


def canonical_form(members: frozenset, m: int) -> tuple:
    """Lexicographically least relabelling of a family (brute force over ``m!``)."""
    best = None
    for perm in itertools.permutations(range(1, m + 1)):
        image = tuple(sorted(permute_mask(x, perm) for x in members))
        if best is None or image < best:
            best = image
    return best


def chamber_representatives(m: int, max_length: int = 12) -> list:
    """One generic integer length vector per isomorphism class of ``S``.

    Scans sorted integer vectors with entries up to ``max_length`` and odd
    sum (odd sums are automatically generic). Only classes realised within
    that bound are found; ``max_length=12`` is enough for ``m <= 6``.
    """
    seen_exact = set()
    classes = {}
    for alpha in itertools.combinations_with_replacement(range(1, max_length + 1), m):
        if sum(alpha) % 2 == 0:
            continue
        members = short_masks(LengthVector(alpha))
        if members in seen_exact:
            continue
        seen_exact.add(members)
        key = canonical_form(members, m)
        classes.setdefault(key, LengthVector(alpha))
    return [classes[k] for k in sorted(classes)]


def random_chambers(m: int, count: int, seed: int = 0, max_length: int = 40) -> list:
    """``count`` random generic integer vectors with pairwise distinct sorted short families."""
    rng = random.Random(seed)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("could not find %d distinct chambers for m=%d" % (count, m))
        alpha = sorted(rng.randint(1, max_length) for _ in range(m))
        if sum(alpha) % 2 == 0:
            alpha[-1] += 1
            alpha.sort()
        members = short_masks(LengthVector(alpha))
        if members in seen:
            continue
        seen.add(members)
        out.append(LengthVector(alpha))
    return out
