"""Constraint sets K and the semigroup criterion for the algebra property.

A constraint set K collects the derivative orders that functions in the
class must lose at the origin: f is admitted when f^(k)(0) = 0 for every
k in K.  Such a class is closed under sums automatically; closure under
products is governed by the *complement* of K, because the power series of
an admitted function is supported on {0} union (Z+ \\ K), and supports
multiply by adding exponents.

K is therefore stored through its complement.  A ``KSpec`` holds a scale
``d >= 1`` and the finite gap set of a numerical semigroup
T = Z>=0 \\ gaps, and represents

    Z+ \\ K = d * (T \\ {0}),

i.e. n is outside K exactly when n = d*t for some positive non-gap t.
With d = 1 this reduces to K = gaps, so any finite K is representable;
d >= 2 yields the infinite constraint sets whose complement is a scaled
semigroup.

The algebra test implemented here is the *semigroup criterion*: the class
is accepted when T is closed under addition.  Closure of the complement is
necessary for the algebra property (two admitted monomials multiply into an
admitted monomial), and the criterion is also sufficient for product
closure of the power-series supports.  No claim is made beyond the
criterion; a complete characterization of the admissible K remains open.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidK, Unsupported

__all__ = [
    "KSpec",
    "ComplementStructure",
    "from_finite_set",
    "contains",
    "is_algebra",
    "smallest_missing",
    "complement_structure",
    "monomial_exponents",
]


@dataclass(frozen=True)
class KSpec:
    """Finite description of a constraint set K via its scaled complement.

    ``d``     positive scale of the complement.
    ``gaps``  strictly increasing tuple of positive integers, the gap set of
              the underlying numerical semigroup T = Z>=0 \\ gaps.

    Membership rule: n in K  iff  NOT (d | n and n/d >= 1 and n/d not in gaps).

    >>> k = from_finite_set([1, 3])
    >>> 1 in k, 2 in k, 3 in k, 4 in k
    (True, False, True, False)
    """

    d: int
    gaps: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidK(f"scale d must be a positive integer, got {self.d!r}")
        gaps = tuple(self.gaps)
        object.__setattr__(self, "gaps", gaps)
        for g in gaps:
            if not isinstance(g, int) or g < 1:
                raise InvalidK(f"gap entries must be positive integers, got {g!r}")
        if any(a >= b for a, b in zip(gaps, gaps[1:])):
            raise InvalidK(f"gaps must be strictly increasing, got {gaps}")

    @cached_property
    def _gapset(self) -> frozenset[int]:
        return frozenset(self.gaps)

    def __contains__(self, n: int) -> bool:
        return contains(self, n)

    def to_json(self) -> dict:
        """JSON form ``{"d": int, "gaps": [int, ...]}``."""
        return {"d": self.d, "gaps": list(self.gaps)}

    @staticmethod
    def from_json(obj: dict) -> "KSpec":
        """Accept ``{"d":..., "gaps":[...]}`` or the shorthand ``{"K":[...]}``."""
        if not isinstance(obj, dict):
            raise InvalidK(f"constraint set must be a JSON object, got {type(obj).__name__}")
        if "K" in obj:
            members = obj["K"]
            if not isinstance(members, list):
                raise InvalidK('"K" must be a list of positive integers')
            return from_finite_set(members)
        if "d" in obj and "gaps" in obj:
            gaps = obj["gaps"]
            if not isinstance(gaps, list):
                raise InvalidK('"gaps" must be a list of positive integers')
            return KSpec(d=obj["d"], gaps=tuple(sorted(set(int(g) for g in gaps))))
        raise InvalidK('constraint set needs either {"K": [...]} or {"d":..., "gaps": [...]}')


@dataclass(frozen=True)
class ComplementStructure:
    """Canonical decomposition of Z+ \\ K as {n1*d, ..., np*d, N0*d, (N0+j)*d}.

    ``heads`` lists the sporadic complement elements n1 < ... < np (already
    divided by d) and ``n0`` is the start of the full tail, with
    gcd(heads) = 1 and n0 > heads[-1].
    """

    d: int
    heads: tuple[int, ...]
    n0: int


def from_finite_set(k_list) -> KSpec:
    """Build the KSpec of a finite constraint set (scale 1, gaps = the set)."""
    members = sorted(set(int(n) for n in k_list))
    if not members:
        raise InvalidK("finite constraint set must be nonempty")
    if members[0] < 1:
        raise InvalidK(f"constraint set entries must be >= 1, got {members[0]}")
    return KSpec(d=1, gaps=tuple(members))


def contains(k: KSpec, n: int) -> bool:
    """Membership test: is derivative order ``n`` constrained by K?

    n is *outside* K exactly when n = d*t with t a positive non-gap of the
    underlying semigroup.  Pure and total for n >= 1.
    """
    if n < 1:
        raise ValueError(f"membership is defined for positive orders, got {n}")
    if n % k.d != 0:
        return True
    t = n // k.d
    return t in k._gapset


def is_algebra(k: KSpec) -> bool:
    """Semigroup criterion: no two positive non-gaps of T may sum to a gap.

    Any closure violation a + b in gaps has a + b <= max(gaps), so scanning
    pairs below the largest gap is exhaustive.  The scale d is irrelevant
    here, additive closure is preserved by scaling.

    >>> is_algebra(from_finite_set([2]))
    False
    >>> is_algebra(from_finite_set([1, 3]))
    True
    """
    if not k.gaps:
        return True
    g_max = k.gaps[-1]
    gapset = k._gapset
    nongaps = [t for t in range(1, g_max) if t not in gapset]
    for i, a in enumerate(nongaps):
        for b in nongaps[i:]:
            s = a + b
            if s > g_max:
                break
            if s in gapset:
                return False
    return True


def smallest_missing(k: KSpec) -> int:
    """Smallest positive integer outside K, i.e. d * min(T \\ {0}).

    Always defined: a finite gap set leaves the complement infinite.
    """
    t = 1
    while t in k._gapset:
        t += 1
    return k.d * t


def _conductor(k: KSpec) -> int:
    """Least c >= 1 with [c, infinity) inside the semigroup T."""
    return k.gaps[-1] + 1 if k.gaps else 1


def complement_structure(k: KSpec) -> ComplementStructure:
    """Extract the canonical (d, heads, N0) decomposition of Z+ \\ K.

    Starts from N0 = conductor of T and heads = positive non-gaps below it,
    then absorbs N0, N0+1, ... into heads until the heads are nonempty with
    gcd 1.  The decomposition is not unique; this fixes the variant with the
    smallest N0 satisfying the gcd normalization.
    """
    if not is_algebra(k):
        raise Unsupported("complement structure requires the algebra property")
    if k.d == 1 and not k.gaps:
        raise Unsupported("K is empty; no complement structure is defined")
    n0 = _conductor(k)
    heads = [t for t in range(1, n0) if t not in k._gapset]
    while not heads or math.gcd(*heads) != 1:
        heads.append(n0)
        n0 += 1
    return ComplementStructure(d=k.d, heads=tuple(heads), n0=n0)


def monomial_exponents(k: KSpec, bound: int) -> list[int]:
    """Admissible power-series exponents up to ``bound``: {0} plus [1, bound] \\ K.

    >>> monomial_exponents(from_finite_set([1]), 5)
    [0, 2, 3, 4, 5]
    """
    if not is_algebra(k):
        raise Unsupported("monomial support is only meaningful for algebras")
    return [0] + [e for e in range(1, bound + 1) if not contains(k, e)]
