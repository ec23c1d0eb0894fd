"""Symmetric Newton polygons as multisets of isocrystal factors G(c,d)."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from math import gcd
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple

from ..errors import (
    EmptyPolygonError,
    GenusMismatchError,
    NonCoprimeError,
    NotSymmetricError,
    NuTooSmallError,
    PolygonError,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class IsoFactor:
    """The isocrystal factor G(c,d): codimension c, dimension d, slope d/(c+d)."""

    c: int
    d: int

    def __post_init__(self):
        if self.c < 0 or self.d < 0:
            raise PolygonError(f"G({self.c},{self.d}) has a negative entry")
        # gcd(0,0) == 0, so this also rejects G(0,0)
        if gcd(self.c, self.d) != 1:
            raise NonCoprimeError(f"G({self.c},{self.d}): c and d must be coprime")

    def slope(self) -> Fraction:
        return Fraction(self.d, self.c + self.d)

    def height(self) -> int:
        return self.c + self.d

    def dual(self) -> "IsoFactor":
        """The factor with slope 1 - slope()."""
        return IsoFactor(self.d, self.c)

    def sort_key(self) -> Tuple[Fraction, int]:
        return (self.slope(), self.height())

    def __str__(self) -> str:
        return f"G({self.c},{self.d})"


ORD_LOW = IsoFactor(1, 0)
ORD_HIGH = IsoFactor(0, 1)
SS = IsoFactor(1, 1)


@total_ordering
@dataclass(frozen=True)
class NewtonPolygon:
    """
    A symmetric Newton polygon, stored as factors with multiplicities.

    Build instances with `NewtonPolygon.make`, `from_counts` or the named
    constructors below; they validate coprimality and symmetry and put the
    factors in canonical order (ascending slope, then ascending height).
    """

    factors: Tuple[Tuple[IsoFactor, int], ...]

    @classmethod
    def make(cls, factor_list: Iterable[Sequence[int]]) -> "NewtonPolygon":
        """Validate and canonicalize a list of (c, d, m) triples."""
        counts: Dict[IsoFactor, int] = {}
        for c, d, m in factor_list:
            if m < 1:
                raise PolygonError(f"multiplicity of G({c},{d}) must be positive, got {m}")
            factor = IsoFactor(c, d)
            counts[factor] = counts.get(factor, 0) + m
        return cls.from_counts(counts)

    @classmethod
    def from_counts(cls, counts: Mapping[IsoFactor, int]) -> "NewtonPolygon":
        counts = {f: m for f, m in counts.items() if m > 0}
        if not counts:
            raise EmptyPolygonError("a Newton polygon needs at least one factor")
        for factor, m in counts.items():
            dual_m = counts.get(factor.dual(), 0)
            if dual_m != m:
                raise NotSymmetricError(
                    f"{factor} has multiplicity {m} but {factor.dual()} has {dual_m}"
                )
        ordered = tuple(sorted(counts.items(), key=lambda fm: fm[0].sort_key()))
        return cls(ordered)

    @classmethod
    def from_list(cls, data: Iterable[Sequence[int]]) -> "NewtonPolygon":
        """Inverse of `to_list`."""
        return cls.make(tuple(entry) for entry in data)

    def to_list(self) -> List[List[int]]:
        """Structured form [[c, d, m], ...] in canonical order."""
        return [[f.c, f.d, m] for f, m in self.factors]

    @cached_property
    def counts(self) -> Dict[IsoFactor, int]:
        return dict(self.factors)

    def multiplicity(self, factor: IsoFactor) -> int:
        return self.counts.get(factor, 0)

    @cached_property
    def genus(self) -> int:
        return sum(m * f.d for f, m in self.factors)

    @property
    def p_rank(self) -> int:
        """Multiplicity of slope 0."""
        return self.multiplicity(ORD_LOW)

    def slopes(self) -> List[Tuple[Fraction, int]]:
        """(slope, number of unit steps with that slope) in ascending slope order."""
        return [(f.slope(), m * f.height()) for f, m in self.factors]

    def vertices(self) -> List[Tuple[int, int]]:
        """Breakpoints of the lower convex path from (0,0) to (2g,g)."""
        x = y = 0
        points = [(0, 0)]
        for factor, m in self.factors:
            x += m * factor.height()
            y += m * factor.d
            points.append((x, y))
        return points

    @cached_property
    def path(self) -> Tuple[Fraction, ...]:
        """Exact heights of the polygon at x = 0, 1, ..., 2g."""
        heights = [Fraction(0)]
        for factor, m in self.factors:
            step = factor.slope()
            for _ in range(m * factor.height()):
                heights.append(heights[-1] + step)
        return tuple(heights)

    def height_at(self, x: int) -> Fraction:
        """Polygon height ξ(x) at an integer abscissa 0 <= x <= 2g."""
        if not 0 <= x <= 2 * self.genus:
            raise PolygonError(f"abscissa {x} outside [0, {2 * self.genus}]")
        return self.path[x]

    def sort_key(self) -> Tuple[int, Tuple[Fraction, ...]]:
        return (self.genus, self.path)

    def __lt__(self, other: "NewtonPolygon") -> bool:
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return direct_sum(self, other)

    def __str__(self) -> str:
        return format_polygon(self)

    def __repr__(self) -> str:
        return f"NewtonPolygon({format_polygon(self)!r})"


@total_ordering
@dataclass(frozen=True)
class PolygonPartition:
    """An unordered split ξ = left ⊕ right; `left` is the smaller side in canonical order."""

    left: NewtonPolygon
    right: NewtonPolygon

    @classmethod
    def of(cls, a: NewtonPolygon, b: NewtonPolygon) -> "PolygonPartition":
        return cls(a, b) if a.sort_key() <= b.sort_key() else cls(b, a)

    def parent(self) -> NewtonPolygon:
        return direct_sum(self.left, self.right)

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())

    def __lt__(self, other: "PolygonPartition") -> bool:
        if not isinstance(other, PolygonPartition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"{self.left} | {self.right}"


def ordinary(n: int = 1) -> NewtonPolygon:
    """ord^n."""
    return NewtonPolygon.make([(0, 1, n), (1, 0, n)])


def supersingular(g: int = 1) -> NewtonPolygon:
    """σ_g = ss^g."""
    return NewtonPolygon.make([(1, 1, g)])


def nu(d: int) -> NewtonPolygon:
    """ν_d^0 = G(1,d-1) + G(d-1,1), slopes 1/d and (d-1)/d."""
    if d < 3:
        raise NuTooSmallError(f"nu{d}: d must be at least 3")
    return NewtonPolygon.make([(1, d - 1, 1), (d - 1, 1, 1)])


def iso_pair(c: int, d: int) -> NewtonPolygon:
    """G(c,d) + G(d,c), or G(1,1) alone when c == d."""
    if c == d:
        return NewtonPolygon.make([(c, d, 1)])
    return NewtonPolygon.make([(c, d, 1), (d, c, 1)])


def pad_ordinary(xi: NewtonPolygon, n: int) -> NewtonPolygon:
    """ord^n ⊕ ξ, with n == 0 meaning ξ itself."""
    if n < 0:
        raise PolygonError(f"cannot pad with ord^{n}")
    return xi if n == 0 else direct_sum(ordinary(n), xi)


def direct_sum(a: NewtonPolygon, b: NewtonPolygon) -> NewtonPolygon:
    """Multiset union of the factors of a and b."""
    counts = dict(a.counts)
    for factor, m in b.factors:
        counts[factor] = counts.get(factor, 0) + m
    return NewtonPolygon.from_counts(counts)


def _power(atom: str, m: int) -> str:
    return atom if m == 1 else f"{atom}^{m}"


def format_polygon(xi: NewtonPolygon) -> str:
    """
    Canonical expression text: ord part, then slope pairs by ascending
    lower slope, then the supersingular part. Parses back to the same polygon.
    """
    parts = []
    if xi.p_rank:
        parts.append(_power("ord", xi.p_rank))
    for factor, m in xi.factors:
        if factor == ORD_LOW or factor.slope() >= HALF:
            continue
        if factor.d == 1:
            parts.append(_power(f"nu{factor.c + 1}", m))
        else:
            parts.append(_power(f"G({factor.d},{factor.c})", m))
            parts.append(_power(f"G({factor.c},{factor.d})", m))
    if xi.multiplicity(SS):
        parts.append(_power("ss", xi.multiplicity(SS)))
    return "+".join(parts)


def _symmetric_units(g: int) -> List[Tuple[int, Tuple[IsoFactor, ...]]]:
    """Smallest symmetric building blocks of genus <= g: (genus, factors)."""
    units = [(1, (ORD_HIGH, ORD_LOW)), (1, (SS,))]
    for height in range(3, g + 1):
        for d in range(1, height):
            c = height - d
            if d < c and gcd(c, d) == 1:
                units.append((height, (IsoFactor(c, d), IsoFactor(d, c))))
    return units


@lru_cache(maxsize=None)
def enumerate_polygons(g: int) -> Tuple[NewtonPolygon, ...]:
    """Every symmetric Newton polygon of genus g, in canonical order."""
    if g < 1:
        raise PolygonError(f"genus must be positive, got {g}")
    units = _symmetric_units(g)

    def fill(index: int, remaining: int) -> Iterator[Dict[int, int]]:
        if remaining == 0:
            yield {}
            return
        if index == len(units):
            return
        unit_genus = units[index][0]
        for k in range(remaining // unit_genus, -1, -1):
            for rest in fill(index + 1, remaining - k * unit_genus):
                yield {index: k, **rest} if k else rest

    polygons = []
    for choice in fill(0, g):
        counts: Dict[IsoFactor, int] = {}
        for index, k in choice.items():
            for factor in units[index][1]:
                counts[factor] = counts.get(factor, 0) + k
        polygons.append(NewtonPolygon.from_counts(counts))
    return tuple(sorted(polygons))


@lru_cache(maxsize=None)
def partitions(xi: NewtonPolygon) -> FrozenSet[PolygonPartition]:
    """All unordered splits of ξ into two nonempty symmetric polygons."""
    # a symmetric sub-multiset takes the same number of copies of f and dual(f)
    units = [(f, m) for f, m in xi.factors if f.slope() <= HALF]
    result = set()
    for choice in itertools.product(*(range(m + 1) for _, m in units)):
        if all(k == 0 for k in choice) or all(k == m for k, (_, m) in zip(choice, units)):
            continue
        left: Dict[IsoFactor, int] = {}
        right: Dict[IsoFactor, int] = {}
        for k, (factor, m) in zip(choice, units):
            for member in {factor, factor.dual()}:
                left[member] = k
                right[member] = m - k
        result.add(
            PolygonPartition.of(NewtonPolygon.from_counts(left), NewtonPolygon.from_counts(right))
        )
    return frozenset(result)


def is_indecomposable(xi: NewtonPolygon) -> bool:
    return not partitions(xi)


def dominates(a: NewtonPolygon, b: NewtonPolygon) -> bool:
    """True iff the path of a lies on or above the path of b at every integer abscissa."""
    if a.genus != b.genus:
        raise GenusMismatchError(f"cannot compare genus {a.genus} with genus {b.genus}")
    return all(ya >= yb for ya, yb in zip(a.path, b.path))
