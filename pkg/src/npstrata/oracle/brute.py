"""
Brute-force oracles.

These search straight from the definitions (lattice paths, lattice points,
sub-multisets) and share no evaluation code with `npstrata.core`; only the
result types are common.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Set, Tuple

from ..config import ORACLE_MAX_FACTORS, ORACLE_MAX_GENUS
from ..core import IsoFactor, NewtonPolygon, PolygonPartition
from ..errors import BudgetExceededError

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True)
class LatticePath:
    """Breakpoints of a lower convex path from (0,0) to (2g, g)."""

    points: Tuple[Point, ...]

    @property
    def genus(self) -> int:
        return self.points[-1][1]

    def segments(self) -> List[Point]:
        return [(x2 - x1, y2 - y1) for (x1, y1), (x2, y2) in zip(self.points, self.points[1:])]

    def is_symmetric(self) -> bool:
        """Slopes pair up as λ, 1 - λ: breakpoints are fixed by (x, y) -> (2g - x, y + g - x)."""
        g = self.genus
        reflected = {(2 * g - x, y + g - x) for x, y in self.points}
        return reflected == set(self.points)

    def to_polygon(self) -> NewtonPolygon:
        triples = []
        for dx, dy in self.segments():
            k = gcd(dx, dy)
            triples.append((dx // k - dy // k, dy // k, k))
        return NewtonPolygon.make(triples)


def _convex_paths(g: int) -> Iterator[LatticePath]:
    end = (2 * g, g)

    def extend(points: List[Point], last_slope: Fraction) -> Iterator[LatticePath]:
        x, y = points[-1]
        if (x, y) == end:
            yield LatticePath(tuple(points))
            return
        for x2 in range(x + 1, end[0] + 1):
            for y2 in range(y, min(end[1], y + (x2 - x)) + 1):
                slope = Fraction(y2 - y, x2 - x)
                if slope <= last_slope:
                    continue
                if (x2, y2) != end:
                    # the rest of the path needs a steeper slope
                    if x2 == end[0] or Fraction(end[1] - y2, end[0] - x2) <= slope:
                        continue
                yield from extend(points + [(x2, y2)], slope)

    yield from extend([(0, 0)], Fraction(-1))


def brute_enumerate(g: int) -> List[NewtonPolygon]:
    """Every symmetric convex lattice path of genus g, as polygons, sorted."""
    if g < 1:
        raise ValueError(f"genus must be positive, got {g}")
    if g > ORACLE_MAX_GENUS:
        raise BudgetExceededError(f"brute_enumerate is limited to g <= {ORACLE_MAX_GENUS}")
    polygons = [path.to_polygon() for path in _convex_paths(g) if path.is_symmetric()]
    logger.debug("brute_enumerate(%d): %d symmetric paths", g, len(polygons))
    return sorted(polygons)


def _heights(xi: NewtonPolygon) -> List[Fraction]:
    steps = []
    for factor, m in xi.factors:
        steps.extend([Fraction(factor.d, factor.c + factor.d)] * (m * (factor.c + factor.d)))
    steps.sort()
    heights = [Fraction(0)]
    for step in steps:
        heights.append(heights[-1] + step)
    return heights


def brute_codim(xi: NewtonPolygon) -> int:
    """Count lattice points (x, y), 1 <= x <= g, 0 <= y <= g, with y strictly below ξ(x)."""
    heights = _heights(xi)
    g = len(heights) // 2
    return sum(1 for x in range(1, g + 1) for y in range(0, g + 1) if y < heights[x])


def _is_symmetric(counts: dict) -> bool:
    return all(counts.get(IsoFactor(f.d, f.c), 0) == m for f, m in counts.items())


def brute_partitions(xi: NewtonPolygon) -> Set[PolygonPartition]:
    """Try every subset of the flattened factor list as the left side."""
    flat: List[IsoFactor] = [factor for factor, m in xi.factors for _ in range(m)]
    if len(flat) > ORACLE_MAX_FACTORS:
        raise BudgetExceededError(
            f"brute_partitions is limited to {ORACLE_MAX_FACTORS} factors, got {len(flat)}"
        )
    found = set()
    for mask in range(1, (1 << len(flat)) - 1):
        left: dict = {}
        right: dict = {}
        for bit, factor in enumerate(flat):
            side = left if mask >> bit & 1 else right
            side[factor] = side.get(factor, 0) + 1
        if not (_is_symmetric(left) and _is_symmetric(right)):
            continue
        found.add(
            PolygonPartition.of(NewtonPolygon.from_counts(left), NewtonPolygon.from_counts(right))
        )
    return found
