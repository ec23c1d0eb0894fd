"""Dimension and codimension arithmetic for Newton polygon strata in A_g and M_g."""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from ..errors import GenusMismatchError, OutOfRangeError
from .polygon import NewtonPolygon, PolygonPartition, ordinary, supersingular


def dim_ag(g: int) -> int:
    """Dimension g(g+1)/2 of the moduli space A_g."""
    if g < 1:
        raise OutOfRangeError(f"genus must be positive, got {g}")
    return g * (g + 1) // 2


@lru_cache(maxsize=None)
def codim_ag(xi: NewtonPolygon) -> int:
    """
    Codimension of A_g[ξ] in A_g: the lattice points (x, y) with
    1 <= x <= g and 0 <= y < ξ(x).

    Symmetry of ξ makes the half window enough; for each x the count is the
    ceiling of the exact height ξ(x).
    """
    return sum(math.ceil(xi.height_at(x)) for x in range(1, xi.genus + 1))


def dim_ag_stratum(xi: NewtonPolygon) -> int:
    """Dimension of A_g[ξ]; bounds the Torelli image of M_g[ξ]."""
    return dim_ag(xi.genus) - codim_ag(xi)


def e_dim(xi: NewtonPolygon) -> int:
    """Expected dimension max{0, 3g-3-codim} of M_g[ξ]; 1 for ordinary elliptic curves."""
    g = xi.genus
    if g == 1 and xi == ordinary(1):
        return 1
    return max(0, 3 * g - 3 - codim_ag(xi))


def prank_stratum_dim(g: int, f: int) -> int:
    """Dimension 2g-3+f of every component of the p-rank f locus of M_g (g >= 2)."""
    if g < 2:
        raise OutOfRangeError(f"p-rank strata dimensions need g >= 2, got g={g}")
    if not 0 <= f <= g:
        raise OutOfRangeError(f"p-rank {f} outside [0, {g}]")
    return 2 * g - 3 + f


def strict_inequality_holds(parent: NewtonPolygon, partition: PolygonPartition) -> bool:
    """e(ξ1) + e(ξ2) < e(ξ) with exact e-dimensions on both sides."""
    if partition.parent() != parent:
        raise GenusMismatchError(f"{partition} is not a partition of {parent}")
    return e_dim(partition.left) + e_dim(partition.right) < e_dim(parent)


def supersingular_dim_identity(g: int) -> bool:
    """Check that the supersingular locus of A_g has dimension floor(g^2/4)."""
    return dim_ag(g) - codim_ag(supersingular(g)) == g * g // 4


@dataclass(frozen=True)
class StratumMetrics:
    """Derived numbers for the stratum of ξ."""

    genus: int
    codim_ag: int
    e_dim: int
    p_rank: int
    prank_stratum_dim: Optional[int]

    @classmethod
    def for_polygon(cls, xi: NewtonPolygon) -> "StratumMetrics":
        g = xi.genus
        return cls(
            genus=g,
            codim_ag=codim_ag(xi),
            e_dim=e_dim(xi),
            p_rank=xi.p_rank,
            prank_stratum_dim=prank_stratum_dim(g, xi.p_rank) if g >= 2 else None,
        )

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "codim_ag": self.codim_ag,
            "e_dim": self.e_dim,
            "p_rank": self.p_rank,
            "prank_stratum_dim": self.prank_stratum_dim,
            "dim_ag": dim_ag(self.genus),
        }

