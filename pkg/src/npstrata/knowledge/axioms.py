"""Literature facts the deduction engine starts from."""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from ..core import NewtonPolygon, pad_ordinary, prank_stratum_dim
from .conditions import AlmostAll, PrimeCondition

logger = logging.getLogger(__name__)


class AxiomKind(str, Enum):
    """What an axiom asserts about the strata of its polygons."""

    OCCURS_SMOOTH = "OccursSmooth"
    GENERIC_NP = "GenericNPOfPrankComponents"
    DIM_EXACT = "DimExactComponents"
    OPEN_DENSE = "OpenDenseInPrankStratum"


@dataclass(frozen=True)
class Axiom:
    """
    A citable fact about M_g[ξ] for one or more polygons ξ of genus g.

    With `pad_ord` the fact also holds at every g' > g for ord^(g'-g) ⊕ ξ,
    with p-rank f + (g' - g). Explicit dimensions (`dims`, `dim_lo`,
    `dim_hi`) apply at the base genus only.
    """

    id: str
    kind: AxiomKind
    g: int
    polygons: Tuple[NewtonPolygon, ...]
    prime_condition: PrimeCondition
    citation: str
    f: Optional[int] = None
    dim_lo: Optional[int] = None
    dim_hi: Optional[int] = None
    dims: Optional[Tuple[int, ...]] = None
    pad_ord: bool = False
    redundant: bool = False

    def covers(self, g: int) -> bool:
        return g == self.g or (self.pad_ord and g > self.g)

    def polygons_at(self, g: int) -> Tuple[NewtonPolygon, ...]:
        if not self.covers(g):
            return ()
        return tuple(pad_ordinary(xi, g - self.g) for xi in self.polygons)

    def f_at(self, g: int) -> Optional[int]:
        if self.f is None:
            return None
        return self.f + (g - self.g)

    @property
    def is_reporting_only(self) -> bool:
        return isinstance(self.prime_condition, AlmostAll)

    def claims_occurrence(self) -> bool:
        if self.kind in (AxiomKind.OCCURS_SMOOTH, AxiomKind.OPEN_DENSE):
            return True
        return self.kind == AxiomKind.GENERIC_NP and len(self.polygons) == 1

    def dim_bounds(self, g: int, index: int) -> Tuple[Optional[int], Optional[int]]:
        """(lower, upper) dimension bounds this axiom gives the index-th polygon at genus g."""
        xi = self.polygons_at(g)[index]
        if self.kind == AxiomKind.OPEN_DENSE or (
            self.kind == AxiomKind.GENERIC_NP and len(self.polygons) == 1
        ):
            exact = prank_stratum_dim(g, xi.p_rank)
            return exact, exact
        if g != self.g:
            return None, None
        if self.dims is not None:
            return self.dims[index], self.dims[index]
        return self.dim_lo, self.dim_hi


def validate_axioms(axioms: Iterable[Axiom]) -> List[str]:
    """Return one message per semantic problem; an empty list means the base is usable."""
    axioms = list(axioms)
    issues = []
    for axiom_id, count in Counter(a.id for a in axioms).items():
        if count > 1:
            issues.append(f"duplicate axiom id {axiom_id!r}")

    for axiom in axioms:
        where = f"axiom {axiom.id!r}"
        if not axiom.id:
            issues.append("axiom with empty id")
        if not axiom.citation.strip():
            issues.append(f"{where}: missing citation")
        if axiom.g < 1:
            issues.append(f"{where}: genus must be positive, got {axiom.g}")
            continue
        if not axiom.polygons:
            issues.append(f"{where}: no polygons")
        for xi in axiom.polygons:
            if xi.genus != axiom.g:
                issues.append(f"{where}: {xi} has genus {xi.genus}, expected {axiom.g}")

        if axiom.kind in (AxiomKind.GENERIC_NP, AxiomKind.OPEN_DENSE) and axiom.g < 2:
            issues.append(f"{where}: {axiom.kind.value} needs g >= 2")
        if axiom.kind == AxiomKind.GENERIC_NP and axiom.f is None:
            issues.append(f"{where}: {axiom.kind.value} needs a p-rank f")
        if axiom.f is not None:
            if not 0 <= axiom.f <= axiom.g:
                issues.append(f"{where}: p-rank {axiom.f} outside [0, {axiom.g}]")
            for xi in axiom.polygons:
                if xi.p_rank != axiom.f:
                    issues.append(f"{where}: {xi} has p-rank {xi.p_rank}, expected {axiom.f}")

        if axiom.dims is not None:
            if len(axiom.dims) != len(axiom.polygons):
                issues.append(
                    f"{where}: {len(axiom.dims)} dims for {len(axiom.polygons)} polygons"
                )
            if axiom.dim_lo is not None or axiom.dim_hi is not None:
                issues.append(f"{where}: give either dims or dim_lo/dim_hi, not both")
        bounds = [b for b in (axiom.dim_lo, axiom.dim_hi) if b is not None]
        if any(b < 0 for b in bounds + list(axiom.dims or ())):
            issues.append(f"{where}: negative dimension")
        if axiom.dim_lo is not None and axiom.dim_hi is not None and axiom.dim_lo > axiom.dim_hi:
            issues.append(f"{where}: dim_lo {axiom.dim_lo} exceeds dim_hi {axiom.dim_hi}")
        if axiom.kind == AxiomKind.DIM_EXACT and axiom.dims is None and (
            axiom.dim_lo is None or axiom.dim_lo != axiom.dim_hi
        ):
            issues.append(f"{where}: {axiom.kind.value} needs dims or dim_lo == dim_hi")

    if issues:
        logger.debug("Axiom validation found %d issue(s)", len(issues))
    return issues
