"""Report targets: closure results checked against published occurrence claims."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from .core import NewtonPolygon
from .engine import FactKey, FactState, FactTable, closure
from .errors import OutOfRangeError
from .knowledge import Axiom, PrimeQuery, builtin_axioms

logger = logging.getLogger(__name__)


@dataclass
class Claim:
    """One row of a report; `expected` None means survey only."""

    key: FactKey
    state: FactState
    expected: Optional[bool] = True
    literature: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.expected is None or self.state.occurs == self.expected

    def to_dict(self) -> dict:
        data = {
            **self.key.to_dict(),
            "p_rank": self.key.xi.p_rank,
            "status": self.state.status,
            "condition": self.state.condition.render() if self.state.condition else None,
            "dim_lo_some": self.state.dim_lo,
            "dim_hi_all": self.state.dim_hi,
        }
        if self.expected is not None:
            data["expected"] = "yes" if self.expected else "unknown"
            data["passed"] = self.passed
        if self.state.blockers:
            data["blockers"] = [b.to_dict() for b in self.state.blockers]
        if self.literature:
            data["literature"] = self.literature
        return data


@dataclass
class Report:
    target: str
    description: str
    context: str
    claims: List[Claim]
    survey: bool = False

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def render(self) -> str:
        lines = [f"{self.target}: {self.description}", f"context: {self.context}", ""]
        for claim in self.claims:
            status = claim.state.status
            if claim.state.condition is not None:
                status += f" ({claim.state.condition.render()})"
            mark = "" if self.survey else ("PASS  " if claim.passed else "FAIL  ")
            lines.append(f"{mark}{claim.key}: {status}")
            if self.survey:
                for blocker in claim.state.blockers:
                    lines.extend(f"    {line}" for line in blocker.render().splitlines())
                for entry in claim.literature:
                    lines.append(f"    literature: {entry}")
        if not self.survey:
            passed = sum(1 for claim in self.claims if claim.passed)
            lines.append("")
            lines.append(f"{passed}/{len(self.claims)} claims hold")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        data = {
            "target": self.target,
            "description": self.description,
            "context": self.context,
            "claims": [claim.to_dict() for claim in self.claims],
        }
        if not self.survey:
            data["passed"] = self.passed
        return data


def _prank_ge_g_minus_4(table: FactTable, axioms: Sequence[Axiom]) -> List[Claim]:
    return [
        Claim(key, state)
        for key, state in table.items()
        if key.g >= 4 and key.xi.p_rank >= key.g - 4
    ]


def _genus4_complete(table: FactTable, axioms: Sequence[Axiom]) -> List[Claim]:
    return [Claim(key, table.query(key)) for key in table.genus_keys(4)]


def _genus5_positive_prank(table: FactTable, axioms: Sequence[Axiom]) -> List[Claim]:
    return [Claim(key, table.query(key)) for key in table.genus_keys(5) if key.xi.p_rank > 0]


def _literature(xi: NewtonPolygon, axioms: Iterable[Axiom]) -> List[str]:
    entries = []
    for axiom in axioms:
        if axiom.claims_occurrence() and xi in axiom.polygons_at(xi.genus):
            entries.append(
                f"{axiom.id} occurs for {axiom.prime_condition.render()} ({axiom.citation})"
            )
    return entries


def _genus5_prank0_survey(table: FactTable, axioms: Sequence[Axiom]) -> List[Claim]:
    return [
        Claim(key, table.query(key), expected=None, literature=_literature(key.xi, axioms))
        for key in table.genus_keys(5)
        if key.xi.p_rank == 0
    ]


@dataclass(frozen=True)
class ReportTarget:
    description: str
    min_gmax: int
    default_gmax: int
    build: Callable[[FactTable, Sequence[Axiom]], List[Claim]]
    survey: bool = False


TARGETS: Dict[str, ReportTarget] = {
    "prank-ge-g-minus-4": ReportTarget(
        "every polygon with p-rank f >= g-4 occurs, 4 <= g <= gmax", 4, 10, _prank_ge_g_minus_4
    ),
    "genus4-complete": ReportTarget(
        "every symmetric Newton polygon of genus 4 occurs", 4, 4, _genus4_complete
    ),
    "genus5-positive-prank": ReportTarget(
        "every genus-5 polygon with positive p-rank occurs", 5, 5, _genus5_positive_prank
    ),
    "genus5-prank0-survey": ReportTarget(
        "status of the genus-5 p-rank 0 polygons", 5, 5, _genus5_prank0_survey, survey=True
    ),
}


def build_report(
    target: str,
    gmax: Optional[int] = None,
    query: Optional[PrimeQuery] = None,
    axioms: Optional[Sequence[Axiom]] = None,
    disabled_axioms: Sequence[str] = (),
    jobs: int = 1,
) -> Report:
    """Run the closure a target needs and collect its claims."""
    entry = TARGETS[target]
    gmax = entry.default_gmax if gmax is None else gmax
    if gmax < entry.min_gmax:
        raise OutOfRangeError(f"report {target} needs --gmax >= {entry.min_gmax}, got {gmax}")
    axioms = list(axioms) if axioms is not None else builtin_axioms()
    table = closure(gmax, query, axioms, disabled_axioms, jobs=jobs)
    claims = entry.build(table, axioms)
    report = Report(target, entry.description, table.context_text(), claims, entry.survey)
    logger.info(
        "Report %s: %d claims, %s", target, len(claims), "pass" if report.passed else "fail"
    )
    return report
