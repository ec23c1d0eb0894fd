"""Oracle equivalences and arithmetic identities run by `npstrata selfcheck`."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

from ..config import SELFCHECK_ENUM_GENUS, SELFCHECK_IDENTITY_GENUS, SELFCHECK_PARTITION_GENUS
from ..core import (
    codim_ag,
    enumerate_polygons,
    format_polygon,
    nu,
    pad_ordinary,
    parse_polygon,
    partitions,
    supersingular,
    supersingular_dim_identity,
)
from .brute import brute_codim, brute_enumerate, brute_partitions

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelfCheckReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results
            ],
        }


def _check_enumeration() -> Tuple[bool, str]:
    counts = []
    for g in range(1, SELFCHECK_ENUM_GENUS + 1):
        main = list(enumerate_polygons(g))
        if main != brute_enumerate(g):
            return False, f"enumeration differs at g={g}"
        counts.append(len(main))
    return True, "counts " + ", ".join(str(c) for c in counts)


def _check_codimension() -> Tuple[bool, str]:
    total = 0
    for g in range(1, SELFCHECK_ENUM_GENUS + 1):
        for xi in enumerate_polygons(g):
            if codim_ag(xi) != brute_codim(xi):
                return False, f"codim({xi}) = {codim_ag(xi)}, lattice scan gives {brute_codim(xi)}"
            total += 1
    return True, f"{total} polygons"


def _check_partitions() -> Tuple[bool, str]:
    total = 0
    for g in range(1, SELFCHECK_PARTITION_GENUS + 1):
        for xi in enumerate_polygons(g):
            if set(partitions(xi)) != brute_partitions(xi):
                return False, f"partitions of {xi} differ"
            total += 1
    return True, f"{total} polygons"


def _check_round_trip() -> Tuple[bool, str]:
    for g in range(1, SELFCHECK_ENUM_GENUS + 1):
        for xi in enumerate_polygons(g):
            if parse_polygon(format_polygon(xi)) != xi:
                return False, f"{format_polygon(xi)} does not parse back"
    return True, ""


def _check_supersingular_identity() -> Tuple[bool, str]:
    bad = [g for g in range(1, SELFCHECK_IDENTITY_GENUS + 1) if not supersingular_dim_identity(g)]
    return (not bad, f"fails for g in {bad}" if bad else f"g = 1..{SELFCHECK_IDENTITY_GENUS}")


def _check_codimension_anchors() -> Tuple[bool, str]:
    expected = [(supersingular(4), 6)]
    for d in range(3, 9):
        expected.append((nu(d), d))
        expected.append((nu(d) + supersingular(1), d + 2))
    for g in range(4, 11):
        expected.append((pad_ordinary(supersingular(3), g - 3), 4))
        expected.append((pad_ordinary(nu(3) + supersingular(1), g - 4), 5))
        expected.append((pad_ordinary(supersingular(4), g - 4), 6))
    for xi, value in expected:
        if codim_ag(xi) != value:
            return False, f"codim({xi}) = {codim_ag(xi)}, expected {value}"
    return True, f"{len(expected)} values"


CHECKS: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
    ("enumerate matches lattice path search", _check_enumeration),
    ("codim matches lattice point scan", _check_codimension),
    ("partitions match subset search", _check_partitions),
    ("format/parse round trip", _check_round_trip),
    ("supersingular locus has dimension floor(g^2/4)", _check_supersingular_identity),
    ("codimension anchors", _check_codimension_anchors),
]


def run_selfcheck() -> SelfCheckReport:
    report = SelfCheckReport()
    for name, check in CHECKS:
        passed, detail = check()
        logger.info("selfcheck %s: %s %s", name, "ok" if passed else "FAILED", detail)
        report.results.append(CheckResult(name, passed, detail))
    return report
