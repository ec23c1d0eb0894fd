"""Proof objects: fact keys, partition checks, proof traces and blockers."""

import json
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Dict, Optional, Tuple

from ..core import NewtonPolygon, PolygonPartition, parse_polygon
from ..errors import FactTableFormatError, GenusMismatchError

RULE_AXIOM = "axiom"
RULE_SMALL_CODIM = "small-codim"
RULE_PURITY = "purity"
RULE_BOUNDARY_COUNT = "boundary-count"
RULE_NU_PLUS_SS = "nu-plus-ss"

RULE_RANK = {
    RULE_AXIOM: 0,
    RULE_SMALL_CODIM: 1,
    RULE_PURITY: 2,
    RULE_BOUNDARY_COUNT: 3,
    RULE_NU_PLUS_SS: 4,
}

BLOCKER_NO_PARTITION = "no-partition"
BLOCKER_NO_NONEMPTY_PARTITION = "no-nonempty-partition"
BLOCKER_BOUNDARY_TOO_LARGE = "boundary-too-large"

# which hypothesis of the boundary count each blocker kind breaks
BLOCKER_HYPOTHESIS = {
    BLOCKER_NO_PARTITION: "a",
    BLOCKER_NO_NONEMPTY_PARTITION: "a",
    BLOCKER_BOUNDARY_TOO_LARGE: "b",
}


@total_ordering
@dataclass(frozen=True)
class FactKey:
    """The stratum M_g[ξ]."""

    g: int
    xi: NewtonPolygon

    def __post_init__(self):
        if self.xi.genus != self.g:
            raise GenusMismatchError(f"{self.xi} has genus {self.xi.genus}, not {self.g}")

    @classmethod
    def of(cls, xi: NewtonPolygon) -> "FactKey":
        return cls(xi.genus, xi)

    def __lt__(self, other: "FactKey") -> bool:
        if not isinstance(other, FactKey):
            return NotImplemented
        return self.xi.sort_key() < other.xi.sort_key()

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, "polygon": str(self.xi)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FactKey":
        return cls(int(data["g"]), parse_polygon(data["polygon"]))

    def __str__(self) -> str:
        return f"g={self.g} {self.xi}"


def _partition_from(pair) -> PolygonPartition:
    return PolygonPartition.of(parse_polygon(pair[0]), parse_polygon(pair[1]))


@dataclass(frozen=True)
class PartitionCheck:
    """
    Hypothesis (b) for one partition: some side has empty compact-type locus,
    or the boundary dimension td_left + td_right is below e. A missing td
    means the boundary stratum is empty.
    """

    partition: PolygonPartition
    left_td: Optional[int]
    right_td: Optional[int]
    e: int
    left_empty: bool = False
    right_empty: bool = False

    @property
    def total(self) -> Optional[int]:
        if self.left_td is None or self.right_td is None:
            return None
        return self.left_td + self.right_td

    @property
    def holds(self) -> bool:
        if self.left_empty or self.right_empty:
            return True
        return self.total is None or self.total < self.e

    def sort_key(self):
        return (self.total if self.total is not None else -1, self.partition.sort_key())

    def render(self) -> str:
        if self.left_empty or self.right_empty:
            return f"{self.partition}: compact-type locus of a side is empty"
        if self.total is None:
            return f"{self.partition}: no boundary component"
        relation = "<" if self.holds else "≮"
        return f"{self.partition}: {self.left_td} + {self.right_td} {relation} {self.e}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "partition": [str(self.partition.left), str(self.partition.right)],
            "left_td": self.left_td,
            "right_td": self.right_td,
            "e": self.e,
            "left_empty": self.left_empty,
            "right_empty": self.right_empty,
            "holds": self.holds,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PartitionCheck":
        return cls(
            partition=_partition_from(data["partition"]),
            left_td=data.get("left_td"),
            right_td=data.get("right_td"),
            e=int(data["e"]),
            left_empty=bool(data.get("left_empty", False)),
            right_empty=bool(data.get("right_empty", False)),
        )


@dataclass(frozen=True)
class ProofTrace:
    """
    One rule application. `refs` are the facts it relied on; rendering
    expands them into their own traces.
    """

    rule: str
    conclusion: str
    axiom_ids: Tuple[str, ...] = ()
    citations: Tuple[str, ...] = ()
    numbers: Tuple[Tuple[str, int], ...] = ()
    witnesses: Tuple[PolygonPartition, ...] = ()
    checks: Tuple[PartitionCheck, ...] = ()
    refs: Tuple[FactKey, ...] = ()
    children: Tuple["ProofTrace", ...] = field(default=())

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"rule": self.rule, "conclusion": self.conclusion}
        if self.axiom_ids:
            data["axioms"] = [
                {"id": axiom_id, "citation": citation}
                for axiom_id, citation in zip(self.axiom_ids, self.citations)
            ]
        if self.numbers:
            data["numbers"] = dict(self.numbers)
        if self.witnesses:
            data["nonempty_partitions"] = [
                [str(p.left), str(p.right)] for p in self.witnesses
            ]
        if self.checks:
            data["checks"] = [check.to_dict() for check in self.checks]
        if self.refs:
            data["uses"] = [ref.to_dict() for ref in self.refs]
        if self.children:
            data["children"] = [child.to_dict() for child in self.children]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ProofTrace":
        axioms = data.get("axioms", [])
        return cls(
            rule=data["rule"],
            conclusion=data["conclusion"],
            axiom_ids=tuple(a["id"] for a in axioms),
            citations=tuple(a["citation"] for a in axioms),
            numbers=tuple((k, int(v)) for k, v in data.get("numbers", {}).items()),
            witnesses=tuple(_partition_from(p) for p in data.get("nonempty_partitions", [])),
            checks=tuple(PartitionCheck.from_dict(c) for c in data.get("checks", [])),
            refs=tuple(FactKey.from_dict(r) for r in data.get("uses", [])),
            children=tuple(cls.from_dict(c) for c in data.get("children", [])),
        )

    def sort_key(self) -> Tuple[int, str]:
        rank = RULE_RANK.get(self.rule, len(RULE_RANK))
        return (rank, json.dumps(self.to_dict(), sort_keys=True))


@dataclass(frozen=True)
class Blocker:
    """Why the boundary dimension count does not fire; for checks, the first is the witness."""

    kind: str
    message: str
    checks: Tuple[PartitionCheck, ...] = ()

    @property
    def witness(self) -> Optional[PartitionCheck]:
        return self.checks[0] if self.checks else None

    @property
    def hypothesis(self) -> str:
        return BLOCKER_HYPOTHESIS[self.kind]

    def render(self) -> str:
        lines = [f"hypothesis ({self.hypothesis}): {self.message} [{self.kind}]"]
        lines.extend(f"  {check.render()}" for check in self.checks)
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind,
            "hypothesis": self.hypothesis,
            "message": self.message,
        }
        if self.checks:
            data["checks"] = [check.to_dict() for check in self.checks]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Blocker":
        if data["kind"] not in BLOCKER_HYPOTHESIS:
            raise FactTableFormatError(f"unknown blocker kind {data['kind']!r}")
        return cls(
            kind=data["kind"],
            message=data["message"],
            checks=tuple(PartitionCheck.from_dict(c) for c in data.get("checks", [])),
        )
