"""FactTable export and import in the documented JSON format."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from ..config import FACTTABLE_VERSION
from ..errors import FactTableFormatError, NpStrataError
from ..knowledge import AllPrimesQuery, ConcretePrime, Condition, PrimeQuery
from .facts import FactState, FactTable
from .trace import Blocker, FactKey, ProofTrace

logger = logging.getLogger(__name__)


class ContextModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["all-primes", "prime"]
    p: Optional[int] = None


class MetadataModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: int
    gmax: int
    context: ContextModel
    disabled_axioms: List[str]
    total_facts: int
    rounds: int = 0


class FactModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    g: int
    polygon: str
    factors: List[List[int]]
    status: Literal["yes", "unknown"]
    condition: Optional[List[Dict[str, Any]]]
    condition_text: Optional[str] = None
    dim_lo_some: Optional[int]
    dim_hi_all: Optional[int]
    empty_ct: bool = False
    trace: List[Dict[str, Any]] = []
    blockers: List[Dict[str, Any]] = []


class FactTableModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    metadata: MetadataModel
    facts: List[FactModel]


def fact_to_dict(key: FactKey, state: FactState) -> Dict[str, Any]:
    return {
        "g": key.g,
        "polygon": str(key.xi),
        "factors": key.xi.to_list(),
        "status": state.status,
        "condition": state.condition.to_list() if state.condition is not None else None,
        "condition_text": state.condition.render() if state.condition is not None else None,
        "dim_lo_some": state.dim_lo,
        "dim_hi_all": state.dim_hi,
        "empty_ct": state.empty_ct,
        "trace": [trace.to_dict() for trace in state.provenance],
        "blockers": [blocker.to_dict() for blocker in state.blockers],
    }


def facttable_to_dict(table: FactTable) -> Dict[str, Any]:
    """Metadata block plus facts in canonical key order; no timestamps."""
    return {
        "metadata": {
            "version": FACTTABLE_VERSION,
            "gmax": table.gmax,
            "context": table.context.to_dict(),
            "disabled_axioms": list(table.disabled_axioms),
            "total_facts": len(table),
            "rounds": table.rounds,
        },
        "facts": [fact_to_dict(key, state) for key, state in table.items()],
    }


def facttable_to_json(table: FactTable) -> str:
    return json.dumps(facttable_to_dict(table), indent=2, ensure_ascii=False) + "\n"


def save_facttable(table: FactTable, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(facttable_to_json(table), encoding="utf-8")
    logger.info("Wrote %d facts to %s", len(table), path)
    return path


def _context_from(model: ContextModel) -> PrimeQuery:
    if model.type == "all-primes":
        return AllPrimesQuery()
    if model.p is None:
        raise FactTableFormatError("prime context without p")
    return ConcretePrime(model.p)


def facttable_from_json(text: str) -> FactTable:
    """Rebuild a FactTable from `facttable_to_json` output."""
    try:
        document = FactTableModel.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise FactTableFormatError(f"{location}: {first['msg']}") from exc
    if document.metadata.version != FACTTABLE_VERSION:
        raise FactTableFormatError(f"unsupported FactTable version {document.metadata.version}")

    facts: Dict[FactKey, FactState] = {}
    try:
        for fact in document.facts:
            key = FactKey.from_dict({"g": fact.g, "polygon": fact.polygon})
            facts[key] = FactState(
                condition=(
                    Condition.from_list(fact.condition) if fact.condition is not None else None
                ),
                dim_lo=fact.dim_lo_some,
                dim_hi=fact.dim_hi_all,
                empty_ct=fact.empty_ct,
                provenance=tuple(ProofTrace.from_dict(t) for t in fact.trace),
                blockers=tuple(Blocker.from_dict(b) for b in fact.blockers),
            )
        context = _context_from(document.metadata.context)
    except (NpStrataError, KeyError, TypeError, ValueError) as exc:
        raise FactTableFormatError(f"invalid fact: {exc}") from exc

    if len(facts) != document.metadata.total_facts:
        raise FactTableFormatError(
            f"metadata says {document.metadata.total_facts} facts, found {len(facts)}"
        )
    return FactTable(
        document.metadata.gmax,
        context,
        facts,
        document.metadata.disabled_axioms,
        document.metadata.rounds,
    )


def load_facttable(path: Union[str, Path]) -> FactTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FactTableFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return facttable_from_json(text)
