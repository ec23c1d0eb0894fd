"""JSON axiom file format: pydantic models plus load/save helpers."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from ..config import AXIOM_FILE_VERSION
from ..core import format_polygon, parse_polygon
from ..errors import AxiomParseError, AxiomValidationError, NpStrataError
from .axioms import Axiom, AxiomKind, validate_axioms
from .conditions import condition_from_dict, condition_to_dict

logger = logging.getLogger(__name__)


class PrimeConditionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["all", "congruence", "almost-all"]
    modulus: Optional[int] = None
    residues: Optional[List[int]] = None
    primes: Optional[List[int]] = None
    caveat: Optional[str] = None


class AxiomModel(BaseModel):
    """One axiom entry; exactly one of `polygon` and `polygons` is given."""

    model_config = ConfigDict(extra="forbid")

    id: str
    kind: AxiomKind
    g: int
    polygon: Optional[str] = None
    polygons: Optional[List[str]] = None
    f: Optional[int] = None
    pad_ord: bool = False
    prime_condition: PrimeConditionModel
    dim_lo: Optional[int] = None
    dim_hi: Optional[int] = None
    dims: Optional[List[int]] = None
    redundant: bool = False
    citation: str

    @model_validator(mode="after")
    def _one_polygon_field(self) -> "AxiomModel":
        if (self.polygon is None) == (self.polygons is None):
            raise ValueError("give exactly one of 'polygon' and 'polygons'")
        return self

    def to_axiom(self) -> Axiom:
        """Build the domain object; polygon and condition errors propagate."""
        texts = [self.polygon] if self.polygon is not None else list(self.polygons or [])
        return Axiom(
            id=self.id,
            kind=self.kind,
            g=self.g,
            polygons=tuple(parse_polygon(text) for text in texts),
            prime_condition=condition_from_dict(self.prime_condition.model_dump(exclude_none=True)),
            citation=self.citation,
            f=self.f,
            dim_lo=self.dim_lo,
            dim_hi=self.dim_hi,
            dims=tuple(self.dims) if self.dims is not None else None,
            pad_ord=self.pad_ord,
            redundant=self.redundant,
        )

    @classmethod
    def from_axiom(cls, axiom: Axiom) -> "AxiomModel":
        texts = [format_polygon(xi) for xi in axiom.polygons]
        return cls(
            id=axiom.id,
            kind=axiom.kind,
            g=axiom.g,
            polygon=texts[0] if len(texts) == 1 else None,
            polygons=texts if len(texts) != 1 else None,
            f=axiom.f,
            pad_ord=axiom.pad_ord,
            prime_condition=PrimeConditionModel(**condition_to_dict(axiom.prime_condition)),
            dim_lo=axiom.dim_lo,
            dim_hi=axiom.dim_hi,
            dims=list(axiom.dims) if axiom.dims is not None else None,
            redundant=axiom.redundant,
            citation=axiom.citation,
        )


class AxiomDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: int
    axioms: List[AxiomModel]

    @field_validator("version")
    @classmethod
    def _supported_version(cls, value: int) -> int:
        if value != AXIOM_FILE_VERSION:
            raise ValueError(f"unsupported axiom file version {value}")
        return value


def _parse_error(exc: ValidationError, source: str) -> AxiomParseError:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return AxiomParseError(first["msg"], f"{source}:{location}" if location else source)


def loads_axioms(text: str, source: str = "<string>") -> List[Axiom]:
    """
    Parse an axiom document.

    Args:
        text: JSON text in the axiom file format
        source: Name used in error locations

    Returns:
        The axioms in file order

    Raises:
        AxiomParseError: Invalid JSON, unknown kinds or fields, wrong version
        AxiomValidationError: Well-formed entries that fail semantic checks
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AxiomParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from exc
    try:
        document = AxiomDocument.model_validate(data)
    except ValidationError as exc:
        raise _parse_error(exc, source) from exc

    axioms = []
    issues = []
    for model in document.axioms:
        try:
            axioms.append(model.to_axiom())
        except NpStrataError as exc:
            issues.append(f"axiom {model.id!r}: {exc}")
    issues.extend(validate_axioms(axioms))
    if issues:
        raise AxiomValidationError(issues)
    logger.info("Loaded %d axioms from %s", len(axioms), source)
    return axioms


def load_axioms(path: Union[str, Path]) -> List[Axiom]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise AxiomParseError(f"cannot read axiom file: {exc.strerror}", str(path)) from exc
    return loads_axioms(text, source=str(path))


def axioms_document(axioms: Sequence[Axiom]) -> Dict[str, Any]:
    document = AxiomDocument(
        version=AXIOM_FILE_VERSION, axioms=[AxiomModel.from_axiom(a) for a in axioms]
    )
    return document.model_dump(mode="json", exclude_none=True, exclude_defaults=True)


def dump_axioms(axioms: Sequence[Axiom]) -> str:
    return json.dumps(axioms_document(axioms), indent=2, ensure_ascii=False) + "\n"


def save_axioms(axioms: Sequence[Axiom], path: Union[str, Path]) -> Path:
    """Write axioms in the documented JSON format and return the path written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_axioms(axioms), encoding="utf-8")
    logger.info("Saved %d axioms to %s", len(axioms), path)
    return path
