"""Exception hierarchy for npstrata."""

from typing import Any, Dict, List, Optional


class NpStrataError(Exception):
    """Base class for every error raised by the library."""

    code = "npstrata-error"

    def to_dict(self) -> Dict[str, Any]:
        """Structured form used by the CLI's --json output."""
        return {"error": self.code, "message": str(self)}


class PolygonError(NpStrataError):
    code = "polygon-error"


class NonCoprimeError(PolygonError):
    code = "non-coprime"


class NotSymmetricError(PolygonError):
    code = "not-symmetric"


class EmptyPolygonError(PolygonError):
    code = "empty"


class NuTooSmallError(PolygonError):
    code = "nu-too-small"


class GenusMismatchError(PolygonError):
    code = "genus-mismatch"


class PolygonSyntaxError(PolygonError):
    """Malformed polygon expression; `offset` is the byte offset of the problem."""

    code = "syntax-error"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["offset"] = self.offset
        return data


class StrataError(NpStrataError):
    code = "strata-error"


class OutOfRangeError(StrataError):
    code = "out-of-range"


class ConditionError(NpStrataError):
    code = "condition-error"


class NotPrimeError(ConditionError):
    code = "not-prime"


class AxiomError(NpStrataError):
    code = "axiom-error"


class AxiomParseError(AxiomError):
    """The axiom document is not valid JSON or does not fit the schema."""

    code = "axiom-parse-error"

    def __init__(self, message: str, location: Optional[str] = None):
        text = f"{location}: {message}" if location else message
        super().__init__(text)
        self.location = location

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["location"] = self.location
        return data


class AxiomValidationError(AxiomError):
    """One or more axioms are well-formed but semantically invalid."""

    code = "axiom-validation-error"

    def __init__(self, issues: List[str]):
        super().__init__("; ".join(issues))
        self.issues = list(issues)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["issues"] = self.issues
        return data


class EngineError(NpStrataError):
    code = "engine-error"


class KeyOutOfUniverseError(EngineError):
    code = "key-out-of-universe"


class InconsistentFactError(EngineError):
    code = "inconsistent-fact"


class FactTableFormatError(EngineError):
    code = "facttable-format-error"


class BudgetExceededError(NpStrataError):
    code = "budget-exceeded"
