"""Axiom base: prime conditions, citable facts and their JSON file format."""

from .axioms import Axiom, AxiomKind, validate_axioms
from .builtin import builtin_axioms
from .conditions import (
    AllPrimes,
    AllPrimesQuery,
    AlmostAll,
    ConcretePrime,
    Condition,
    Congruence,
    PrimeCondition,
    PrimeQuery,
    as_query,
    condition_from_dict,
    condition_holds,
    condition_to_dict,
    conjoin,
)
from .schema import axioms_document, dump_axioms, load_axioms, loads_axioms, save_axioms

__all__ = [
    "AllPrimes",
    "AllPrimesQuery",
    "AlmostAll",
    "Axiom",
    "AxiomKind",
    "ConcretePrime",
    "Condition",
    "Congruence",
    "PrimeCondition",
    "PrimeQuery",
    "as_query",
    "axioms_document",
    "builtin_axioms",
    "condition_from_dict",
    "condition_holds",
    "condition_to_dict",
    "conjoin",
    "dump_axioms",
    "load_axioms",
    "loads_axioms",
    "save_axioms",
    "validate_axioms",
]
