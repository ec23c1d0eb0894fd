"""Fixpoint deduction of occurrence and dimension facts, with proof traces."""

from .closure import DeductionEngine, closure
from .export import (
    fact_to_dict,
    facttable_from_json,
    facttable_to_dict,
    facttable_to_json,
    load_facttable,
    save_facttable,
)
from .facts import FactState, FactTable, FactUpdate, apply_updates, initial_state, merge
from .rules import (
    DEFAULT_RULE_ORDER,
    RULES,
    BoundaryEvaluation,
    RuleContext,
    blockers_for,
    evaluate_boundary,
    nu_plus_ss_degree,
    rule_axioms,
    rule_boundary_count,
    rule_nu_plus_ss,
    rule_purity,
    rule_small_codim,
)
from .trace import (
    BLOCKER_BOUNDARY_TOO_LARGE,
    BLOCKER_NO_NONEMPTY_PARTITION,
    BLOCKER_NO_PARTITION,
    Blocker,
    FactKey,
    PartitionCheck,
    ProofTrace,
)

__all__ = [
    "BLOCKER_BOUNDARY_TOO_LARGE",
    "BLOCKER_NO_NONEMPTY_PARTITION",
    "BLOCKER_NO_PARTITION",
    "Blocker",
    "BoundaryEvaluation",
    "DEFAULT_RULE_ORDER",
    "DeductionEngine",
    "FactKey",
    "FactState",
    "FactTable",
    "FactUpdate",
    "PartitionCheck",
    "ProofTrace",
    "RULES",
    "RuleContext",
    "apply_updates",
    "blockers_for",
    "closure",
    "evaluate_boundary",
    "fact_to_dict",
    "facttable_from_json",
    "facttable_to_dict",
    "facttable_to_json",
    "initial_state",
    "load_facttable",
    "merge",
    "nu_plus_ss_degree",
    "rule_axioms",
    "rule_boundary_count",
    "rule_nu_plus_ss",
    "rule_purity",
    "rule_small_codim",
    "save_facttable",
]
