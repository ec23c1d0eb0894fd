"""
Deduction rules.

Each rule maps a key and a read-only `RuleContext` (the previous round's
table) to a list of `FactUpdate`s. Rules never mutate the table, so a round
can evaluate them in any order or in parallel.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ..core import (
    NewtonPolygon,
    PolygonPartition,
    codim_ag,
    e_dim,
    nu,
    pad_ordinary,
    partitions,
    prank_stratum_dim,
    supersingular,
)
from ..knowledge import Axiom, AxiomKind, Condition
from .facts import FactState, FactUpdate
from .trace import (
    BLOCKER_BOUNDARY_TOO_LARGE,
    BLOCKER_NO_NONEMPTY_PARTITION,
    BLOCKER_NO_PARTITION,
    RULE_AXIOM,
    RULE_BOUNDARY_COUNT,
    RULE_NU_PLUS_SS,
    RULE_PURITY,
    RULE_SMALL_CODIM,
    Blocker,
    FactKey,
    PartitionCheck,
    ProofTrace,
)

logger = logging.getLogger(__name__)

SS = supersingular(1)


class RuleContext:
    """
    Read-only view of one round's table.

    `nonempty_ct` and `td_max` recurse through partitions into smaller genera,
    so both are tabulated once per round in ascending key order.
    """

    def __init__(self, table: Mapping[FactKey, FactState], axioms: Sequence[Axiom]):
        self.table = table
        self.axioms = tuple(axioms)
        self._nonempty: Dict[FactKey, Optional[Condition]] = {}
        self._td: Dict[FactKey, Optional[int]] = {}
        for key in sorted(table):
            self._nonempty[key] = self._compute_nonempty(key)
            self._td[key] = self._compute_td(key)

    def state(self, key: FactKey) -> FactState:
        return self.table[key]

    def nonempty_ct(self, key: FactKey) -> Optional[Condition]:
        """
        Condition under which the compact-type locus M^ct_g[ξ] is known to be
        nonempty: ξ occurs, or a chain of occurring pieces glues to ξ.
        None when nothing is known.
        """
        return self._nonempty[key]

    def td_max(self, key: FactKey) -> Optional[int]:
        """
        Upper bound on the dimension of the compact-type locus with polygon ξ:
        the smooth part's dim_hi plus, recursively, every boundary stratum
        td(ξ1) + td(ξ2). None stands for an empty locus.
        """
        return self._td[key]

    def _parts(self, partition: PolygonPartition) -> Tuple[FactKey, FactKey]:
        return FactKey.of(partition.left), FactKey.of(partition.right)

    def _compute_nonempty(self, key: FactKey) -> Optional[Condition]:
        condition = self.table[key].condition
        for partition in partitions(key.xi):
            left, right = self._parts(partition)
            a, b = self._nonempty[left], self._nonempty[right]
            if a is None or b is None:
                continue
            glued = a.conj(b)
            if glued.is_never:
                continue
            condition = glued if condition is None else condition.union(glued)
        return condition

    def _compute_td(self, key: FactKey) -> Optional[int]:
        state = self.table[key]
        candidates = [] if state.empty_ct else [state.dim_hi]
        for partition in partitions(key.xi):
            left, right = self._parts(partition)
            a, b = self._td[left], self._td[right]
            if a is not None and b is not None:
                candidates.append(a + b)
        candidates = [c for c in candidates if c is not None]
        return max(candidates) if candidates else None


@dataclass(frozen=True)
class BoundaryEvaluation:
    """Both hypotheses of the boundary dimension count for one key."""

    key: FactKey
    e: int
    nonempty: Tuple[Tuple[PolygonPartition, Condition], ...]
    checks: Tuple[PartitionCheck, ...]

    @property
    def fires(self) -> bool:
        return bool(self.nonempty) and all(check.holds for check in self.checks)

    @property
    def condition(self) -> Condition:
        result = Condition.never()
        for _, condition in self.nonempty:
            result = result.union(condition)
        return result

    def failing(self) -> List[PartitionCheck]:
        return sorted((c for c in self.checks if not c.holds), key=lambda c: c.sort_key())

    def refs(self) -> Tuple[FactKey, ...]:
        keys = set()
        for partition, _ in self.nonempty:
            keys.update({FactKey.of(partition.left), FactKey.of(partition.right)})
        return tuple(sorted(keys))

    def trace(self) -> ProofTrace:
        condition = self.condition
        return ProofTrace(
            rule=RULE_BOUNDARY_COUNT,
            conclusion=f"occurs ({condition.render()}), some component has dim >= {self.e}",
            numbers=(("codim", codim_ag(self.key.xi)), ("e", self.e)),
            witnesses=tuple(p for p, _ in self.nonempty),
            checks=self.checks,
            refs=self.refs(),
        )


def evaluate_boundary(key: FactKey, ctx: RuleContext) -> Optional[BoundaryEvaluation]:
    """
    Hypothesis (a): some partition has both sides nonempty in compact type.
    Hypothesis (b): for every partition a side is empty in compact type, or
    td(ξ1) + td(ξ2) < e(ξ). None when ξ is indecomposable.
    """
    splits = sorted(partitions(key.xi))
    if not splits:
        return None
    e = e_dim(key.xi)
    nonempty = []
    checks = []
    for partition in splits:
        left, right = FactKey.of(partition.left), FactKey.of(partition.right)
        a, b = ctx.nonempty_ct(left), ctx.nonempty_ct(right)
        if a is not None and b is not None:
            glued = a.conj(b)
            if not glued.is_never:
                nonempty.append((partition, glued))
        checks.append(
            PartitionCheck(
                partition=partition,
                left_td=ctx.td_max(left),
                right_td=ctx.td_max(right),
                e=e,
                left_empty=ctx.state(left).empty_ct,
                right_empty=ctx.state(right).empty_ct,
            )
        )
    return BoundaryEvaluation(key, e, tuple(nonempty), tuple(checks))


def _axiom_trace(axiom: Axiom, conclusion: str) -> ProofTrace:
    return ProofTrace(
        rule=RULE_AXIOM,
        conclusion=conclusion,
        axiom_ids=(axiom.id,),
        citations=(axiom.citation,),
    )


def rule_axioms(key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
    """Inject the facts the active axioms state about this key."""
    updates = []
    for axiom in ctx.axioms:
        for index, xi in enumerate(axiom.polygons_at(key.g)):
            if xi != key.xi:
                continue
            condition = Condition.of(axiom.prime_condition) if axiom.claims_occurrence() else None
            lo, hi = axiom.dim_bounds(key.g, index)
            if condition is None and lo is None and hi is None:
                continue
            parts = [f"occurs ({condition.render()})"] if condition is not None else []
            if lo is not None and lo == hi:
                parts.append(f"every component has dim {lo}")
            else:
                if lo is not None:
                    parts.append(f"some component has dim >= {lo}")
                if hi is not None:
                    parts.append(f"every component has dim <= {hi}")
            updates.append(
                FactUpdate(
                    key=key,
                    trace=_axiom_trace(axiom, ", ".join(parts)),
                    condition=condition,
                    dim_lo=lo,
                    dim_hi=hi,
                )
            )
    return updates


def _covering_axioms(key: FactKey, ctx: RuleContext) -> List[Axiom]:
    """Generic-polygon and open-dense axioms that name ξ itself."""
    return [
        axiom
        for axiom in ctx.axioms
        if axiom.kind in (AxiomKind.GENERIC_NP, AxiomKind.OPEN_DENSE)
        and key.xi in axiom.polygons_at(key.g)
    ]


def rule_small_codim(key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
    """
    ξ occurs for every p with all components of dimension exactly 3g-3-c
    when its codimension c in A_g is at most 3, or c = 4 and ξ = ord^(g-4)+nu4.
    """
    g, xi = key.g, key.xi
    if g < 2:
        return []
    c = codim_ag(xi)
    if not (c <= 3 or (c == 4 and g >= 4 and xi == pad_ordinary(nu(4), g - 4))):
        return []
    dim = 3 * g - 3 - c
    covering = _covering_axioms(key, ctx)
    trace = ProofTrace(
        rule=RULE_SMALL_CODIM,
        conclusion=f"occurs (all primes), every component has dim {dim}",
        axiom_ids=tuple(a.id for a in covering),
        citations=tuple(a.citation for a in covering),
        numbers=(("codim", c), ("dim", dim)),
    )
    return [
        FactUpdate(key=key, trace=trace, condition=Condition.all_primes(), dim_lo=dim, dim_hi=dim)
    ]


def rule_purity(key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
    """
    When an axiom lists the possible generic polygons G of every component of
    the p-rank f locus and ξ is not in G, M_g[ξ] lies in a proper closed
    subset of each component: dim <= dim M_g^f - 1.
    """
    g, xi = key.g, key.xi
    if g < 2:
        return []
    updates = []
    for axiom in ctx.axioms:
        if axiom.kind != AxiomKind.GENERIC_NP or not axiom.covers(g):
            continue
        if axiom.f_at(g) != xi.p_rank or xi in axiom.polygons_at(g):
            continue
        ambient = prank_stratum_dim(g, xi.p_rank)
        generic = ", ".join(str(p) for p in axiom.polygons_at(g))
        updates.append(
            FactUpdate(
                key=key,
                trace=ProofTrace(
                    rule=RULE_PURITY,
                    conclusion=f"not generic in M_g^{xi.p_rank} (generic: {generic}), "
                    f"every component has dim <= {ambient - 1}",
                    axiom_ids=(axiom.id,),
                    citations=(axiom.citation,),
                    numbers=(("prank_stratum_dim", ambient), ("dim_hi", ambient - 1)),
                ),
                dim_hi=ambient - 1,
            )
        )
    return updates


def rule_boundary_count(key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
    """
    If both hypotheses hold, the generic points of a component of dimension
    at least e(ξ) in the compact-type locus cannot all lie on the boundary,
    so ξ occurs on M_g with a component of dimension >= e(ξ).
    """
    evaluation = evaluate_boundary(key, ctx)
    if evaluation is None or not evaluation.fires:
        return []
    return [
        FactUpdate(
            key=key,
            trace=evaluation.trace(),
            condition=evaluation.condition,
            dim_lo=evaluation.e,
        )
    ]


def nu_plus_ss_degree(xi: NewtonPolygon) -> Optional[int]:
    """d when ξ = nu_d + ss with d >= 3, else None."""
    d = xi.genus - 1
    if d < 3 or xi != nu(d) + SS:
        return None
    return d


def rule_nu_plus_ss(key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
    """
    nu_d + ss occurs wherever nu_d does, with a component of dimension 2d-2.
    Same conclusion as the boundary count, whose evaluation it reuses.
    """
    d = nu_plus_ss_degree(key.xi)
    if d is None:
        return []
    nu_key = FactKey(d, nu(d))
    if nu_key not in ctx.table or ctx.state(nu_key).condition is None:
        return []
    evaluation = evaluate_boundary(key, ctx)
    if evaluation is None or not evaluation.fires:
        return []
    condition = evaluation.condition
    trace = ProofTrace(
        rule=RULE_NU_PLUS_SS,
        conclusion=f"occurs ({condition.render()}), some component has dim >= {evaluation.e}",
        numbers=(("d", d), ("e", evaluation.e)),
        refs=(FactKey(1, SS), nu_key),
        children=(evaluation.trace(),),
    )
    return [FactUpdate(key=key, trace=trace, condition=condition, dim_lo=evaluation.e)]


Rule = Callable[[FactKey, RuleContext], List[FactUpdate]]

RULES: Dict[str, Rule] = {
    RULE_AXIOM: rule_axioms,
    RULE_SMALL_CODIM: rule_small_codim,
    RULE_PURITY: rule_purity,
    RULE_BOUNDARY_COUNT: rule_boundary_count,
    RULE_NU_PLUS_SS: rule_nu_plus_ss,
}

DEFAULT_RULE_ORDER: Tuple[str, ...] = tuple(RULES)


def blockers_for(key: FactKey, ctx: RuleContext) -> Tuple[Blocker, ...]:
    """Why the boundary count cannot establish an unknown key."""
    evaluation = evaluate_boundary(key, ctx)
    if evaluation is None:
        return (
            Blocker(
                BLOCKER_NO_PARTITION,
                f"no partition exists, {key.xi} is indecomposable as a symmetric Newton polygon",
            ),
        )
    blockers = []
    if not evaluation.nonempty:
        blockers.append(
            Blocker(
                BLOCKER_NO_NONEMPTY_PARTITION,
                "no partition has both sides known nonempty in compact type",
            )
        )
    failing = evaluation.failing()
    if failing:
        witness = failing[0]
        blockers.append(
            Blocker(
                BLOCKER_BOUNDARY_TOO_LARGE,
                f"boundary stratum {witness.partition} may have dimension "
                f"{witness.total} >= e = {evaluation.e}",
                tuple(failing),
            )
        )
    return tuple(blockers)
