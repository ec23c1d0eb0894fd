"""Per-stratum knowledge and the table the closure produces."""

from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from ..core import NewtonPolygon, dim_ag_stratum, ordinary, prank_stratum_dim
from ..errors import InconsistentFactError, KeyOutOfUniverseError
from ..knowledge import Condition, PrimeQuery
from .trace import Blocker, FactKey, ProofTrace

STATUS_YES = "yes"
STATUS_UNKNOWN = "unknown"


@dataclass(frozen=True)
class FactState:
    """
    What is known about M_g[ξ].

    `condition` is None while occurrence is unknown. `dim_lo` bounds some
    component from below (meaningful once it occurs); `dim_hi` bounds every
    component from above, assuming the stratum is nonempty.
    """

    condition: Optional[Condition] = None
    dim_lo: Optional[int] = None
    dim_hi: Optional[int] = None
    empty_ct: bool = False
    provenance: Tuple[ProofTrace, ...] = ()
    blockers: Tuple[Blocker, ...] = ()

    @property
    def occurs(self) -> bool:
        return self.condition is not None

    @property
    def status(self) -> str:
        return STATUS_YES if self.occurs else STATUS_UNKNOWN

    def values(self) -> Tuple:
        return (self.condition, self.dim_lo, self.dim_hi, self.empty_ct)

    def summary(self) -> str:
        if self.occurs:
            parts = [f"occurs ({self.condition.render()})"]
        else:
            parts = ["unknown"]
        if self.dim_lo is not None:
            parts.append(f"some component has dim >= {self.dim_lo}")
        if self.dim_hi is not None:
            parts.append(f"every component has dim <= {self.dim_hi}")
        if self.empty_ct:
            parts.append("compact-type locus empty")
        return ", ".join(parts)


@dataclass(frozen=True)
class FactUpdate:
    """A rule's proposed refinement of one fact."""

    key: FactKey
    trace: ProofTrace
    condition: Optional[Condition] = None
    dim_lo: Optional[int] = None
    dim_hi: Optional[int] = None
    empty_ct: bool = False


def _max(a: Optional[int], b: Optional[int]) -> Optional[int]:
    return b if a is None else a if b is None else max(a, b)


def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    return b if a is None else a if b is None else min(a, b)


def merge(state: FactState, update: FactUpdate) -> FactState:
    """Join: conditions widen by union, dim_lo rises, dim_hi falls. Provenance is untouched."""
    condition = state.condition
    if update.condition is not None and not update.condition.is_never:
        condition = update.condition if condition is None else condition.union(update.condition)
    return replace(
        state,
        condition=condition,
        dim_lo=_max(state.dim_lo, update.dim_lo),
        dim_hi=_min(state.dim_hi, update.dim_hi),
        empty_ct=state.empty_ct or update.empty_ct,
    )


def apply_updates(
    key: FactKey, state: FactState, updates: Sequence[FactUpdate]
) -> FactState:
    """
    Merge one round of updates into `state`. A trace is kept only when its
    update alone changes `state`; the result does not depend on update order.
    """
    merged = state
    traces = []
    for update in updates:
        if merge(state, update).values() != state.values():
            traces.append(update.trace)
        merged = merge(merged, update)
    fresh = sorted(
        {t for t in traces if t not in state.provenance}, key=lambda t: t.sort_key()
    )
    merged = replace(merged, provenance=state.provenance + tuple(fresh))
    if merged.dim_lo is not None and merged.dim_hi is not None and merged.dim_lo > merged.dim_hi:
        raise InconsistentFactError(
            f"{key}: lower bound {merged.dim_lo} exceeds upper bound {merged.dim_hi}"
        )
    return merged


def initial_state(key: FactKey) -> FactState:
    """
    Unknown occurrence; dim_hi is the smaller of the p-rank stratum dimension
    and the dimension of the matching stratum of A_g (Torelli is injective on
    points). Elliptic curves: 1 for ord, 0 for ss.
    """
    if key.g == 1:
        return FactState(dim_hi=1 if key.xi == ordinary(1) else 0)
    bound = min(prank_stratum_dim(key.g, key.xi.p_rank), dim_ag_stratum(key.xi))
    return FactState(dim_hi=bound)


class FactTable:
    """Closure result for every (g, ξ) with g <= gmax, in canonical key order."""

    def __init__(
        self,
        gmax: int,
        context: PrimeQuery,
        facts: Mapping[FactKey, FactState],
        disabled_axioms: Sequence[str] = (),
        rounds: int = 0,
    ):
        self.gmax = gmax
        self.context = context
        self.facts: Dict[FactKey, FactState] = {key: facts[key] for key in sorted(facts)}
        self.disabled_axioms = tuple(sorted(disabled_axioms))
        self.rounds = rounds

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self) -> Iterator[FactKey]:
        return iter(self.facts)

    def items(self):
        return self.facts.items()

    def key_for(self, xi: Union[FactKey, NewtonPolygon], g: Optional[int] = None) -> FactKey:
        key = xi if isinstance(xi, FactKey) else FactKey(g if g is not None else xi.genus, xi)
        if key not in self.facts:
            raise KeyOutOfUniverseError(f"{key} is outside this table (gmax={self.gmax})")
        return key

    def query(self, xi: Union[FactKey, NewtonPolygon], g: Optional[int] = None) -> FactState:
        """State of a stratum; KeyOutOfUniverseError when it was not part of the closure."""
        return self.facts[self.key_for(xi, g)]

    def occurs(self, xi: Union[FactKey, NewtonPolygon]) -> bool:
        return self.query(xi).occurs

    def genus_keys(self, g: int) -> List[FactKey]:
        return [key for key in self.facts if key.g == g]

    def context_text(self) -> str:
        return self.context.render()

    def render_trace(self, xi: Union[FactKey, NewtonPolygon]) -> str:
        """
        Human-readable proof tree. Facts a step relies on are expanded in
        place the first time they appear, so every branch ends in an axiom or
        in arithmetic.
        """
        lines: List[str] = []
        self._render_fact(self.key_for(xi), 0, set(), lines, "")
        return "\n".join(lines)

    def _render_fact(
        self, key: FactKey, depth: int, seen: Set[FactKey], lines: List[str], prefix: str
    ) -> None:
        pad = "  " * depth
        if key in seen:
            lines.append(f"{pad}{prefix}{key} (see above)")
            return
        seen.add(key)
        state = self.facts[key]
        lines.append(f"{pad}{prefix}{key}: {state.summary()}")
        for trace in state.provenance:
            self._render_step(trace, depth + 1, seen, lines)
        for blocker in state.blockers:
            lines.extend(f"{pad}  {line}" for line in blocker.render().splitlines())

    def _render_step(
        self, trace: ProofTrace, depth: int, seen: Set[FactKey], lines: List[str]
    ) -> None:
        pad = "  " * depth
        lines.append(f"{pad}[{trace.rule}] {trace.conclusion}")
        for axiom_id, citation in zip(trace.axiom_ids, trace.citations):
            lines.append(f"{pad}  axiom {axiom_id}: {citation}")
        for name, value in trace.numbers:
            lines.append(f"{pad}  {name} = {value}")
        if trace.witnesses:
            sides = ", ".join(str(p) for p in trace.witnesses)
            lines.append(f"{pad}  (a) both sides nonempty: {sides}")
        for check in trace.checks:
            lines.append(f"{pad}  (b) {check.render()}")
        for child in trace.children:
            self._render_step(child, depth + 1, seen, lines)
        for ref in trace.refs:
            if ref in self.facts:
                self._render_fact(ref, depth + 1, seen, lines, "uses ")
