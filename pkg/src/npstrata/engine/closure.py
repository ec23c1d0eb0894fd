"""Round-based fixpoint over every stratum up to a maximum genus."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, Iterable, List, Optional, Sequence, Union

from ..core import enumerate_polygons
from ..errors import AxiomValidationError, OutOfRangeError
from ..knowledge import Axiom, PrimeQuery, as_query, builtin_axioms, condition_holds
from .facts import FactState, FactTable, FactUpdate, apply_updates, initial_state
from .rules import DEFAULT_RULE_ORDER, RULES, RuleContext, blockers_for
from .trace import FactKey

logger = logging.getLogger(__name__)

MAX_ROUNDS = 1000


class DeductionEngine:
    """
    Derives occurrence and dimension facts from an axiom base.

    Args:
        axioms: Axiom base; the builtin base when None
        query: All-primes query or a concrete prime (an int is accepted)
        disabled_axioms: Axiom ids to leave out
        rule_order: Names from RULES in evaluation order
        jobs: Worker threads per round
    """

    def __init__(
        self,
        axioms: Optional[Sequence[Axiom]] = None,
        query: Union[PrimeQuery, int, None] = None,
        disabled_axioms: Iterable[str] = (),
        rule_order: Optional[Sequence[str]] = None,
        jobs: int = 1,
    ):
        self.axioms = list(axioms) if axioms is not None else builtin_axioms()
        self.query = as_query(query)
        self.disabled_axioms = tuple(sorted(set(disabled_axioms)))
        unknown = set(self.disabled_axioms) - {a.id for a in self.axioms}
        if unknown:
            raise AxiomValidationError(
                [f"cannot disable unknown axiom {i!r}" for i in sorted(unknown)]
            )
        self.rule_order = tuple(rule_order) if rule_order is not None else DEFAULT_RULE_ORDER
        missing = [name for name in self.rule_order if name not in RULES]
        if missing:
            raise ValueError(f"unknown rules: {', '.join(missing)}")
        self.jobs = max(1, jobs)

    def active_axioms(self) -> List[Axiom]:
        """Enabled axioms whose prime condition holds in the query context."""
        active = []
        for axiom in self.axioms:
            if axiom.id in self.disabled_axioms:
                continue
            if not condition_holds(axiom.prime_condition, self.query):
                logger.debug("Axiom %s does not apply for %s", axiom.id, self.query.render())
                continue
            active.append(axiom)
        return active

    def _evaluate(self, key: FactKey, ctx: RuleContext) -> List[FactUpdate]:
        updates = []
        for name in self.rule_order:
            updates.extend(RULES[name](key, ctx))
        return updates

    def run(self, gmax: int) -> FactTable:
        """Iterate rounds until nothing changes, then attach blockers to unknown keys."""
        if gmax < 1:
            raise OutOfRangeError(f"gmax must be positive, got {gmax}")
        axioms = self.active_axioms()
        table: Dict[FactKey, FactState] = {
            FactKey(g, xi): initial_state(FactKey(g, xi))
            for g in range(1, gmax + 1)
            for xi in enumerate_polygons(g)
        }
        keys = sorted(table)

        rounds = 0
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            while True:
                rounds += 1
                if rounds > MAX_ROUNDS:
                    raise RuntimeError(f"closure did not converge in {MAX_ROUNDS} rounds")
                ctx = RuleContext(table, axioms)
                if self.jobs > 1:
                    results = list(pool.map(lambda k: self._evaluate(k, ctx), keys))
                else:
                    results = [self._evaluate(key, ctx) for key in keys]

                changed = []
                next_table = dict(table)
                for key, updates in zip(keys, results):
                    if not updates:
                        continue
                    state = apply_updates(key, table[key], updates)
                    if state != table[key]:
                        next_table[key] = state
                        changed.append(key)
                logger.debug("Round %d changed %d facts", rounds, len(changed))
                for key in changed:
                    logger.debug("  %s: %s", key, next_table[key].summary())
                if not changed:
                    break
                table = next_table

        final_ctx = RuleContext(table, axioms)
        for key in keys:
            if not table[key].occurs:
                table[key] = replace(table[key], blockers=blockers_for(key, final_ctx))

        result = FactTable(gmax, self.query, table, self.disabled_axioms, rounds)
        logger.info(
            "Closure gmax=%d for %s: %d rounds, %d of %d strata occur",
            gmax,
            self.query.render(),
            rounds,
            sum(1 for state in table.values() if state.occurs),
            len(table),
        )
        return result


def closure(
    gmax: int,
    query: Union[PrimeQuery, int, None] = None,
    axioms: Optional[Sequence[Axiom]] = None,
    disabled_axioms: Iterable[str] = (),
    rule_order: Optional[Sequence[str]] = None,
    jobs: int = 1,
) -> FactTable:
    """Least fixpoint of the rules over all (g, ξ) with g <= gmax."""
    engine = DeductionEngine(axioms, query, disabled_axioms, rule_order, jobs)
    return engine.run(gmax)
