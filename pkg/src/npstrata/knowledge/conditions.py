"""Conditions on the characteristic p under which a literature fact holds."""

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from sympy import divisors, isprime, primefactors
from sympy.ntheory.modular import solve_congruence

from ..errors import ConditionError, NotPrimeError


@dataclass(frozen=True)
class AllPrimes:
    """Holds in every prime characteristic."""

    def render(self) -> str:
        return "all primes"


@dataclass(frozen=True)
class Congruence:
    """
    p mod `modulus` lies in `residues` (units mod the modulus), or p is one of
    the listed small `primes` dividing the modulus.
    """

    modulus: int
    residues: FrozenSet[int]
    primes: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.modulus < 2:
            raise ConditionError(f"modulus must be at least 2, got {self.modulus}")
        residues = frozenset(r % self.modulus for r in self.residues)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "primes", frozenset(self.primes))
        for r in residues:
            if gcd(r, self.modulus) != 1:
                raise ConditionError(f"residue {r} is not a unit mod {self.modulus}")
        for p in self.primes:
            if not isprime(p) or self.modulus % p:
                raise ConditionError(f"{p} is not a prime dividing {self.modulus}")
        if not residues and not self.primes:
            raise ConditionError(f"empty residue set mod {self.modulus}")

    def holds_at(self, p: int) -> bool:
        return p % self.modulus in self.residues or p in self.primes

    def reduced(self) -> "Congruence":
        """Equivalent congruence with the smallest possible modulus."""
        for m in divisors(self.modulus):
            if m < 2:
                continue
            base = frozenset(r % m for r in self.residues)
            lifted = frozenset(
                x for x in range(self.modulus) if gcd(x, self.modulus) == 1 and x % m in base
            )
            if lifted != self.residues:
                continue
            # primes dividing the old modulus but not m become ordinary residues mod m
            if all(
                (p in self.primes) == (p % m in base)
                for p in primefactors(self.modulus)
                if m % p
            ):
                return Congruence(m, base, frozenset(p for p in self.primes if m % p == 0))
        return self

    def render(self) -> str:
        text = ""
        if self.residues:
            residues = ",".join(str(r) for r in sorted(self.residues))
            text = f"p ≡ {residues} mod {self.modulus}"
        if self.primes:
            extra = " or ".join(f"p = {p}" for p in sorted(self.primes))
            text = f"{text} or {extra}" if text else extra
        return text


@dataclass(frozen=True)
class AlmostAll:
    """
    `base` holds for all sufficiently large p, with no effective bound.
    Reporting only: never satisfies a query.
    """

    base: Union[AllPrimes, Congruence]
    caveat: str

    def render(self) -> str:
        return f"{self.base.render()} and {self.caveat}"


PrimeCondition = Union[AllPrimes, Congruence, AlmostAll]


@dataclass(frozen=True)
class AllPrimesQuery:
    """Ask whether something holds in every prime characteristic."""

    def render(self) -> str:
        return "all primes"

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "all-primes"}


@dataclass(frozen=True)
class ConcretePrime:
    """Ask whether something holds in characteristic p."""

    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")

    def render(self) -> str:
        return f"p = {self.p}"

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "prime", "p": self.p}


PrimeQuery = Union[AllPrimesQuery, ConcretePrime]


def as_query(query: Union[PrimeQuery, int, None]) -> PrimeQuery:
    if query is None:
        return AllPrimesQuery()
    if isinstance(query, int):
        return ConcretePrime(query)
    return query


def condition_holds(cond: PrimeCondition, query: Union[PrimeQuery, int]) -> bool:
    """
    AllPrimes always holds; a congruence holds only for a concrete prime in its
    classes; AlmostAll never holds.
    """
    query = as_query(query)
    if isinstance(cond, AllPrimes):
        return True
    if isinstance(cond, AlmostAll):
        return False
    if isinstance(query, AllPrimesQuery):
        return False
    return cond.holds_at(query.p)


def _conjoin_congruences(a: Congruence, b: Congruence) -> Optional[Congruence]:
    modulus = lcm(a.modulus, b.modulus)
    residues = set()
    for r1 in a.residues:
        for r2 in b.residues:
            solution = solve_congruence((r1, a.modulus), (r2, b.modulus))
            if solution is not None:
                residues.add(int(solution[0]))
    primes = {
        p
        for p in set(a.primes) | set(b.primes) | set(primefactors(modulus))
        if modulus % p == 0 and a.holds_at(p) and b.holds_at(p)
    }
    if not residues and not primes:
        return None
    return Congruence(modulus, frozenset(residues), frozenset(primes)).reduced()


def conjoin(a: PrimeCondition, b: PrimeCondition) -> Optional[PrimeCondition]:
    """Conjunction via CRT; None when no prime satisfies both."""
    if isinstance(a, AllPrimes):
        return b
    if isinstance(b, AllPrimes):
        return a
    if isinstance(a, AlmostAll) or isinstance(b, AlmostAll):
        base_a = a.base if isinstance(a, AlmostAll) else a
        base_b = b.base if isinstance(b, AlmostAll) else b
        base = conjoin(base_a, base_b)
        if base is None:
            return None
        caveats = [c.caveat for c in (a, b) if isinstance(c, AlmostAll)]
        return AlmostAll(base, "; ".join(dict.fromkeys(caveats)))
    return _conjoin_congruences(a, b)


def _term_key(term: PrimeCondition) -> Tuple:
    if isinstance(term, AllPrimes):
        return (0,)
    if isinstance(term, Congruence):
        return (1, term.modulus, tuple(sorted(term.residues)), tuple(sorted(term.primes)))
    return (2, _term_key(term.base), term.caveat)


def _implies(t: Congruence, s: Congruence) -> bool:
    """Every prime satisfying t satisfies s."""
    modulus = lcm(t.modulus, s.modulus)
    units = (x for x in range(1, modulus) if gcd(x, modulus) == 1)
    if any(t.holds_at(x) and not s.holds_at(x) for x in units):
        return False
    return all(s.holds_at(p) for p in primefactors(modulus) if t.holds_at(p))


def _covers_all_primes(term: Congruence) -> bool:
    units = sum(1 for r in range(term.modulus) if gcd(r, term.modulus) == 1)
    return len(term.residues) == units and term.primes == frozenset(primefactors(term.modulus))


def _normalize(terms: Iterable[PrimeCondition]) -> FrozenSet[PrimeCondition]:
    terms = list(terms)
    if any(isinstance(t, AllPrimes) for t in terms):
        return frozenset({AllPrimes()})
    others = frozenset(t for t in terms if not isinstance(t, Congruence))
    pending = [t.reduced() for t in terms if isinstance(t, Congruence)]
    by_modulus: Dict[int, Congruence] = {}
    while pending:
        term = pending.pop()
        seen = by_modulus.pop(term.modulus, None)
        if seen is None:
            by_modulus[term.modulus] = term
            continue
        # the union may reduce to a modulus that already has a term
        merged = Congruence(term.modulus, seen.residues | term.residues, seen.primes | term.primes)
        pending.append(merged.reduced())
    if any(_covers_all_primes(t) for t in by_modulus.values()):
        return frozenset({AllPrimes()})
    congruences = list(by_modulus.values())
    kept = [
        t
        for t in congruences
        if not any(s != t and _implies(t, s) and not _implies(s, t) for s in congruences)
    ]
    return frozenset(kept) | others


@dataclass(frozen=True)
class Condition:
    """A disjunction of prime conditions; the empty disjunction never holds."""

    terms: FrozenSet[PrimeCondition] = field(default_factory=frozenset)

    @classmethod
    def never(cls) -> "Condition":
        return cls(frozenset())

    @classmethod
    def all_primes(cls) -> "Condition":
        return cls(frozenset({AllPrimes()}))

    @classmethod
    def of(cls, *terms: PrimeCondition) -> "Condition":
        return cls(_normalize(terms))

    @property
    def is_never(self) -> bool:
        return not self.terms

    @property
    def is_all_primes(self) -> bool:
        return AllPrimes() in self.terms

    def sorted_terms(self) -> List[PrimeCondition]:
        return sorted(self.terms, key=_term_key)

    def union(self, other: "Condition") -> "Condition":
        return Condition(_normalize(self.terms | other.terms))

    def conj(self, other: "Condition") -> "Condition":
        products = (conjoin(a, b) for a in self.terms for b in other.terms)
        return Condition(_normalize(t for t in products if t is not None))

    def holds(self, query: Union[PrimeQuery, int]) -> bool:
        return any(condition_holds(t, query) for t in self.terms)

    def render(self) -> str:
        if not self.terms:
            return "never"
        return " or ".join(t.render() for t in self.sorted_terms())

    def to_list(self) -> List[Dict[str, Any]]:
        return [condition_to_dict(t) for t in self.sorted_terms()]

    @classmethod
    def from_list(cls, data: Iterable[Dict[str, Any]]) -> "Condition":
        return cls.of(*(condition_from_dict(item) for item in data))


def condition_to_dict(cond: PrimeCondition) -> Dict[str, Any]:
    """JSON shape {type, modulus?, residues?, primes?, caveat?}."""
    if isinstance(cond, AllPrimes):
        return {"type": "all"}
    if isinstance(cond, Congruence):
        data: Dict[str, Any] = {
            "type": "congruence",
            "modulus": cond.modulus,
            "residues": sorted(cond.residues),
        }
        if cond.primes:
            data["primes"] = sorted(cond.primes)
        return data
    data = condition_to_dict(cond.base)
    data["type"] = "almost-all"
    data["caveat"] = cond.caveat
    return data


def condition_from_dict(data: Dict[str, Any]) -> PrimeCondition:
    kind = data.get("type")
    if kind == "all":
        return AllPrimes()
    if kind == "congruence":
        if data.get("modulus") is None or not data.get("residues"):
            raise ConditionError("a congruence needs a modulus and a nonempty residue list")
        return Congruence(
            int(data["modulus"]),
            frozenset(int(r) for r in data["residues"]),
            frozenset(int(p) for p in data.get("primes") or ()),
        )
    if kind == "almost-all":
        if not data.get("caveat"):
            raise ConditionError("an almost-all condition needs caveat text")
        base: Union[AllPrimes, Congruence] = AllPrimes()
        if data.get("modulus") is not None:
            base = condition_from_dict({**data, "type": "congruence"})
        return AlmostAll(base, data["caveat"])
    raise ConditionError(f"unknown condition type {kind!r}")
