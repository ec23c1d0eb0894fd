"""Tests for the deduction rules, the closure and FactTable export."""

import json

import pytest

from npstrata.core import (
    PolygonPartition,
    enumerate_polygons,
    iso_pair,
    nu,
    ordinary,
    pad_ordinary,
    parse_polygon,
    supersingular,
)
from npstrata.engine import (
    BLOCKER_BOUNDARY_TOO_LARGE,
    BLOCKER_NO_PARTITION,
    DEFAULT_RULE_ORDER,
    FactKey,
    FactState,
    FactUpdate,
    PartitionCheck,
    ProofTrace,
    RuleContext,
    apply_updates,
    closure,
    evaluate_boundary,
    facttable_from_json,
    facttable_to_json,
    initial_state,
    load_facttable,
    merge,
    nu_plus_ss_degree,
    rule_boundary_count,
    rule_nu_plus_ss,
    rule_purity,
    rule_small_codim,
    save_facttable,
)
from npstrata.errors import (
    AxiomValidationError,
    FactTableFormatError,
    GenusMismatchError,
    InconsistentFactError,
    KeyOutOfUniverseError,
    NotPrimeError,
    OutOfRangeError,
)
from npstrata.knowledge import AllPrimes, Axiom, AxiomKind, Condition, Congruence, builtin_axioms

SS = supersingular(1)
MOD_11 = Congruence(11, frozenset({3, 4, 5, 9}))
MOD_7 = Congruence(7, frozenset({2, 4}))


def _key(text):
    return FactKey.of(parse_polygon(text))


def _trace(name):
    return ProofTrace(rule="axiom", conclusion=name)


def _rules(state):
    return {trace.rule for trace in state.provenance}


class TestFactKey:
    """Test fact keys."""

    def test_genus_must_match(self):
        with pytest.raises(GenusMismatchError):
            FactKey(4, nu(3))

    def test_order_and_text(self):
        assert FactKey.of(ordinary(4)) < FactKey.of(supersingular(4)) < FactKey.of(nu(5))
        assert str(FactKey.of(supersingular(4))) == "g=4 ss^4"
        key = _key("ord+nu3")
        assert FactKey.from_dict(key.to_dict()) == key


class TestFactState:
    """Test the per-stratum lattice."""

    def test_initial_state(self):
        assert initial_state(FactKey.of(ordinary(1))).dim_hi == 1
        assert initial_state(FactKey.of(SS)).dim_hi == 0
        # dim A_4[ss^4] = 4 is below dim M_4^0 = 5
        assert initial_state(FactKey.of(supersingular(4))).dim_hi == 4
        assert initial_state(FactKey.of(nu(4))).dim_hi == 5
        assert not initial_state(FactKey.of(nu(4))).occurs

    def test_merge(self):
        key = FactKey.of(nu(5))
        state = FactState(condition=Condition.of(MOD_7), dim_lo=2, dim_hi=7)
        update = FactUpdate(key, _trace("t"), Condition.of(MOD_11), dim_lo=4, dim_hi=9)
        merged = merge(state, update)
        assert merged.condition == Condition.of(MOD_7, MOD_11)
        assert (merged.dim_lo, merged.dim_hi) == (4, 7)

    def test_never_condition_is_ignored(self):
        update = FactUpdate(FactKey.of(nu(5)), _trace("t"), Condition.never())
        assert not merge(FactState(), update).occurs

    def test_apply_updates_keeps_only_effective_traces(self):
        key = FactKey.of(nu(5))
        state = FactState(dim_hi=7)
        tighter = FactUpdate(key, _trace("tighter"), dim_hi=6)
        looser = FactUpdate(key, _trace("looser"), dim_hi=8)
        occurs = FactUpdate(key, _trace("occurs"), Condition.all_primes())
        forward = apply_updates(key, state, [tighter, looser, occurs])
        backward = apply_updates(key, state, [occurs, looser, tighter])
        assert forward == backward
        assert forward.dim_hi == 6
        assert [t.conclusion for t in forward.provenance] == ["occurs", "tighter"]

    def test_apply_updates_inconsistent(self):
        key = FactKey.of(nu(5))
        with pytest.raises(InconsistentFactError):
            apply_updates(key, FactState(dim_hi=3), [FactUpdate(key, _trace("t"), dim_lo=4)])


class TestPartitionCheck:
    """Test hypothesis (b) rows."""

    def test_render(self):
        part = PolygonPartition.of(SS, supersingular(3))
        check = PartitionCheck(part, 0, 2, 3)
        assert check.holds
        assert check.render() == "ss | ss^3: 0 + 2 < 3"
        failing = PartitionCheck(PolygonPartition.of(supersingular(2), supersingular(3)), 1, 2, 3)
        assert not failing.holds
        assert failing.render() == "ss^2 | ss^3: 1 + 2 ≮ 3"

    def test_empty_sides(self):
        part = PolygonPartition.of(SS, supersingular(3))
        assert PartitionCheck(part, 0, 9, 3, right_empty=True).holds
        missing = PartitionCheck(part, None, 2, 3)
        assert missing.total is None
        assert missing.holds
        assert missing.render().endswith("no boundary component")

    def test_dict_round_trip(self):
        check = PartitionCheck(PolygonPartition.of(nu(3), SS), 3, 0, 4)
        assert PartitionCheck.from_dict(check.to_dict()) == check


class TestRules:
    """Test single rule applications on fresh tables."""

    def test_context_before_axioms(self, initial_context):
        ctx = initial_context(2)
        assert ctx.nonempty_ct(FactKey.of(SS)) is None
        assert ctx.nonempty_ct(FactKey.of(supersingular(2))) is None
        assert ctx.td_max(FactKey.of(supersingular(2))) == 1

    def test_context_after_elliptic_axioms(self, initial_context):
        ctx = initial_context(3, axioms_at_genus_one=True)
        assert ctx.nonempty_ct(FactKey.of(SS)) == Condition.all_primes()
        assert ctx.nonempty_ct(FactKey.of(supersingular(3))) == Condition.all_primes()
        assert ctx.td_max(FactKey.of(SS)) == 0
        assert ctx.td_max(FactKey.of(ordinary(1))) == 1
        assert ctx.td_max(FactKey.of(supersingular(3))) == 2

    def test_boundary_count_sigma3(self, initial_context):
        """Test that ss^3 follows from ss and ss^2 with 0 + 1 < 2."""
        ctx = initial_context(3, axioms_at_genus_one=True)
        (update,) = rule_boundary_count(FactKey.of(supersingular(3)), ctx)
        assert update.condition == Condition.all_primes()
        assert update.dim_lo == 2
        assert [c.render() for c in update.trace.checks] == ["ss | ss^2: 0 + 1 < 2"]

    def test_boundary_count_needs_nonempty_sides(self, initial_context):
        ctx = initial_context(3)
        evaluation = evaluate_boundary(FactKey.of(supersingular(3)), ctx)
        assert not evaluation.nonempty
        assert not evaluation.fires
        assert rule_boundary_count(FactKey.of(supersingular(3)), ctx) == []
        assert evaluate_boundary(FactKey.of(nu(3)), ctx) is None

    @pytest.mark.parametrize(
        "text,dim",
        [("ord^2", 3), ("ord+ss", 2), ("ss^2", 1), ("ord+ss^2", 4), ("nu3", 3), ("nu4", 5)],
    )
    def test_small_codim(self, initial_context, text, dim):
        ctx = initial_context(4)
        (update,) = rule_small_codim(_key(text), ctx)
        assert update.condition == Condition.all_primes()
        assert update.dim_lo == update.dim_hi == dim

    def test_small_codim_skips(self, initial_context):
        ctx = initial_context(4)
        assert rule_small_codim(_key("ss^4"), ctx) == []
        assert rule_small_codim(_key("nu3+ss"), ctx) == []
        assert rule_small_codim(_key("ss"), ctx) == []

    def test_small_codim_cites_generic_axioms(self, initial_context):
        ctx = initial_context(5)
        (update,) = rule_small_codim(_key("ord+nu4"), ctx)
        assert set(update.trace.axiom_ids) == {"A3", "A4"}
        assert update.dim_lo == 3 * 5 - 7

    def test_purity(self, initial_context):
        ctx = initial_context(5)
        (update,) = rule_purity(_key("ord^2+ss^3"), ctx)
        assert update.dim_hi == 8
        assert update.trace.axiom_ids == ("A2",)
        (update,) = rule_purity(_key("ord+ss^4"), ctx)
        assert update.dim_hi == 7
        assert update.trace.axiom_ids == ("A4",)
        assert rule_purity(_key("ord+nu3+ss"), ctx) == []
        assert rule_purity(_key("ord^2+nu3"), ctx) == []

    def test_nu_plus_ss_degree(self):
        assert nu_plus_ss_degree(parse_polygon("nu5+ss")) == 5
        assert nu_plus_ss_degree(parse_polygon("nu3+ss^2")) is None
        assert nu_plus_ss_degree(SS) is None

    def test_nu_plus_ss_needs_nu(self, initial_context):
        ctx = initial_context(6, axioms_at_genus_one=True)
        assert rule_nu_plus_ss(_key("nu5+ss"), ctx) == []


class TestClosure:
    """Test closure results against the known occurrence claims."""

    def test_sigma4_without_its_axiom(self, closure_g4_without_a11):
        """Test ss^4 rederived by the boundary count with dimension at least 3."""
        table = closure_g4_without_a11
        state = table.query(supersingular(4))
        assert state.occurs
        assert state.condition.is_all_primes
        assert state.dim_lo == 3
        assert state.dim_hi == 4
        (boundary,) = [t for t in state.provenance if t.rule == "boundary-count"]
        assert [c.render() for c in boundary.checks] == [
            "ss | ss^3: 0 + 2 < 3",
            "ss^2 | ss^2: 1 + 1 < 3",
        ]
        assert all(c.total == 2 for c in boundary.checks)
        assert all("A11" not in t.axiom_ids for t in state.provenance)
        assert table.disabled_axioms == ("A11",)

    def test_sigma4_trace_rendering(self, closure_g4_without_a11):
        text = closure_g4_without_a11.render_trace(supersingular(4))
        lines = text.splitlines()
        assert lines[0].startswith("g=4 ss^4: occurs (all primes)")
        assert "  [boundary-count] occurs (all primes), some component has dim >= 3" in lines
        assert any(line.strip() == "(b) ss | ss^3: 0 + 2 < 3" for line in lines)
        assert any(line.strip() == "(b) ss^2 | ss^2: 1 + 1 < 3" for line in lines)
        assert any(line.strip().startswith("uses g=1 ss:") for line in lines)
        assert any("axiom A0" in line for line in lines)

    def test_genus4_complete(self, closure_g4_without_a11):
        assert all(closure_g4_without_a11.occurs(xi) for xi in enumerate_polygons(4))

    def test_genus5_positive_prank(self, closure_g5):
        for xi in enumerate_polygons(5):
            if xi.p_rank > 0:
                assert closure_g5.occurs(xi), str(xi)

    @pytest.mark.slow
    def test_prank_at_least_g_minus_4(self, closure_g10):
        for key, state in closure_g10.items():
            if key.g >= 4 and key.xi.p_rank >= key.g - 4:
                assert state.occurs, str(key)

    def test_genus5_prank0_survey(self, closure_g5):
        table = closure_g5
        assert table.occurs(parse_polygon("nu4+ss"))

        for xi in (nu(5), iso_pair(2, 3)):
            state = table.query(xi)
            assert not state.occurs
            assert [b.kind for b in state.blockers] == [BLOCKER_NO_PARTITION]
            assert state.blockers[0].hypothesis == "a"
            assert state.blockers[0].render().startswith("hypothesis (a): no partition exists")

        state = table.query(parse_polygon("nu3+ss^2"))
        assert not state.occurs
        (blocker,) = state.blockers
        assert blocker.kind == BLOCKER_BOUNDARY_TOO_LARGE
        assert blocker.hypothesis == "b"
        assert blocker.to_dict()["hypothesis"] == "b"
        assert blocker.witness.partition == PolygonPartition.of(SS, parse_polygon("nu3+ss"))
        assert (blocker.witness.left_td, blocker.witness.right_td, blocker.witness.e) == (0, 5, 5)
        assert len(blocker.checks) == 1

        state = table.query(supersingular(5))
        assert not state.occurs
        (blocker,) = state.blockers
        assert blocker.witness.partition == PolygonPartition.of(supersingular(2), supersingular(3))
        assert blocker.witness.render() == "ss^2 | ss^3: 1 + 2 ≮ 3"
        assert [c.render() for c in blocker.checks] == [
            "ss^2 | ss^3: 1 + 2 ≮ 3",
            "ss | ss^4: 0 + 4 ≮ 3",
        ]

    def test_mod_11_polygons_at_three(self, closure_g5_p3):
        for xi in (nu(5), iso_pair(2, 3)):
            state = closure_g5_p3.query(xi)
            assert state.occurs
            assert state.blockers == ()
        assert not closure_g5_p3.occurs(supersingular(5))

    @pytest.mark.parametrize(
        "p,expected", [(3, True), (5, True), (47, True), (2, False), (13, False)]
    )
    def test_nu5_plus_ss(self, p, expected):
        assert closure(6, p).occurs(parse_polygon("nu5+ss")) is expected

    def test_nu5_plus_ss_all_primes(self):
        assert not closure(6).occurs(parse_polygon("nu5+ss"))

    @pytest.mark.parametrize("p,expected", [(2, True), (11, True), (13, False)])
    def test_nu6_plus_ss(self, p, expected):
        assert closure(7, p).occurs(parse_polygon("nu6+ss")) is expected

    def test_almost_all_axiom_never_used(self):
        table = closure(5, 7)
        assert not table.occurs(supersingular(5))
        for _, state in table.items():
            assert all("A10" not in trace.axiom_ids for trace in state.provenance)

    def test_purity_bounds(self, closure_g8):
        for g in range(4, 9):
            assert closure_g8.query(pad_ordinary(supersingular(3), g - 3)).dim_hi == 3 * g - 7
            xi = pad_ordinary(parse_polygon("nu3+ss"), g - 4)
            assert closure_g8.query(xi).dim_hi == 3 * g - 7
            assert closure_g8.query(pad_ordinary(supersingular(4), g - 4)).dim_hi == 3 * g - 8

    def test_exact_dimensions(self, closure_g8):
        for g in range(4, 9):
            state = closure_g8.query(pad_ordinary(supersingular(2), g - 2))
            assert state.dim_lo == state.dim_hi == 3 * g - 5
            state = closure_g8.query(pad_ordinary(nu(4), g - 4))
            assert state.dim_lo == state.dim_hi == 3 * g - 7

    @pytest.mark.parametrize("p,d", [(3, 5), (2, 6), (2, 3), (2, 4)])
    def test_nu_plus_ss_matches_boundary_count(self, p, d):
        """Test that the specialized rule concludes exactly what the boundary count does."""
        table = closure(d + 1, p)
        key = FactKey.of(nu(d) + SS)
        ctx = RuleContext(dict(table.items()), builtin_axioms())
        (special,) = rule_nu_plus_ss(key, ctx)
        (general,) = rule_boundary_count(key, ctx)
        assert special.condition == general.condition
        assert special.dim_lo == general.dim_lo == 2 * d - 2
        assert special.trace.children == (general.trace,)
        assert {"nu-plus-ss", "boundary-count"} <= _rules(table.query(key))

    def test_only_elliptic_axioms(self):
        """Test that ss^3 and nu4 follow without their literature axioms."""
        axioms = [a for a in builtin_axioms() if a.id == "A0"]
        table = closure(4, axioms=axioms)
        assert table.occurs(supersingular(3))
        assert _rules(table.query(supersingular(3))) == {"boundary-count"}
        assert _rules(table.query(nu(4))) == {"small-codim"}
        assert table.occurs(supersingular(4))

    def test_inconsistent_axiom(self):
        bad = Axiom("BAD", AxiomKind.DIM_EXACT, 3, (nu(3),), AllPrimes(), "wrong", dims=(7,))
        with pytest.raises(InconsistentFactError):
            closure(3, axioms=builtin_axioms() + [bad])

    def test_errors(self):
        with pytest.raises(OutOfRangeError):
            closure(0)
        with pytest.raises(AxiomValidationError):
            closure(3, disabled_axioms=["A99"])
        with pytest.raises(ValueError):
            closure(3, rule_order=["axiom", "guesswork"])
        with pytest.raises(NotPrimeError):
            closure(3, 4)

    def test_key_outside_table(self, closure_g5):
        with pytest.raises(KeyOutOfUniverseError):
            closure_g5.query(nu(6))

    def test_blockers_only_on_unknown(self, closure_g5):
        for _, state in closure_g5.items():
            assert bool(state.blockers) == (not state.occurs)


class TestDeterminism:
    """Test that exports do not depend on rule order or worker count."""

    def test_rule_order_and_jobs(self, closure_g8):
        reordered = closure(8, rule_order=list(reversed(DEFAULT_RULE_ORDER)), jobs=4)
        assert facttable_to_json(reordered) == facttable_to_json(closure_g8)
        assert reordered.rounds == closure_g8.rounds


class TestExport:
    """Test the FactTable JSON format."""

    def test_metadata(self, closure_g5_p3):
        data = json.loads(facttable_to_json(closure_g5_p3))
        assert data["metadata"]["version"] == 1
        assert data["metadata"]["gmax"] == 5
        assert data["metadata"]["context"] == {"type": "prime", "p": 3}
        assert data["metadata"]["total_facts"] == len(data["facts"]) == len(closure_g5_p3)
        nu5 = next(f for f in data["facts"] if f["polygon"] == "nu5")
        assert nu5["status"] == "yes"
        assert nu5["condition_text"] == "p ≡ 3,4,5,9 mod 11"
        assert nu5["factors"] == [[4, 1, 1], [1, 4, 1]]

    def test_round_trip(self, closure_g5, temp_dir):
        text = facttable_to_json(closure_g5)
        assert facttable_to_json(facttable_from_json(text)) == text
        path = save_facttable(closure_g5, temp_dir / "out" / "facts.json")
        assert facttable_to_json(load_facttable(path)) == text

    def test_format_errors(self, closure_g4_without_a11, temp_dir):
        data = json.loads(facttable_to_json(closure_g4_without_a11))
        with pytest.raises(FactTableFormatError):
            facttable_from_json("{")
        wrong_version = {**data, "metadata": {**data["metadata"], "version": 9}}
        with pytest.raises(FactTableFormatError):
            facttable_from_json(json.dumps(wrong_version))
        with pytest.raises(FactTableFormatError):
            facttable_from_json(json.dumps({**data, "facts": data["facts"][1:]}))
        with pytest.raises(FactTableFormatError):
            load_facttable(temp_dir / "missing.json")

    def test_unknown_blocker_kind(self, closure_g5):
        data = json.loads(facttable_to_json(closure_g5))
        nu5 = next(f for f in data["facts"] if f["polygon"] == "nu5")
        assert nu5["blockers"][0]["hypothesis"] == "a"
        nu5["blockers"][0]["kind"] = "mystery"
        with pytest.raises(FactTableFormatError):
            facttable_from_json(json.dumps(data))
