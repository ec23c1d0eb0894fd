"""Pytest configuration and fixtures."""

import pytest

from npstrata.core import enumerate_polygons
from npstrata.engine import FactKey, RuleContext, apply_updates, closure, initial_state, rule_axioms
from npstrata.knowledge import builtin_axioms


@pytest.fixture
def temp_dir(tmp_path):
    """Temporary directory fixture."""
    return tmp_path


@pytest.fixture
def initial_context():
    """
    Build a RuleContext over fresh states up to gmax; with `axioms_at_genus_one`
    the elliptic-curve axioms are already applied.
    """

    def build(gmax, axioms=None, axioms_at_genus_one=False):
        axioms = builtin_axioms() if axioms is None else axioms
        table = {
            FactKey(g, xi): initial_state(FactKey(g, xi))
            for g in range(1, gmax + 1)
            for xi in enumerate_polygons(g)
        }
        if axioms_at_genus_one:
            ctx = RuleContext(table, axioms)
            for key in [k for k in table if k.g == 1]:
                table[key] = apply_updates(key, table[key], rule_axioms(key, ctx))
        return RuleContext(table, axioms)

    return build


@pytest.fixture(scope="session")
def closure_g4_without_a11():
    return closure(4, disabled_axioms=["A11"])


@pytest.fixture(scope="session")
def closure_g5():
    return closure(5)


@pytest.fixture(scope="session")
def closure_g5_p3():
    return closure(5, 3)


@pytest.fixture(scope="session")
def closure_g8():
    return closure(8)


@pytest.fixture(scope="session")
def closure_g10():
    return closure(10)
