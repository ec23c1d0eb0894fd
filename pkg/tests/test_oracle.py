"""Tests for the brute-force oracles and the self-check."""

import pytest

from npstrata.core import (
    codim_ag,
    enumerate_polygons,
    nu,
    parse_polygon,
    partitions,
    supersingular,
)
from npstrata.errors import BudgetExceededError
from npstrata.oracle import (
    LatticePath,
    brute_codim,
    brute_enumerate,
    brute_partitions,
    run_selfcheck,
)


class TestLatticePaths:
    """Test the path representation used by the oracle."""

    def test_symmetric_path(self):
        path = LatticePath(((0, 0), (3, 1), (5, 2), (8, 4)))
        assert path.genus == 4
        assert path.is_symmetric()
        assert path.segments() == [(3, 1), (2, 1), (3, 2)]
        assert path.to_polygon() == parse_polygon("nu3+ss")

    def test_asymmetric_path(self):
        assert not LatticePath(((0, 0), (3, 1), (4, 2))).is_symmetric()

    def test_sigma_path(self):
        assert LatticePath(((0, 0), (6, 3))).to_polygon() == supersingular(3)

    @pytest.mark.parametrize(
        "points,expected",
        [
            (((0, 0), (1, 0), (2, 1)), "ord"),
            (((0, 0), (3, 1), (6, 3)), "nu3"),
            (((0, 0), (1, 0), (4, 1), (7, 3), (8, 4)), "ord+nu3"),
        ],
    )
    def test_paths_with_paired_slopes(self, points, expected):
        """Test that slopes λ and 1 - λ in equal numbers make a symmetric path."""
        path = LatticePath(points)
        assert path.is_symmetric()
        assert path.to_polygon() == parse_polygon(expected)

    def test_unpaired_slopes(self):
        assert not LatticePath(((0, 0), (1, 0), (4, 2))).is_symmetric()


class TestOracleEquivalence:
    """Compare the library against the brute-force searches."""

    @pytest.mark.parametrize("g", range(1, 9))
    def test_enumeration(self, g):
        assert brute_enumerate(g) == list(enumerate_polygons(g))

    @pytest.mark.parametrize("g,count", [(1, 2), (2, 3), (3, 5), (4, 8)])
    def test_counts(self, g, count):
        assert len(brute_enumerate(g)) == count

    @pytest.mark.parametrize("g", range(1, 9))
    def test_codimension(self, g):
        for xi in enumerate_polygons(g):
            assert brute_codim(xi) == codim_ag(xi), str(xi)

    @pytest.mark.parametrize("g", range(1, 8))
    def test_partitions(self, g):
        for xi in enumerate_polygons(g):
            assert brute_partitions(xi) == set(partitions(xi)), str(xi)

    def test_budgets(self):
        with pytest.raises(BudgetExceededError):
            brute_enumerate(9)
        with pytest.raises(ValueError):
            brute_enumerate(0)
        with pytest.raises(BudgetExceededError):
            brute_partitions(supersingular(25))

    def test_indecomposable(self):
        assert brute_partitions(nu(5)) == set()


class TestSelfCheck:
    """Test the self-check report."""

    def test_all_checks_pass(self):
        report = run_selfcheck()
        assert report.passed
        data = report.to_dict()
        assert data["passed"] is True
        assert len(data["checks"]) == 6
        enumeration = report.results[0]
        assert enumeration.detail.startswith("counts 2, 3, 5, 8")
