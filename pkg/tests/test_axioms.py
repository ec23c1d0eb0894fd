"""Tests for the axiom base and its file format."""

import json

import pytest

from npstrata.core import nu, parse_polygon, supersingular
from npstrata.errors import AxiomParseError, AxiomValidationError
from npstrata.knowledge import (
    AllPrimes,
    AlmostAll,
    Axiom,
    AxiomKind,
    axioms_document,
    builtin_axioms,
    dump_axioms,
    load_axioms,
    loads_axioms,
    save_axioms,
    validate_axioms,
)


def _document(*entries, version=1):
    return json.dumps({"version": version, "axioms": list(entries)})


def _entry(**overrides):
    entry = {
        "id": "X1",
        "kind": "OccursSmooth",
        "g": 4,
        "polygon": "nu4",
        "prime_condition": {"type": "all"},
        "citation": "Some result",
    }
    entry.update(overrides)
    return {k: v for k, v in entry.items() if v is not None}


class TestBuiltinAxioms:
    """Test the shipped axiom base."""

    def test_ids_and_validity(self):
        axioms = builtin_axioms()
        assert [a.id for a in axioms] == [f"A{i}" for i in range(12)]
        assert validate_axioms(axioms) == []
        assert all(a.citation for a in axioms)

    def test_classical_axioms_name_their_source(self):
        by_id = {a.id: a for a in builtin_axioms()}
        assert by_id["A0"].citation.startswith("Deuring, ")
        assert by_id["A1"].citation.startswith("Oort and Ueno, ")
        assert "(1973)" in by_id["A1"].citation

    def test_fresh_list(self):
        axioms = builtin_axioms()
        axioms.pop()
        assert len(builtin_axioms()) == 12

    def test_redundant_and_reporting_only(self):
        by_id = {a.id: a for a in builtin_axioms()}
        assert by_id["A11"].redundant
        assert by_id["A11"].polygons == (supersingular(4),)
        assert by_id["A10"].is_reporting_only
        assert isinstance(by_id["A10"].prime_condition, AlmostAll)
        assert not any(a.is_reporting_only for a in builtin_axioms() if a.id != "A10")

    def test_padding(self):
        by_id = {a.id: a for a in builtin_axioms()}
        a3 = by_id["A3"]
        assert a3.covers(6) and not a3.covers(3)
        assert a3.polygons_at(6) == (parse_polygon("ord^2+nu4"),)
        assert a3.polygons_at(3) == ()
        assert a3.f_at(6) == 2
        assert by_id["A1"].polygons_at(4) == ()

    def test_dim_bounds(self):
        by_id = {a.id: a for a in builtin_axioms()}
        assert by_id["A0"].dim_bounds(1, 0) == (1, 1)
        assert by_id["A0"].dim_bounds(1, 1) == (0, 0)
        assert by_id["A3"].dim_bounds(6, 0) == (11, 11)
        assert by_id["A2"].dim_bounds(5, 0) == (9, 9)
        assert by_id["A4"].dim_bounds(4, 1) == (None, None)

    def test_claims_occurrence(self):
        by_id = {a.id: a for a in builtin_axioms()}
        assert by_id["A0"].claims_occurrence()
        assert by_id["A2"].claims_occurrence()
        assert by_id["A3"].claims_occurrence()
        assert not by_id["A4"].claims_occurrence()


class TestAxiomFile:
    """Test loading and saving axiom documents."""

    def test_round_trip(self, temp_dir):
        axioms = builtin_axioms()
        assert loads_axioms(dump_axioms(axioms)) == axioms
        path = save_axioms(axioms, temp_dir / "nested" / "axioms.json")
        assert path.exists()
        assert load_axioms(path) == axioms

    def test_document_shape(self):
        document = axioms_document(builtin_axioms())
        assert document["version"] == 1
        a0 = document["axioms"][0]
        assert a0["kind"] == "OccursSmooth"
        assert a0["polygons"] == ["ord", "ss"]
        assert a0["dims"] == [1, 0]
        assert "pad_ord" not in a0
        a10 = document["axioms"][10]
        assert a10["prime_condition"] == {
            "type": "almost-all",
            "modulus": 8,
            "residues": [7],
            "caveat": "p >> 0",
        }

    def test_single_polygon(self):
        (axiom,) = loads_axioms(_document(_entry()))
        assert axiom.polygons == (nu(4),)
        assert axiom.prime_condition == AllPrimes()
        assert axiom.kind == AxiomKind.OCCURS_SMOOTH

    def test_invalid_json(self):
        with pytest.raises(AxiomParseError) as exc_info:
            loads_axioms("{not json")
        assert exc_info.value.location.startswith("<string>:1:")

    @pytest.mark.parametrize(
        "entry,location",
        [
            (_entry(kind="Sometimes"), "<string>:axioms.0.kind"),
            (_entry(colour="red"), "<string>:axioms.0.colour"),
            (_entry(citation=None), "<string>:axioms.0.citation"),
        ],
    )
    def test_schema_errors(self, entry, location):
        with pytest.raises(AxiomParseError) as exc_info:
            loads_axioms(_document(entry))
        assert exc_info.value.location == location
        assert exc_info.value.to_dict()["error"] == "axiom-parse-error"

    def test_both_polygon_fields(self):
        with pytest.raises(AxiomParseError):
            loads_axioms(_document(_entry(polygons=["nu4"])))

    def test_wrong_version(self):
        with pytest.raises(AxiomParseError) as exc_info:
            loads_axioms(_document(_entry(), version=2))
        assert "version" in str(exc_info.value)

    def test_missing_file(self, temp_dir):
        with pytest.raises(AxiomParseError):
            load_axioms(temp_dir / "missing.json")

    @pytest.mark.parametrize(
        "entries,fragment",
        [
            ([_entry(polygon="nu3")], "has genus 3, expected 4"),
            ([_entry(polygon="nu2")], "nu2"),
            ([_entry(), _entry()], "duplicate axiom id"),
            ([_entry(kind="GenericNPOfPrankComponents")], "needs a p-rank f"),
            ([_entry(f=1)], "has p-rank 0, expected 1"),
            ([_entry(kind="DimExactComponents")], "needs dims"),
            ([_entry(dim_lo=5, dim_hi=3)], "exceeds dim_hi"),
            (
                [_entry(prime_condition={"type": "congruence", "modulus": 6, "residues": [2]})],
                "unit",
            ),
        ],
    )
    def test_validation_errors(self, entries, fragment):
        with pytest.raises(AxiomValidationError) as exc_info:
            loads_axioms(_document(*entries))
        assert any(fragment in issue for issue in exc_info.value.issues)


class TestValidateAxioms:
    """Test semantic validation of in-memory axioms."""

    def test_empty_citation(self):
        axiom = Axiom("Z", AxiomKind.OCCURS_SMOOTH, 3, (nu(3),), AllPrimes(), " ")
        assert validate_axioms([axiom]) == ["axiom 'Z': missing citation"]

    def test_generic_needs_genus_two(self):
        axiom = Axiom("Z", AxiomKind.OPEN_DENSE, 1, (supersingular(1),), AllPrimes(), "c", f=0)
        assert any("needs g >= 2" in issue for issue in validate_axioms([axiom]))
