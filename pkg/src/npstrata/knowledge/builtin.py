"""The builtin axiom base: external results the deduction rules start from."""

from typing import List

from ..core import iso_pair, nu, ordinary, parse_polygon, supersingular
from .axioms import Axiom, AxiomKind
from .conditions import AllPrimes, AlmostAll, Congruence

MOD_11 = Congruence(11, frozenset({3, 4, 5, 9}))
MOD_7 = Congruence(7, frozenset({2, 4}))
MOD_8_LARGE = AlmostAll(Congruence(8, frozenset({7})), "p >> 0")


def builtin_axioms() -> List[Axiom]:
    """Return a fresh list of the builtin axioms, ids A0 through A11."""
    return [
        Axiom(
            id="A0",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=1,
            polygons=(ordinary(1), supersingular(1)),
            dims=(1, 0),
            prime_condition=AllPrimes(),
            citation="Deuring, Die Typen der Multiplikatorenringe elliptischer "
            "Funktionenkörper (1941): ordinary and supersingular elliptic curves exist in every "
            "characteristic; M_{1,1}[ord] is dense, M_{1,1}[ss] is finite",
        ),
        Axiom(
            id="A1",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=3,
            polygons=(nu(3),),
            prime_condition=AllPrimes(),
            citation="Oort and Ueno, Principally polarized abelian varieties of dimension two "
            "or three are Jacobian varieties (1973): the Torelli locus is open and dense in "
            "A_3, so the codimension-1 stratum nu3 meets it",
        ),
        Axiom(
            id="A2",
            kind=AxiomKind.GENERIC_NP,
            g=3,
            f=0,
            polygons=(nu(3),),
            pad_ord=True,
            prime_condition=AllPrimes(),
            citation="Generic Newton polygons of p-rank strata, Cor. 5.5: ord^(g-3)+nu3 is "
            "generic on every component of M_g^(g-3)",
        ),
        Axiom(
            id="A3",
            kind=AxiomKind.OPEN_DENSE,
            g=4,
            f=0,
            polygons=(nu(4),),
            pad_ord=True,
            prime_condition=AllPrimes(),
            citation="Survey of current results on Newton polygons of curves, Cor. 6.5: "
            "ord^(g-4)+nu4 occurs with components open dense in M_g^(g-4)",
        ),
        Axiom(
            id="A4",
            kind=AxiomKind.GENERIC_NP,
            g=4,
            f=0,
            polygons=(nu(4), parse_polygon("nu3+ss")),
            pad_ord=True,
            prime_condition=AllPrimes(),
            citation="Generic Newton polygons of p-rank strata, Thm. 4.2(b) and Lemma 5.2: "
            "the generic polygon on a component of M_g^(g-4) is ord^(g-4)+nu4 or "
            "ord^(g-4)+nu3+ss",
        ),
        Axiom(
            id="A5",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=3,
            polygons=(supersingular(3),),
            prime_condition=AllPrimes(),
            citation="Hyperelliptic supersingular curves, Thm. 5.12(2): a supersingular "
            "smooth curve of genus 3 exists for every p",
        ),
        Axiom(
            id="A6",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=4,
            polygons=(nu(4),),
            prime_condition=AllPrimes(),
            citation="Generic Newton polygons of p-rank strata, Lemma 5.3",
        ),
        Axiom(
            id="A7",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=5,
            polygons=(nu(5),),
            prime_condition=MOD_11,
            citation="Newton polygons of special families of cyclic covers, Thm. 1.2",
        ),
        Axiom(
            id="A8",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=6,
            polygons=(nu(6),),
            prime_condition=MOD_7,
            citation="Newton polygons of cyclic covers branched at three points, Thm. 7.4",
        ),
        Axiom(
            id="A9",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=5,
            polygons=(iso_pair(1, 4), iso_pair(2, 3)),
            prime_condition=MOD_11,
            citation="Newton polygons of special families of cyclic covers, Thm. 5.4",
        ),
        Axiom(
            id="A10",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=5,
            polygons=(supersingular(5),),
            prime_condition=MOD_8_LARGE,
            citation="Newton polygons of cyclic covers branched at three points, Thm. 1.2: "
            "a supersingular smooth curve of genus 5 exists for p = 7 mod 8 and p large",
        ),
        Axiom(
            id="A11",
            kind=AxiomKind.OCCURS_SMOOTH,
            g=4,
            polygons=(supersingular(4),),
            prime_condition=AllPrimes(),
            redundant=True,
            citation="Supersingular curves of genus four in every characteristic, Cor. 1.2; "
            "rederivable from the boundary dimension count",
        ),
    ]
