"""Acceptance gate: the ten headline criteria, one test each.

Each test is self-contained and states the expected values inline; the
numeric oracles (Betti tables, convolutions) are recomputed from scratch
rather than read from fixtures.
"""

import pathlib
import random

import pytest

from semifiber.algebra import AlgebraMorphism, new_algebra
from semifiber.cli import run_manifest
from semifiber.constructions import (ActionTable, semi_fiber_product,
                                     fiber_product, validate_action)
from semifiber.fields import GF
from semifiber.homology import (ModulePresentation, base_change,
                                homology_dims, minimal_free_resolution)
from semifiber.lifting import (LiftingError, LiftingProblem,
                               alternating_complex, check_lifting,
                               cor44_hypothesis_check, main_theorem_harness,
                               poincare_factorization_test, retraction_search,
                               section_search, socle_case_decide,
                               thm_minimal_generator_test)
from semifiber.verdicts import TriState

F = GF(32003)
FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fiber_product_ring():
    return new_algebra(("x", "y"), relations=("x*y",), field=F, name="R")


def test_01_fiber_product_betti_numbers():
    """beta(k) over k[x,y]/(xy) is (1,2,2,2,2), matching the convolution."""
    R = fiber_product_ring()
    _, betti = minimal_free_resolution(
        ModulePresentation.residue_field(R), 4, 8)
    assert betti.totals() == [1, 2, 2, 2, 2]
    # independent oracle: coefficients of (1+t)/(1-t) = 1, 2, 2, 2, ...
    series = [1]
    for i in range(1, 5):
        series.append(2)
    assert betti.totals() == series


def test_02_poincare_factorization_exact():
    """(1,2,2,2,2) = (1,1,1,1,1) * (1,1,0,0,0) coefficientwise."""
    R = fiber_product_ring()
    v = poincare_factorization_test(R, ["x - y"], 4)
    cert = v.certificate
    assert cert["P_k_R"] == [1, 2, 2, 2, 2]
    assert cert["P_k_Rbar"] == [1, 1, 1, 1, 1]
    assert cert["P_Rbar_R"] == [1, 1, 0, 0, 0]
    assert cert["convolution"] == cert["P_k_R"]
    assert v.state is TriState.UNKNOWN  # match is necessary, not sufficient


def test_03_lifting_verification():
    """Both alternating candidates pass; the constant-x one is not a complex."""
    R = fiber_product_ring()
    problem = LiftingProblem(R, ["x - y"], 4, 8)
    assert check_lifting(problem, alternating_complex(R, ["x", "y"], 4)).proved
    assert check_lifting(problem, alternating_complex(R, ["y", "x"], 4)).proved
    v = check_lifting(problem, alternating_complex(R, ["x"], 4))
    assert v.refuted and "not a complex" in v.reason


def test_04_non_liftability():
    """(x^2) in k[x] is refuted by the minimal-generator test; for the cusp
    the necessary conditions are inconclusive and the retraction search
    settles nonexistence with a replayable certificate at bound 12."""
    kx = new_algebra(("x",), truncation=8, field=F)
    assert thm_minimal_generator_test(kx, ["x^2"]).refuted

    C = new_algebra(("x", "y"), weights=(3, 2), relations=("x^2 - y^3",),
                    truncation=12, field=F, name="C")
    assert thm_minimal_generator_test(C, ["y"]).state is TriState.UNKNOWN
    assert poincare_factorization_test(C, ["y"], 4).state is TriState.UNKNOWN
    T = new_algebra(("t",), weights=(2,), truncation=12, field=F, name="T")
    incl = AlgebraMorphism(T, C, [C.element("y")]).verify()
    res = retraction_search(incl, 12)
    assert res.none_exists and res.bound == 12
    assert res.certificate.replay()


def test_05_section_nonexistence_but_liftable():
    """k over k[xbar]/(xbar^2) lifts to k[x,y]/(xy), yet the quotient map
    admits no section."""
    R = new_algebra(("x", "y"), relations=("x*y",), truncation=8, field=F)
    _, pi = R.quotient(["x - y"])
    res = section_search(pi, 6)
    assert res.none_exists
    assert res.certificate.replay()
    problem = LiftingProblem(R, ["x - y"], 4, 8)
    assert check_lifting(problem, alternating_complex(R, ["x", "y"], 4)).proved


def test_06_socle_case():
    """(y) in k[x,y]/(xy, y^2) is liftable with section + decomposition to
    degree 8; m_R I != 0 is rejected for (x^2) in k[x]."""
    R = new_algebra(("x", "y"), relations=("x*y", "y^2",), field=F)
    dec = socle_case_decide(R, ["y"], bound=8)
    assert dec.liftable and dec.section.found
    assert dec.decomposition.proved
    assert dec.decomposition.bounds.get("checked_degree", 8) >= 8

    kx = new_algebra(("x",), truncation=8, field=F)
    with pytest.raises(LiftingError):
        socle_case_decide(kx, ["x^2"])


def test_07_main_theorem_harness_consistency():
    """All three verdicts positive and mutually consistent on the flat pair."""
    R = new_algebra(("x", "y"), relations=("x^3", "y^2"), field=F, name="R")
    T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
    assert cor44_hypothesis_check(R, "x", 2).proved
    incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
    rep = main_theorem_harness(incl, bound=6, n=3)
    assert rep.flatness.proved
    assert rep.lifting.proved and rep.retraction.found and rep.decomposition.proved
    assert rep.consistent


def test_08_homology_descent_property():
    """100 random complexes over the certified-flat pair: no counterexample
    to H_n(F (x)_T k) = 0 => H_n(F) = 0."""
    from test_properties import _flat_pair, _random_complex
    R, pi = _flat_pair()
    rng = random.Random(42)
    exercised = 0
    for _ in range(100):
        C = _random_complex(rng, R)
        Cbar = base_change(C, pi)
        for n in range(1, C.length):
            if all(v == 0 for v in homology_dims(Cbar, n, 8).values()):
                assert all(v == 0 for v in homology_dims(C, n, 8).values())
                exercised += 1
    assert exercised > 0


def test_09_ring_axioms_and_zero_action():
    """500 random triples per action table satisfy the ring axioms exactly;
    the zero-action semi-fiber product matches the fiber product."""
    from test_properties import _axiom_suite, _fixture_tables
    for k, table in enumerate(_fixture_tables()):
        sfp = semi_fiber_product(table, 6)
        _axiom_suite(sfp, seed=900 + k, count=500)
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    S = new_algebra(("y",), relations=("y^3",), field=F, name="S")
    sfp = semi_fiber_product(validate_action(ActionTable.zero(R, S), 6), 6)
    P = fiber_product(R, S)
    assert [sfp.algebra.dim(e) for e in range(7)] == [P.dim(e) for e in range(7)]


def test_10_determinism():
    """Running the regression corpus twice gives byte-identical reports."""
    for path in sorted(FIXTURES.glob("*.alg")):
        text = path.read_text()
        first = run_manifest(text).to_json()
        second = run_manifest(text).to_json()
        assert first == second, path.name
        golden = FIXTURES / "golden" / (path.stem + ".json")
        assert first == golden.read_text(), path.name
