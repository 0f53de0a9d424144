"""Lifting checks, necessary conditions, searches, and the harness."""

import pytest

from semifiber.algebra import AlgebraMorphism, new_algebra
from semifiber.fields import GF
from semifiber.lifting import (LiftingError, LiftingProblem,
                               alternating_complex, check_lifting,
                               cor44_hypothesis_check, ext2_sufficiency,
                               main_theorem_harness, mT_generates_check,
                               poincare_factorization_test,
                               regular_sequence_check, retraction_search,
                               section_search, socle_case_decide,
                               thm_minimal_generator_test)
from semifiber.verdicts import SearchOutcome, TriState

F = GF(32003)


def R_xy3y2():
    return new_algebra(("x", "y"), relations=("x^3", "y^2"), field=F, name="R")


# ---- check_lifting


def test_check_lifting_verified():
    R = R_xy3y2()
    problem = LiftingProblem(R, ["x"], 4, 6)  # Rbar = k[y]/(y^2)
    L = alternating_complex(R, ["y"], 4)
    assert check_lifting(problem, L).proved


def test_check_lifting_rejects_non_complex():
    R = R_xy3y2()
    problem = LiftingProblem(R, ["x"], 4, 6)
    bad = alternating_complex(R, ["x"], 4)  # x*x != 0
    v = check_lifting(problem, bad)
    assert v.refuted and "not a complex" in v.reason


def test_check_lifting_shift_mismatch():
    R = R_xy3y2()
    problem = LiftingProblem(R, ["y"], 4, 8)  # Rbar = k[x]/(x^3)
    good = alternating_complex(R, ["x", "x^2"], 4)
    assert check_lifting(problem, good).proved
    wrong = alternating_complex(R, ["x^2", "x"], 4)
    assert check_lifting(problem, wrong).refuted


# ---- necessary conditions


def test_minimal_generator_test_refutes():
    R = new_algebra(("x",), relations=("x^3",), field=F)
    v = thm_minimal_generator_test(R, ["x^2"])
    assert v.refuted and "not liftable" in v.reason


def test_minimal_generator_test_inconclusive():
    R = new_algebra(("x", "y"), relations=("x^2", "x*y", "y^2"), field=F)
    v = thm_minimal_generator_test(R, ["x"])
    assert v.state is TriState.UNKNOWN


def test_poincare_factorization_match():
    R = new_algebra(("x", "y"), relations=("x*y",), field=F)
    v = poincare_factorization_test(R, ["x - y"], 4)
    assert v.state is TriState.UNKNOWN  # necessary condition holds
    cert = v.certificate
    assert cert["P_k_R"] == [1, 2, 2, 2, 2]
    assert cert["P_k_Rbar"] == [1, 1, 1, 1, 1]
    assert cert["P_Rbar_R"] == [1, 1, 0, 0, 0]
    assert cert["nu_identity"] == {"nu_m": 2, "nu_mbar": 1, "nu_I": 1}


def test_ext2_sufficiency():
    kx = new_algebra(("x",), truncation=8, field=F)
    assert ext2_sufficiency(kx).proved
    Rq = new_algebra(("x",), relations=("x^3",), field=F)
    assert ext2_sufficiency(Rq).state is TriState.UNKNOWN


# ---- searches


def test_retraction_found():
    R = R_xy3y2()
    T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
    incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
    res = retraction_search(incl, 6)
    assert res.found
    assert str(res.witness.images[0]) == "t"
    assert res.witness.images[1].is_zero()


def test_retraction_none_exists_cusp():
    R = new_algebra(("x", "y"), weights=(3, 2), relations=("x^2 - y^3",),
                    truncation=12, field=F, name="R")
    T = new_algebra(("t",), weights=(2,), truncation=12, field=F, name="T")
    incl = AlgebraMorphism(T, R, [R.element("y")]).verify()
    res = retraction_search(incl, 12)
    assert res.none_exists
    assert res.certificate.replay()
    doc = res.certificate.to_json()
    assert doc["bound"] == 12 and doc["trace"]


def test_section_none_exists():
    R = new_algebra(("x", "y"), relations=("x*y",), truncation=8, field=F)
    _, pi = R.quotient(["x - y"])  # Rbar = k[xbar]/(xbar^2)
    res = section_search(pi, 6)
    assert res.none_exists
    assert res.certificate.replay()


def test_section_found():
    R = new_algebra(("x", "y"), relations=("x^2", "x*y", "y^2"), field=F)
    _, pi = R.quotient(["x"])
    res = section_search(pi, 4)
    assert res.found


# ---- socle case


def test_socle_liftable():
    R = new_algebra(("x", "y"), relations=("x*y", "y^2"), field=F)
    dec = socle_case_decide(R, ["y"], bound=8)
    assert dec.liftable and dec.verdict.proved
    assert dec.section.found
    assert dec.decomposition.proved


def test_socle_precondition_rejected():
    kx = new_algebra(("x",), truncation=8, field=F)
    with pytest.raises(LiftingError):
        socle_case_decide(kx, ["x^2"], bound=4)


def test_socle_not_liftable():
    R = new_algebra(("x", "y"), relations=("x^2", "y^2"), field=F)
    dec = socle_case_decide(R, ["x*y"], bound=4)
    assert not dec.liftable and dec.verdict.refuted


# ---- regularity / colon conditions


def test_regular_sequence():
    R = new_algebra(("x", "y"), truncation=8, field=F)
    assert regular_sequence_check(R, ["x", "y"]).proved
    v = regular_sequence_check(R, ["x", "x*y"])
    assert v.refuted


def test_cor44():
    R = R_xy3y2()
    assert cor44_hypothesis_check(R, "x", 2).proved
    assert cor44_hypothesis_check(R, "y", 2).refuted


def test_mT_generates():
    R = R_xy3y2()
    T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
    incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
    assert mT_generates_check(incl).refuted  # y is missing
    T2 = new_algebra(("a", "b"), relations=("a^3", "b^2"), field=F)
    full = AlgebraMorphism(T2, R, [R.element("x"), R.element("y")]).verify()
    assert mT_generates_check(full).proved


# ---- harness


def test_harness_positive():
    R = R_xy3y2()
    T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
    incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
    rep = main_theorem_harness(incl, bound=6, n=3)
    assert rep.lifting.proved
    assert rep.retraction.found
    assert rep.decomposition.proved
    assert rep.consistent


def test_harness_negative_cusp():
    R = new_algebra(("x", "y"), weights=(3, 2), relations=("x^2 - y^3",),
                    truncation=12, field=F, name="R")
    T = new_algebra(("t",), weights=(2,), truncation=12, field=F, name="T")
    incl = AlgebraMorphism(T, R, [R.element("y")]).verify()
    rep = main_theorem_harness(incl, bound=12, n=3)
    assert rep.retraction.none_exists
    assert rep.lifting.refuted
    assert rep.consistent


def test_harness_requires_flatness():
    R = new_algebra(("x", "y"), relations=("x*y",), truncation=8, field=F)
    T = new_algebra(("t",), truncation=8, field=F)
    incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
    with pytest.raises(LiftingError):
        main_theorem_harness(incl, bound=6, n=3)
