"""Semi-fiber products, fiber products, trivial extensions, tensor algebras."""

import pytest

from semifiber.algebra import AlgebraMorphism, new_algebra
from semifiber.constructions import (ActionTable, ActionViolation,
                                     decomposition_verify, fiber_product,
                                     psi_isomorphism, semi_fiber_product,
                                     tensor_algebra, trivial_extension,
                                     universal_morphism, validate_action)
from semifiber.fields import GF
from semifiber.homology import ModulePresentation

F = GF(32003)


def make_pair():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    S = new_algebra(("y",), relations=("y^3",), field=F, name="S")
    return R, S


def test_zero_action_gives_fiber_product():
    R, S = make_pair()
    table = validate_action(ActionTable.zero(R, S), 6)
    sfp = semi_fiber_product(table, 6)
    P = fiber_product(R, S)
    A = sfp.algebra
    for e in range(7):
        assert A.dim(e) == P.dim(e)
    # dim A_e = dim R_e + dim S_e for e >= 1
    for e in range(1, 7):
        assert A.dim(e) == R.dim(e) + S.dim(e)


def test_fiber_product_with_k():
    R, _ = make_pair()
    k_alg = new_algebra(("z",), relations=("z",), field=F, name="k")
    P = fiber_product(R, k_alg)
    for e in range(5):
        assert P.dim(e) == R.dim(e)


def test_action_violation_detected():
    R, S = make_pair()
    # x * y = y is not even degree-compatible as a bimodule action over
    # R = k[x]/(x^2): x^2 * y must be 0 but (x*(x*y)) = y != 0
    bad = ActionTable(R, S, {(0, 0): S.ring.parse("y")})
    with pytest.raises(ActionViolation):
        validate_action(bad, 6)


def test_induced_action_and_multiplication():
    R, S = make_pair()
    f = AlgebraMorphism(R, S, [S.element("y^2")]).verify()
    table = validate_action(ActionTable.induced(R, S, f), 6)
    sfp = semi_fiber_product(table, 6)
    # multiply via the formula and via the ambient presentation
    r, y = R.element("1 + x"), S.element("y")
    rp, yp = R.element("2"), S.element("y^2")
    rr, s_part = sfp.multiply_decomposed(r, y, rp, yp)
    lhs = sfp.to_ambient(rr, s_part)
    rhs = sfp.to_ambient(r, y) * sfp.to_ambient(rp, yp)
    assert lhs == rhs


def test_retraction_onto_R():
    R, S = make_pair()
    table = validate_action(ActionTable.zero(R, S), 6)
    sfp = semi_fiber_product(table, 6)
    retr = sfp.retraction_onto_R()
    assert str(retr.images[0]) == "x"
    assert retr.images[1].is_zero()


def test_universal_morphism():
    R, S = make_pair()
    table = validate_action(ActionTable.zero(R, S), 6)
    sfp = semi_fiber_product(table, 6)
    ident = AlgebraMorphism.identity(R)
    u = universal_morphism(sfp, ident, [R.zero()])
    assert u.verified
    assert u.images[-1].is_zero()


def test_trivial_extension():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    E = trivial_extension(R, ModulePresentation.cyclic(R, ["x"]))
    # R |x (R/x): basis 1, x, e with xe = 0, e^2 = 0
    assert E.dim(0) == 1
    assert E.dim(1) == 2
    assert E.dim(2) == 0
    e = E.var("e")
    assert (e * e).is_zero()
    assert (E.var("x") * e).is_zero()


def test_tensor_algebra_decomposes():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    T = new_algebra(("z",), relations=("z^2",), field=F, name="T")
    res = tensor_algebra(R, T)
    A = res.algebra
    assert A.dim(2) == 1  # xz
    v = decomposition_verify(A, [g.value for g in res.u_gens],
                             [g.value for g in res.ideal_gens], 4)
    assert v.proved, v


def test_psi_isomorphism():
    # graded data: x has weight 2 so x -> y^2 preserves degrees
    R = new_algebra(("x",), weights=(2,), relations=("x^2",), field=F, name="R")
    S = new_algebra(("y",), relations=("y^3",), field=F, name="S")
    f = AlgebraMorphism(R, S, [S.element("y^2")]).verify()
    psi, verdict = psi_isomorphism(R, S, f, 6)
    assert verdict.proved, verdict


def test_decomposition_verify_refutes_overlap():
    R = new_algebra(("x", "y"), relations=("x*y",), field=F)
    good = decomposition_verify(R, ["x"], ["y"], 6)
    assert good.proved
    bad = decomposition_verify(R, ["x"], ["x"], 6)
    assert bad.refuted
    assert "witness" in bad.certificate or bad.reason


def test_variable_clash_renamed():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    S = new_algebra(("x",), relations=("x^3",), field=F, name="S")
    P = fiber_product(R, S)
    assert len(set(P.ring.names)) == 2
    assert "x" in P.ring.names and "x_1" in P.ring.names
