"""Presented algebras, element decomposition, morphisms, minimal generators."""

import pytest

from semifiber.algebra import (AlgebraError, AlgebraMorphism, MorphismError,
                               minimal_generators, new_algebra,
                               product_decomposed, recompose)
from semifiber.fields import GF

F = GF(32003)


@pytest.fixture
def R():
    return new_algebra(("x", "y"), relations=("x*y",), field=F, name="R")


def test_constant_term_relation_rejected():
    with pytest.raises(AlgebraError):
        new_algebra(("x",), relations=("x^2 - 1",), field=F)


def test_basis_dims(R):
    assert R.dim(0) == 1
    assert R.dim(1) == 2
    assert R.dim(2) == 2  # x^2, y^2
    assert R.dim(5) == 2


def test_truncation_caps_degrees():
    A = new_algebra(("x",), truncation=3, field=F)
    assert A.dim(3) == 1
    assert A.dim(4) == 0
    assert (A.var(0) ** 4).is_zero()


def test_decompose_recompose(R):
    a = R.element("3 + x + x^2")
    ell, m = a.decompose()
    assert ell == F.of_int(3)
    assert str(m) == "x^2 + x"
    assert recompose(R, ell, m) == a


def test_decompose_rejects_nothing_scalar_is_zero(R):
    a = R.element("x")
    ell, m = a.decompose()
    assert ell == F.zero and not m.is_zero()
    assert a.in_maximal_ideal()
    assert not R.element("1 + x").in_maximal_ideal()


def test_product_decomposed_formula(R):
    # (l + x)(l' + x') = ll' + (l x' + l' x + x x')
    a = R.element("2 + x")
    b = R.element("5 + y")
    prod = product_decomposed(a, b)
    assert prod == a * b
    assert prod.scalar_part == F.of_int(10)


def test_element_arithmetic_mod_relations(R):
    x, y = R.var("x"), R.var("y")
    assert (x * y).is_zero()
    assert ((x + y) ** 2) == x * x + y * y


def test_morphism_verify_and_reject():
    R = new_algebra(("x",), relations=("x^3",), field=F, name="R")
    S = new_algebra(("t",), relations=("t^3",), field=F, name="S")
    f = AlgebraMorphism(R, S, [S.element("t")]).verify()
    assert f.is_graded()
    # t -> t would not kill x^3 if the target had t^4 != 0
    S4 = new_algebra(("t",), relations=("t^4",), field=F)
    with pytest.raises(MorphismError):
        AlgebraMorphism(R, S4, [S4.element("t")]).verify()
    # image with a scalar part is not local
    with pytest.raises(MorphismError):
        AlgebraMorphism(R, S, [S.element("1 + t")]).verify()


def test_morphism_compose_and_kernel():
    R = new_algebra(("x", "y"), relations=("x*y",), field=F, name="R")
    Rbar, pi = R.quotient(["x - y"])
    assert pi.verified
    ker = pi.kernel(6)
    # kernel of R -> R/(x - y) contains x - y
    gens = [g.map_ring(R.ring, [0, 1]) for g in ker.groebner]
    from semifiber.poly import Ideal
    assert Ideal(R.ring, gens).contains(R.ring.parse("x - y"))
    ident = AlgebraMorphism.identity(R)
    assert ident.compose(ident).images == ident.images


def test_graded_bijective():
    R = new_algebra(("x", "y"), relations=("x*y",), truncation=8, field=F)
    f = AlgebraMorphism(R, R, [R.element("y"), R.element("x")]).verify()
    ok, fail = f.graded_bijective_to(6)
    assert ok  # the swap is a graded automorphism
    g = AlgebraMorphism(R, R, [R.element("x"), R.element("0")]).verify()
    ok, fail = g.graded_bijective_to(6)
    assert not ok and fail == 1


def test_minimal_generators_nakayama():
    R = new_algebra(("x", "y"), relations=("x*y",), field=F)
    gens, nu = minimal_generators(R, ["x", "x^2", "y"])
    assert nu == 2
    assert [str(g) for g in gens] == ["x", "y"]
    # redundant generator expressed through earlier ones
    gens2, nu2 = minimal_generators(R, ["x - y", "x^2 + y^2"])
    assert nu2 == 1


def test_minimal_generators_socle_square():
    R = new_algebra(("x",), relations=("x^3",), field=F)
    gens, nu = minimal_generators(R, ["x^2"])
    assert nu == 1  # x^2 generates a nonzero ideal minimally by itself
