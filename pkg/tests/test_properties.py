"""Seeded randomized properties: semi-fiber ring axioms and homology
descent over flat pairs."""

import random

from semifiber.algebra import AlgebraMorphism, new_algebra
from semifiber.constructions import (ActionTable, semi_fiber_product,
                                     fiber_product, validate_action)
from semifiber.fields import GF
from semifiber.homology import FreeComplex, base_change, homology_dims
from semifiber.lifting import LiftingProblem  # noqa: F401  (import sanity)

F = GF(32003)


# ---------------------------------------------------------------------------
# ring axioms for the semi-fiber multiplication


def _random_pair(rng, sfp):
    """A random element of R |x S as (r, y) with r in R and y in m_S."""
    r = sfp.R.random_element(rng, 3)
    y = sfp.S.random_element(rng, 3, scalar=False)
    return r, y.m_part


def _mul(sfp, a, b):
    return sfp.multiply_decomposed(a[0], a[1], b[0], b[1])


def _add(sfp, a, b):
    return a[0] + b[0], sfp.S.nf(a[1] + b[1])


def _eq(sfp, a, b):
    return a[0] == b[0] and sfp.S.nf(a[1] - b[1]).is_zero()


def _axiom_suite(sfp, seed, count):
    rng = random.Random(seed)
    one = (sfp.R.element("1"), sfp.S.ring.zero())
    for _ in range(count):
        a, b, c = (_random_pair(rng, sfp) for _ in range(3))
        assert _eq(sfp, _mul(sfp, a, b), _mul(sfp, b, a))
        assert _eq(sfp, _mul(sfp, _mul(sfp, a, b), c),
                   _mul(sfp, a, _mul(sfp, b, c)))
        assert _eq(sfp, _mul(sfp, a, _add(sfp, b, c)),
                   _add(sfp, _mul(sfp, a, b), _mul(sfp, a, c)))
        assert _eq(sfp, _mul(sfp, a, one), a)


def _fixture_tables():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    S = new_algebra(("y",), relations=("y^3",), field=F, name="S")
    zero = validate_action(ActionTable.zero(R, S), 6)
    f = AlgebraMorphism(R, S, [S.element("y^2")]).verify()
    induced = validate_action(ActionTable.induced(R, S, f), 6)
    return [zero, induced]


def test_ring_axioms_500_triples_per_table():
    for k, table in enumerate(_fixture_tables()):
        sfp = semi_fiber_product(table, 6)
        _axiom_suite(sfp, seed=100 + k, count=500)


def test_formula_agrees_with_ambient_product():
    rng = random.Random(5)
    for table in _fixture_tables():
        sfp = semi_fiber_product(table, 6)
        for _ in range(50):
            a, b = _random_pair(rng, sfp), _random_pair(rng, sfp)
            lhs = sfp.to_ambient(*_mul(sfp, a, b))
            rhs = sfp.to_ambient(*a) * sfp.to_ambient(*b)
            assert lhs == rhs


def test_zero_action_matches_fiber_product_degreewise():
    R = new_algebra(("x",), relations=("x^2",), field=F, name="R")
    S = new_algebra(("y",), relations=("y^3",), field=F, name="S")
    sfp = semi_fiber_product(validate_action(ActionTable.zero(R, S), 6), 6)
    P = fiber_product(R, S)
    for e in range(7):
        assert sfp.algebra.dim(e) == P.dim(e)


# ---------------------------------------------------------------------------
# homology descent (flat base): H_n(F (x)_T k) = 0 implies H_n(F) = 0


def _flat_pair():
    """T = k[t]/(t^3) inside R = k[x,y]/(x^3, y^2), with pi: R -> R/(x)."""
    R = new_algebra(("x", "y"), relations=("x^3", "y^2"), field=F, name="R")
    T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
    AlgebraMorphism(T, R, [R.element("x")]).verify()
    _, pi = R.quotient(["x"])
    return R, pi


# rank-one differential pairs (a, b) with a*b = 0 in R, by entry degree
_PIECES = [("x", "x^2"), ("x^2", "x"), ("y", "y"), ("x^2", "x*y"),
           ("x*y", "x^2"), ("x*y", "y"), ("y", "x*y")]


def _random_complex(rng, R, length=3):
    """Graded complex with d^2 = 0: a direct sum of rank-one zerodivisor
    pieces mixed by degree-compatible elementary column operations."""
    npieces = rng.randrange(1, 4)
    shifts = [[] for _ in range(length + 1)]
    entries = []   # per piece: list of (level entry poly)
    for p in range(npieces):
        a, b = _PIECES[rng.randrange(len(_PIECES))]
        pa, pb = R.ring.parse(a), R.ring.parse(b)
        offset = rng.randrange(3)
        degs = [offset]
        seq = []
        for i in range(length):
            e = pa if i % 2 == 0 else pb
            seq.append(e)
            degs.append(degs[-1] + e.degree())
        entries.append(seq)
        for lvl in range(length + 1):
            shifts[lvl].append(degs[lvl])
    diffs = []
    for i in range(1, length + 1):
        mat = [[R.ring.zero()] * npieces for _ in range(npieces)]
        for p in range(npieces):
            mat[p][p] = entries[p][i - 1]
        diffs.append(mat)
    # elementary operations: basis change at a middle level, exact d^2 = 0
    for _ in range(rng.randrange(6)):
        lvl = rng.randrange(1, length)
        c1, c2 = rng.randrange(npieces), rng.randrange(npieces)
        if c1 == c2:
            continue
        ddeg = shifts[lvl][c1] - shifts[lvl][c2]
        if ddeg < 0:
            continue
        cands = R.basis(ddeg)
        if not cands:
            continue
        from semifiber.poly import Poly
        h = Poly(R.ring, {cands[rng.randrange(len(cands))]: F.one})
        lower = diffs[lvl - 1]      # d_lvl: columns indexed by level-lvl basis
        for r in range(npieces):
            lower[r][c1] = R.nf(lower[r][c1] + h * lower[r][c2])
        if lvl < length:
            upper = diffs[lvl]      # d_{lvl+1}: rows indexed by level-lvl basis
            for c in range(npieces):
                upper[c2][c] = R.nf(upper[c2][c] - h * upper[c1][c])
    return FreeComplex(R, shifts, diffs).verify()


def test_homology_descent_100_random_complexes():
    R, pi = _flat_pair()
    rng = random.Random(42)
    checked = 0
    for _ in range(100):
        C = _random_complex(rng, R)
        Cbar = base_change(C, pi)
        for n in range(1, C.length):
            if all(v == 0 for v in homology_dims(Cbar, n, 8).values()):
                assert all(v == 0 for v in homology_dims(C, n, 8).values()), \
                    (n, C.shifts)
                checked += 1
    assert checked > 0  # the property was exercised, not vacuous
