"""Finitely presented graded k-algebras with a distinguished rational point.

A PresentedAlgebra is k[x_1..x_n]/J with all relations in the maximal ideal
m = (x_1..x_n), so k -> R -> R/m is an isomorphism and every element splits
uniquely into a scalar part and an m-part.  An optional truncation degree d
kills everything of weighted degree > d, which is how complete local rings
are modeled as finite avatars.
"""

from __future__ import annotations

from .fields import DEFAULT_FIELD
from .linalg import SpanTracker, rank
from .poly import Ideal, Poly, PolyRing, morphism_kernel_truncated


class AlgebraError(ValueError):
    pass


class MorphismError(AlgebraError):
    pass


class PresentedAlgebra:
    def __init__(self, names, weights=None, relations=(), truncation=None,
                 field=DEFAULT_FIELD, name=""):
        self.ring = PolyRing(field, tuple(names), weights)
        self.name = name or "R"
        self.truncation = truncation
        rels = [r if isinstance(r, Poly) else self.ring.parse(r) for r in relations]
        for r in rels:
            if r.is_zero():
                continue
            if r.constant_term() != field.zero:
                raise AlgebraError(
                    f"relation {r} has nonzero constant term; the distinguished "
                    "maximal ideal would not be a rational point")
        self.base_relations = [r for r in rels if not r.is_zero()]
        gens = list(self.base_relations)
        if truncation is not None:
            if truncation < 0:
                raise AlgebraError("truncation degree must be >= 0")
            gens += self._truncation_monomials(truncation)
        self.relations = Ideal(self.ring, gens)
        self.relations.groebner  # validate and cache eagerly

    def _truncation_monomials(self, d):
        """Minimal monomials of weighted degree > d (kills all higher pieces)."""
        ring = self.ring
        out = []
        for e in range(d + 1, d + max(ring.weights) + 1):
            for m in ring.monomials_of_degree(e):
                if all(m[i] == 0 or ring.wdeg(m) - ring.weights[i] <= d
                       for i in range(ring.nvars)):
                    out.append(Poly(ring, {m: ring.field.one}))
        return out

    # ---- basic data ----

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self):
        return self.ring.nvars

    def is_graded(self) -> bool:
        return all(r.is_homogeneous() for r in self.base_relations)

    def nf(self, p: Poly) -> Poly:
        return self.relations.normal_form(p)

    def basis(self, e: int):
        """Standard-monomial k-basis of the degree-e graded piece."""
        if e < 0 or (self.truncation is not None and e > self.truncation):
            return []
        return self.relations.std_monomials(e)

    def dim(self, e: int) -> int:
        return len(self.basis(e))

    def effective_bound(self, default: int) -> int:
        """Requested degree bound, capped at the truncation."""
        if self.truncation is None:
            return default
        return min(self.truncation, default)

    # ---- elements ----

    def element(self, p) -> "AlgebraElement":
        if isinstance(p, AlgebraElement):
            if p.algebra is not self and p.algebra != self:
                raise AlgebraError("element of a different algebra")
            return p
        if isinstance(p, str):
            p = self.ring.parse(p)
        elif isinstance(p, int):
            p = self.ring.const(self.field.of_int(p))
        return AlgebraElement(self, self.nf(p))

    def zero(self):
        return self.element(self.ring.zero())

    def one(self):
        return self.element(self.ring.one())

    def var(self, i_or_name):
        i = i_or_name if isinstance(i_or_name, int) else self.ring.names.index(i_or_name)
        return self.element(self.ring.var(i))

    def vars(self):
        return [self.var(i) for i in range(self.nvars)]

    def maximal_ideal_gens(self):
        return self.vars()

    def random_element(self, rng, max_degree, scalar=True):
        """Deterministic (given rng) element with terms of degree <= max_degree."""
        f = self.field
        terms = {}
        lo = 0 if scalar else 1
        for e in range(lo, max_degree + 1):
            for m in self.basis(e):
                if rng.random() < 0.5:
                    c = f.of_int(rng.randrange(1, 7))
                    terms[m] = c
        return self.element(Poly(self.ring, terms))

    # ---- vectorization over graded pieces (degrees 1..bound or 0..bound) ----

    def basis_index(self, lo, hi):
        idx = {}
        for e in range(lo, hi + 1):
            for m in self.basis(e):
                idx[m] = len(idx)
        return idx

    def vectorize(self, p: Poly, idx):
        v = [self.field.zero] * len(idx)
        for m, c in self.nf(p).terms.items():
            if m not in idx:
                raise AlgebraError(
                    f"term {self.ring.mono_str(m)} outside the vectorized degree range")
            v[idx[m]] = c
        return v

    # ---- quotients ----

    def quotient(self, extra_relations, name=""):
        """(R/I, pi) for the ideal generated by extra_relations."""
        extra = [self.element(g).value for g in extra_relations]
        q = PresentedAlgebra(
            self.ring.names, self.ring.weights,
            self.base_relations + extra,
            truncation=self.truncation, field=self.field,
            name=name or self.name + "_bar")
        pi = AlgebraMorphism(self, q, [q.var(i) for i in range(self.nvars)],
                             name="pi").verify()
        return q, pi

    def __eq__(self, other):
        return (isinstance(other, PresentedAlgebra)
                and self.ring == other.ring
                and self.truncation == other.truncation
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.ring, self.truncation))

    def __repr__(self):
        rels = ", ".join(map(str, self.base_relations)) or "0"
        t = f", trunc={self.truncation}" if self.truncation is not None else ""
        return f"{self.name} = {self.ring}/({rels}){t}"


class AlgebraElement:
    """Normal-form element r = scalar_part + m_part of a presented algebra."""

    __slots__ = ("algebra", "value")

    def __init__(self, algebra, value: Poly):
        self.algebra = algebra
        self.value = value

    @property
    def scalar_part(self):
        return self.value.constant_term()

    @property
    def m_part(self) -> Poly:
        zero_exp = (0,) * self.algebra.nvars
        return Poly(self.algebra.ring,
                    {m: c for m, c in self.value.terms.items() if m != zero_exp})

    def decompose(self):
        return self.scalar_part, self.m_part

    def in_maximal_ideal(self) -> bool:
        return self.scalar_part == self.algebra.field.zero

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other
        return self.algebra.element(other)

    def __add__(self, other):
        return AlgebraElement(self.algebra,
                              self.algebra.nf(self.value + self._coerce(other).value))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.value)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        return AlgebraElement(self.algebra,
                              self.algebra.nf(self.value * self._coerce(other).value))

    __rmul__ = __mul__

    def __pow__(self, n):
        return AlgebraElement(self.algebra, self.algebra.nf(self.value ** n))

    def __eq__(self, other):
        if isinstance(other, (AlgebraElement, Poly, int, str)):
            return self.value == self._coerce(other).value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return str(self.value)


def recompose(algebra, scalar, m_part: Poly) -> AlgebraElement:
    return algebra.element(algebra.ring.const(scalar) + m_part)


def product_decomposed(r: AlgebraElement, rp: AlgebraElement) -> AlgebraElement:
    """Multiply via the decomposition formula r r' = ll' + (l x' + l' x + x x')."""
    if r.algebra != rp.algebra:
        raise AlgebraError("elements of different algebras")
    A = r.algebra
    l, x = r.decompose()
    lp, xp = rp.decompose()
    f = A.field
    m_part = A.nf(x * lp + xp * l + x * xp)
    return recompose(A, f.mul(l, lp), m_part)


class AlgebraMorphism:
    """k-algebra map given by images of the source variables.

    Verification checks that every source relation maps to zero and every
    image lies in the target's maximal ideal (so f(m_R) subset of m_S).
    """

    def __init__(self, source, target, images, name="f", verified=False):
        if len(images) != source.nvars:
            raise MorphismError("one image per source variable required")
        self.source = source
        self.target = target
        self.images = [target.element(im) for im in images]
        self.name = name
        self.verified = verified

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra, algebra.vars(), name="id", verified=True)

    def apply_poly(self, p: Poly) -> AlgebraElement:
        tgt = self.target
        f = tgt.field
        acc = tgt.ring.zero()
        pow_cache = {}
        for m, c in p.terms.items():
            term = tgt.ring.const(c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in pow_cache:
                        pow_cache[(i, e)] = (self.images[i].value ** e)
                    term = term * pow_cache[(i, e)]
            acc = acc + term
        return tgt.element(acc)

    def __call__(self, elem) -> AlgebraElement:
        if isinstance(elem, AlgebraElement):
            elem = elem.value
        elif isinstance(elem, str):
            elem = self.source.ring.parse(elem)
        return self.apply_poly(elem)

    def verify(self) -> "AlgebraMorphism":
        for im in self.images:
            if not im.in_maximal_ideal():
                raise MorphismError(
                    f"image {im} has nonzero constant term (violates f(m) in m)")
        for r in self.source.relations.gens:
            if not self.apply_poly(r).is_zero():
                raise MorphismError(
                    f"relation {r} maps to {self.apply_poly(r)} != 0")
        self.verified = True
        return self

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        """self after inner (inner first)."""
        if inner.target != self.source:
            raise MorphismError("composition mismatch")
        return AlgebraMorphism(inner.source, self.target,
                               [self(im) for im in inner.images],
                               name=f"{self.name}.{inner.name}",
                               verified=self.verified and inner.verified)

    def is_graded(self) -> bool:
        sw = self.source.ring.weights
        for i, im in enumerate(self.images):
            if im.is_zero():
                continue
            d = im.value.homogeneous_degree()
            if d is None or d != sw[i]:
                return False
        return True

    def kernel(self, d) -> Ideal:
        """Generators (degree <= d) of the kernel ideal, including relations."""
        return morphism_kernel_truncated(
            [im.value for im in self.images],
            self.source.ring.names, self.source.ring.weights, d,
            target_relations=self.target.relations.groebner)

    def is_injective_to(self, d) -> bool:
        ker = self.kernel(d)
        return all(self.source.relations.contains(
            g.map_ring(self.source.ring, list(range(self.source.nvars))))
            for g in ker.groebner)

    def slice_matrix(self, e):
        """Matrix (rows = source basis monomials) of the degree-e slice.

        Only meaningful for graded morphisms.
        """
        src, tgt = self.source, self.target
        tbasis = tgt.basis(e)
        tidx = {m: i for i, m in enumerate(tbasis)}
        rows = []
        for m in src.basis(e):
            img = self.apply_poly(Poly(src.ring, {m: src.field.one}))
            row = [src.field.zero] * len(tbasis)
            for mm, c in img.value.terms.items():
                row[tidx[mm]] = c
            rows.append(row)
        return rows, len(tbasis)

    def graded_bijective_to(self, d):
        """(ok, failing_degree) for bijectivity on all graded pieces <= d."""
        if not self.is_graded():
            return False, -1
        for e in range(d + 1):
            rows, ncols = self.slice_matrix(e)
            if len(rows) != ncols or rank(self.source.field, rows) != ncols:
                return False, e
        return True, d

    def __repr__(self):
        ims = ", ".join(f"{n} -> {im}" for n, im in zip(self.source.ring.names, self.images))
        return f"{self.name}: {self.source.name} -> {self.target.name} [{ims}]"


def new_algebra(names, weights=None, relations=(), truncation=None,
                field=DEFAULT_FIELD, name="R") -> PresentedAlgebra:
    return PresentedAlgebra(names, weights, relations, truncation, field, name)


def minimal_generators(algebra: PresentedAlgebra, gens, bound=None):
    """Minimal generating set of an ideal I in m, and nu = dim_k I/mI.

    Graded Nakayama at the (truncation-limited) bound: a generator is kept
    iff it enlarges the span of m*I plus the previously kept generators.
    """
    elems = [algebra.element(g) for g in gens]
    elems = [g for g in elems if not g.is_zero()]
    for g in elems:
        if not g.in_maximal_ideal():
            raise AlgebraError(f"generator {g} is not in the maximal ideal")
    if not elems:
        return [], 0
    degs = [g.value.degree() for g in elems]
    if bound is None:
        bound = max(degs)
        if algebra.truncation is not None:
            bound = min(bound, algebra.truncation)
    if algebra.truncation is None and not all(g.value.is_homogeneous() for g in elems):
        raise AlgebraError(
            "minimal_generators needs homogeneous generators or a truncated algebra")
    idx = algebra.basis_index(1, bound)
    tracker = SpanTracker(algebra.field, len(idx))
    # span of m * I within degrees <= bound
    for g in elems:
        gdeg = min(algebra.ring.wdeg(m) for m in g.value.terms)
        for e in range(1, bound - gdeg + 1):
            for mu in algebra.ring.monomials_of_degree(e):
                prod = algebra.nf(g.value.mul_term(mu, algebra.field.one))
                prod = Poly(algebra.ring,
                            {m: c for m, c in prod.terms.items()
                             if algebra.ring.wdeg(m) <= bound})
                if prod.terms:
                    tracker.add(algebra.vectorize(prod, idx))
    chosen = []
    order = sorted(range(len(elems)), key=lambda i: (degs[i], i))
    for i in order:
        v = algebra.vectorize(
            Poly(algebra.ring, {m: c for m, c in elems[i].value.terms.items()
                                if algebra.ring.wdeg(m) <= bound}), idx)
        if tracker.add(v):
            chosen.append(elems[i])
    return chosen, len(chosen)
