"""Semi-fiber products and their relatives: fiber products, trivial
extensions, tensor algebras, the psi isomorphism, and the u + I
characterization.

An action of R on m_S is stored per generator pair: entries[(i, j)] is the
element x_i * y_j of m_S.  The action extends to all of R x m_S by
S-linearity (peel one S-variable off each monomial) and composition, and is
validated degree-by-degree: a certificate never claims more than its checked
degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraElement, AlgebraError, AlgebraMorphism,
                      PresentedAlgebra)
from .homology import ModulePresentation
from .linalg import SpanTracker, kernel_basis
from .poly import Poly
from .verdicts import TriState, Verdict


class ConstructionError(ValueError):
    pass


class ActionViolation(ConstructionError):
    """A validation identity failed; names the identity and the degree."""

    def __init__(self, identity, degree, detail):
        self.identity = identity
        self.degree = degree
        super().__init__(f"{identity} fails at degree {degree}: {detail}")


# ---- action tables ----


class ActionTable:
    """The R-action * on m_S, given on generator pairs x_i * y_j."""

    def __init__(self, R: PresentedAlgebra, S: PresentedAlgebra, entries):
        self.R = R
        self.S = S
        self.entries = {}
        for (i, j), a in entries.items():
            elem = S.element(a)
            if not elem.in_maximal_ideal():
                raise ConstructionError(f"action entry x_{i}*y_{j} = {elem} not in m_S")
            self.entries[(i, j)] = elem.value
        for i in range(R.nvars):
            for j in range(S.nvars):
                if (i, j) not in self.entries:
                    raise ConstructionError(f"missing action entry for pair ({i},{j})")
        self.validated = None  # degree up to which the table is validated

    @classmethod
    def zero(cls, R, S):
        """m_R * m_S = 0: the fiber product action."""
        z = S.ring.zero()
        return cls(R, S, {(i, j): z for i in range(R.nvars) for j in range(S.nvars)})

    @classmethod
    def induced(cls, R, S, f: AlgebraMorphism):
        """Action through a verified k-algebra map f: R -> S (x * y = f(x) y)."""
        if not f.verified:
            f.verify()
        if f.source != R or f.target != S:
            raise ConstructionError("f must be a morphism R -> S")
        entries = {(i, j): (f.images[i] * S.var(j)).value
                   for i in range(R.nvars) for j in range(S.nvars)}
        return cls(R, S, entries)

    # extension of * to all of R x m_S

    def star_var(self, i: int, s: Poly) -> Poly:
        """x_i * s for s in m_S (peels the lowest-index S-variable)."""
        S = self.S
        acc = S.ring.zero()
        for m, c in s.terms.items():
            j = next((jj for jj, e in enumerate(m) if e), None)
            if j is None:
                raise ConstructionError("action applied to element with constant term")
            rest = tuple(e - (1 if jj == j else 0) for jj, e in enumerate(m))
            acc = acc + self.entries[(i, j)].mul_term(rest, c)
        return S.nf(acc)

    def star_mono(self, exp, s: Poly) -> Poly:
        for i, e in enumerate(exp):
            for _ in range(e):
                if s.is_zero():
                    return s
                s = self.star_var(i, s)
        return s

    def star(self, r, s) -> Poly:
        """r * s for r in R, s in m_S: scalar part acts by scaling."""
        if isinstance(r, AlgebraElement):
            r = r.value
        if isinstance(s, AlgebraElement):
            s = s.m_part
        S = self.S
        acc = s * r.constant_term()
        zero_exp = (0,) * self.R.nvars
        for m, c in r.terms.items():
            if m == zero_exp:
                continue
            acc = acc + self.star_mono(m, s) * c
        return S.nf(acc)

    def __repr__(self):
        es = ", ".join(f"{self.R.ring.names[i]}*{self.S.ring.names[j]}={a}"
                       for (i, j), a in sorted(self.entries.items()))
        v = f", validated to {self.validated}" if self.validated is not None else ""
        return f"ActionTable({es}{v})"


def validate_action(table: ActionTable, d: int) -> ActionTable:
    """Check the bimodule identities degree-by-degree up to total degree d.

    Raises ActionViolation naming the first failed identity; on success
    returns the table with .validated = d.
    """
    R, S = table.R, table.S
    wR, wS = R.ring.weights, S.ring.weights
    # extraction consistency: x_i * (y_j y_j') independent of the peeled variable
    for i in range(R.nvars):
        for j in range(S.nvars):
            for jp in range(j + 1, S.nvars):
                deg = wR[i] + wS[j] + wS[jp]
                if deg > d:
                    continue
                lhs = S.nf(table.entries[(i, j)] * S.ring.var(jp))
                rhs = S.nf(table.entries[(i, jp)] * S.ring.var(j))
                if lhs != rhs:
                    raise ActionViolation(
                        f"S-linearity on {R.ring.names[i]}*({S.ring.names[j]}"
                        f"*{S.ring.names[jp]})", deg, f"{lhs} != {rhs}")
    # bimodule law: x_i * (y_j s) = (x_i * y_j) s on basis monomials
    for i in range(R.nvars):
        for j in range(S.nvars):
            for e in range(1, d - wR[i] - wS[j] + 1):
                for mu in S.basis(e):
                    s = Poly(S.ring, {mu: S.field.one})
                    lhs = table.star_var(i, S.nf(S.ring.var(j) * s))
                    rhs = S.nf(table.entries[(i, j)] * s)
                    if lhs != rhs:
                        raise ActionViolation(
                            f"bimodule law {R.ring.names[i]}*({S.ring.names[j]}"
                            f"*mono)", wR[i] + wS[j] + e, f"{lhs} != {rhs}")
    # commutativity of the action: x_i * (x_i' * s) = x_i' * (x_i * s)
    for i in range(R.nvars):
        for ip in range(i + 1, R.nvars):
            for e in range(1, d - wR[i] - wR[ip] + 1):
                for mu in S.basis(e):
                    s = Poly(S.ring, {mu: S.field.one})
                    lhs = table.star_var(i, table.star_var(ip, s))
                    rhs = table.star_var(ip, table.star_var(i, s))
                    if lhs != rhs:
                        raise ActionViolation(
                            f"commutativity {R.ring.names[i]}*{R.ring.names[ip]}",
                            wR[i] + wR[ip] + e, f"{lhs} != {rhs}")
    # relations of R act as zero
    for g in R.relations.gens:
        gdeg = g.degree()
        for e in range(1, d - (gdeg or 0) + 1):
            for mu in S.basis(e):
                s = Poly(S.ring, {mu: S.field.one})
                res = table.star(g, s)
                if not res.is_zero():
                    raise ActionViolation(
                        f"R-relation {g} acting as zero", (gdeg or 0) + e,
                        f"got {res}")
    table.validated = d
    return table


# ---- combined presentations ----


def _combine(R: PresentedAlgebra, S: PresentedAlgebra, name):
    """Union of variables with deterministic clash renaming.

    Returns (names, weights, r_index, s_index, renames, truncation, field).
    """
    if R.field != S.field:
        raise ConstructionError("mixed coefficient fields")
    names = list(R.ring.names)
    renames = {}
    s_names = []
    for n in S.ring.names:
        nn = n
        while nn in names or nn in s_names:
            nn = nn + "_1"
        if nn != n:
            renames[n] = nn
        s_names.append(nn)
    names += s_names
    weights = R.ring.weights + S.ring.weights
    truncs = [t for t in (R.truncation, S.truncation) if t is not None]
    trunc = min(truncs) if truncs else None
    return names, weights, list(range(R.nvars)), \
        list(range(R.nvars, R.nvars + S.nvars)), renames, trunc


@dataclass
class SemiFiberPresentation:
    """A = R |x S presented as k[x u y]/(J_R + J_S + (x_i y_j - a_ij))."""

    action: ActionTable
    algebra: PresentedAlgebra
    embed_R: AlgebraMorphism
    embed_S: AlgebraMorphism
    renames: dict
    checked_degree: int

    @property
    def R(self):
        return self.action.R

    @property
    def S(self):
        return self.action.S

    def to_ambient(self, r, s_part) -> AlgebraElement:
        """Element r + y of A from r in R and y in m_S."""
        rv = (r.value if isinstance(r, AlgebraElement) else r)
        sv = (s_part.m_part if isinstance(s_part, AlgebraElement) else s_part)
        A = self.algebra
        rmap = list(range(self.R.nvars))
        smap = list(range(self.R.nvars, self.R.nvars + self.S.nvars))
        return A.element(rv.map_ring(A.ring, rmap) + sv.map_ring(A.ring, smap))

    def multiply_decomposed(self, r, y, rp, yp):
        """(r + y)(r' + y') by the defining formula; returns (rr', s_part)."""
        t = self.action
        r = self.R.element(r)
        rp = self.R.element(rp)
        y = y if isinstance(y, Poly) else self.S.element(y).m_part
        yp = yp if isinstance(yp, Poly) else self.S.element(yp).m_part
        s_part = self.S.nf(t.star(r.value, yp) + t.star(rp.value, y) + y * yp)
        return r * rp, s_part

    def retraction_onto_R(self) -> AlgebraMorphism:
        """A -> R killing m_S (the universal map with f = id, g = 0)."""
        images = [self.R.var(i) for i in range(self.R.nvars)]
        images += [self.R.zero()] * self.S.nvars
        return AlgebraMorphism(self.algebra, self.R, images, name="retr").verify()

    def __repr__(self):
        return f"SemiFiber({self.algebra!r})"


def semi_fiber_product(table: ActionTable, d=None) -> SemiFiberPresentation:
    """Present A = R |x S from a validated action table and certify the
    graded decomposition A_e = (R)_e + (m_S)_e degreewise up to d."""
    if table.validated is None:
        raise ConstructionError("action table must be validated first")
    if d is None:
        d = table.validated
    R, S = table.R, table.S
    names, weights, rmap, smap, renames, trunc = _combine(R, S, "A")
    probe = PresentedAlgebra(names, weights, [], truncation=trunc, field=R.field)
    ar = probe.ring
    rels = [g.map_ring(ar, rmap) for g in R.base_relations]
    rels += [g.map_ring(ar, smap) for g in S.base_relations]
    for (i, j), a in sorted(table.entries.items()):
        rels.append(ar.var(rmap[i]) * ar.var(smap[j]) - a.map_ring(ar, smap))
    A = PresentedAlgebra(names, weights, rels, truncation=trunc, field=R.field,
                         name=f"{R.name}|x{S.name}")
    embed_R = AlgebraMorphism(R, A, [A.var(i) for i in rmap], name="iota_R").verify()
    embed_S = AlgebraMorphism(S, A, [A.var(i) for i in smap], name="iota_S").verify()
    for e in range(1, d + 1):
        want = R.dim(e) + S.dim(e)
        got = A.dim(e)
        if got != want:
            raise ConstructionError(
                f"graded decomposition fails at degree {e}: dim A = {got}, "
                f"dim R + dim m_S = {want} (action data inconsistent)")
    return SemiFiberPresentation(table, A, embed_R, embed_S, renames, d)


def fiber_product(R: PresentedAlgebra, S: PresentedAlgebra) -> PresentedAlgebra:
    """R x_k S = k[x u y]/(J_R + J_S + (x_i y_j for all i, j))."""
    names, weights, rmap, smap, renames, trunc = _combine(R, S, "P")
    probe = PresentedAlgebra(names, weights, [], truncation=trunc, field=R.field)
    ar = probe.ring
    rels = [g.map_ring(ar, rmap) for g in R.base_relations]
    rels += [g.map_ring(ar, smap) for g in S.base_relations]
    for i in rmap:
        for j in smap:
            rels.append(ar.var(i) * ar.var(j))
    return PresentedAlgebra(names, weights, rels, truncation=trunc, field=R.field,
                            name=f"{R.name}x{S.name}")


def trivial_extension(R: PresentedAlgebra, module: ModulePresentation,
                      var_prefix="e") -> PresentedAlgebra:
    """Nagata idealization R |x M: one square-zero variable per module
    generator, with the module relations as ring relations."""
    if module.algebra != R:
        raise ConstructionError("module must be presented over R")
    if R.truncation is None:
        for vec in module.relations:
            module.vector_degree(vec)  # non-homogeneous without truncation: error
    names = list(R.ring.names)
    enames = []
    for idx in range(len(module.gen_degrees)):
        n = f"{var_prefix}{idx}" if len(module.gen_degrees) > 1 else var_prefix
        while n in names or n in enames:
            n = n + "_1"
        enames.append(n)
    # weight-1 fallback for degree-0 generators keeps the grading positive
    eweights = tuple(max(1, g) for g in module.gen_degrees)
    all_names = names + enames
    weights = R.ring.weights + eweights
    probe = PresentedAlgebra(all_names, weights, [], truncation=R.truncation,
                             field=R.field)
    ar = probe.ring
    rmap = list(range(R.nvars))
    rels = [g.map_ring(ar, rmap) for g in R.base_relations]
    ne = len(enames)
    for a in range(ne):
        for b in range(a, ne):
            rels.append(ar.var(R.nvars + a) * ar.var(R.nvars + b))
    for vec in module.relations:
        acc = ar.zero()
        for c, p in enumerate(vec):
            acc = acc + p.map_ring(ar, rmap) * ar.var(R.nvars + c)
        rels.append(acc)
    return PresentedAlgebra(all_names, weights, rels, truncation=R.truncation,
                            field=R.field, name=f"{R.name}|xM")


@dataclass
class TensorAlgebraResult:
    algebra: PresentedAlgebra
    u_gens: list   # images of the R-variables: the multiplicatively closed part
    ideal_gens: list  # images of the T-variables: generate the ideal part

    def __repr__(self):
        return repr(self.algebra)


def tensor_algebra(R: PresentedAlgebra, T: PresentedAlgebra) -> TensorAlgebraResult:
    """R tensor_k T = k[x u z]/(J_R + J_T), with its semi-fiber split
    u = m_R, I = (z-variables) recorded for decomposition_verify."""
    names, weights, rmap, tmap, renames, trunc = _combine(R, T, "RT")
    probe = PresentedAlgebra(names, weights, [], truncation=trunc, field=R.field)
    ar = probe.ring
    rels = [g.map_ring(ar, rmap) for g in R.base_relations]
    rels += [g.map_ring(ar, tmap) for g in T.base_relations]
    A = PresentedAlgebra(names, weights, rels, truncation=trunc, field=R.field,
                         name=f"{R.name}(x){T.name}")
    return TensorAlgebraResult(A, [A.var(i) for i in rmap], [A.var(i) for i in tmap])


def psi_isomorphism(R, S, f: AlgebraMorphism, d: int):
    """psi: R |x S -> R x_k S for the action induced by f, with a degreewise
    bijectivity certificate.  psi(l + x + y) = (l + x, l + y + f(x))."""
    if not f.verified:
        f.verify()
    table = validate_action(ActionTable.induced(R, S, f), d)
    sfp = semi_fiber_product(table, d)
    P = fiber_product(R, S)
    # in P the R-variables sit first, the S-variables after (same renaming rule)
    rmap = list(range(R.nvars))
    smap = list(range(R.nvars, R.nvars + S.nvars))
    images = []
    for i in range(R.nvars):
        fx = f.images[i].value.map_ring(P.ring, smap)
        images.append(P.element(P.ring.var(rmap[i]) + fx))
    for j in range(S.nvars):
        images.append(P.element(P.ring.var(smap[j])))
    psi = AlgebraMorphism(sfp.algebra, P, images, name="psi").verify()
    ok, fail = psi.graded_bijective_to(d)
    if ok:
        verdict = Verdict("psi_isomorphism", TriState.PROVED,
                          reason=f"ring morphism, bijective on graded pieces <= {d}",
                          bounds={"degree": d})
    elif fail == -1:
        verdict = Verdict("psi_isomorphism", TriState.UNKNOWN,
                          reason="non-graded data; bijectivity not certified")
    else:
        verdict = Verdict("psi_isomorphism", TriState.REFUTED,
                          reason=f"not bijective on the degree-{fail} piece",
                          certificate={"degree": fail})
    return psi, verdict


def decomposition_verify(A: PresentedAlgebra, u_gens, I_gens, d: int) -> Verdict:
    """Certify m_A = span(closure of u_gens) + (I_gens) degreewise to d,
    with zero intersection (the u + I characterization)."""
    u = [A.element(g) for g in u_gens]
    ideal = [A.element(g) for g in I_gens]
    for g in u + ideal:
        if not g.in_maximal_ideal():
            return Verdict("decomposition_verify", TriState.REFUTED,
                           reason=f"generator {g} not in the maximal ideal")
        if not g.is_zero() and not g.value.is_homogeneous():
            raise ConstructionError(
                "decomposition_verify needs homogeneous generators")
    u = [g for g in u if not g.is_zero()]
    ideal = [g for g in ideal if not g.is_zero()]
    closure = {}  # degree -> list of Poly spanning the closure of u in that degree
    for e in range(1, d + 1):
        basis = A.basis(e)
        idx = {m: i for i, m in enumerate(basis)}
        utracker = SpanTracker(A.field, len(basis))
        clo = []
        for g in u:
            if g.value.homogeneous_degree() == e:
                if utracker.add(A.vectorize(g.value, idx)):
                    clo.append(g.value)
        for g in u:
            gd = g.value.homogeneous_degree()
            if gd < e:
                for p in closure.get(e - gd, []):
                    prod = A.nf(p * g.value)
                    if prod.terms and utracker.add(A.vectorize(prod, idx)):
                        clo.append(prod)
        closure[e] = clo
        u_vecs = [A.vectorize(p, idx) for p in clo]
        i_vecs = []
        itracker = SpanTracker(A.field, len(basis))
        for g in ideal:
            gd = g.value.homogeneous_degree()
            if gd > e:
                continue
            for mu in A.ring.monomials_of_degree(e - gd):
                prod = A.nf(g.value.mul_term(mu, A.field.one))
                if prod.terms and itracker.add(A.vectorize(prod, idx)):
                    i_vecs.append(A.vectorize(prod, idx))
        total = SpanTracker(A.field, len(basis))
        for v in u_vecs + i_vecs:
            total.add(v)
        if utracker.dim + itracker.dim > total.dim:
            witness = _intersection_witness(A, basis, u_vecs, i_vecs)
            return Verdict(
                "decomposition_verify", TriState.REFUTED,
                reason=f"span(u) and (I) intersect in degree {e}",
                certificate={"degree": e, "witness": str(witness)},
                bounds={"checked_degree": e})
        if total.dim < len(basis):
            return Verdict(
                "decomposition_verify", TriState.REFUTED,
                reason=f"span(u) + (I) misses part of m_A in degree {e} "
                       f"({total.dim} < {len(basis)})",
                certificate={"degree": e, "dim_sum": total.dim,
                             "dim_m": len(basis)},
                bounds={"checked_degree": e})
    return Verdict("decomposition_verify", TriState.PROVED,
                   reason=f"m_A = u + I in every degree <= {d}",
                   bounds={"checked_degree": d})


def _intersection_witness(A, basis, u_vecs, i_vecs):
    """An explicit nonzero element of span(u) cap span(I) at one degree."""
    f = A.field
    ncols = len(u_vecs) + len(i_vecs)
    rows = []
    for r in range(len(basis)):
        row = [v[r] for v in u_vecs] + [f.neg(v[r]) for v in i_vecs]
        rows.append(row)
    for kv in kernel_basis(f, rows, ncols):
        if any(c != f.zero for c in kv[:len(u_vecs)]):
            acc = A.ring.zero()
            for c, v in zip(kv[:len(u_vecs)], u_vecs):
                if c != f.zero:
                    acc = acc + Poly(A.ring, {m: f.mul(c, coef)
                                              for m, coef in zip(basis, v) if coef != f.zero})
            return A.element(acc)
    return None


def universal_morphism(sfp: SemiFiberPresentation, f: AlgebraMorphism,
                       g_images) -> AlgebraMorphism:
    """The unique map R |x S -> T restricting to f on R and g on m_S.

    g is given by images of the S-variables; multiplicativity and
    R-linearity are exactly the relations of the presentation, so
    verification reports the first violated identity.
    """
    T = f.target
    if f.source != sfp.R:
        raise ConstructionError("f must have source R")
    images = [f.images[i] for i in range(sfp.R.nvars)]
    images += [T.element(g) for g in g_images]
    phi = AlgebraMorphism(sfp.algebra, T, images, name="phi")
    return phi.verify()
