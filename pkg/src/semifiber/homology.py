"""Free complexes, homology by graded linear algebra, minimal resolutions.

Every homological quantity is computed exactly on finite graded slices: a
free module with internal-degree shifts s has, in internal degree e, the
k-basis {(component c, standard monomial of degree e - s_c)}.  Differentials
restrict to k-matrices on these slices and homology is kernel/image
dimension counting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraError, AlgebraMorphism, PresentedAlgebra
from .linalg import SpanTracker, kernel_basis, rank
from .poly import Poly
from .verdicts import TriState, Verdict


class ComplexError(ValueError):
    pass


class FreeComplex:
    """Bounded complex of free modules F_n -> ... -> F_1 -> F_0.

    shifts[i] lists the internal degrees of the basis of F_i; diffs[i-1] is
    the matrix of d_i: F_i -> F_{i-1} (rows indexed by F_{i-1} basis).
    """

    def __init__(self, algebra: PresentedAlgebra, shifts, diffs):
        self.algebra = algebra
        self.shifts = [list(s) for s in shifts]
        self.diffs = []
        for i, mat in enumerate(diffs, start=1):
            nrows, ncols = len(self.shifts[i - 1]), len(self.shifts[i])
            if len(mat) != nrows or any(len(row) != ncols for row in mat):
                raise ComplexError(f"differential d_{i} has wrong shape")
            self.diffs.append(
                [[algebra.nf(e if isinstance(e, Poly) else algebra.element(e).value)
                  for e in row] for row in mat])
        if len(self.diffs) != len(self.shifts) - 1:
            raise ComplexError("need one differential per adjacent pair of levels")

    @property
    def length(self) -> int:
        return len(self.shifts) - 1

    @property
    def ranks(self):
        return [len(s) for s in self.shifts]

    def d(self, i):
        """Matrix of d_i: F_i -> F_{i-1} (i in 1..length)."""
        return self.diffs[i - 1]

    def verify(self) -> "FreeComplex":
        """Check d_{i} o d_{i+1} = 0; raises with the first nonzero entry."""
        for i in range(1, self.length):
            a, b = self.d(i), self.d(i + 1)
            for r in range(len(a)):
                for c in range(len(b[0]) if b else 0):
                    s = self.algebra.ring.zero()
                    for t in range(len(b)):
                        s = s + a[r][t] * b[t][c]
                    if not self.algebra.nf(s).is_zero():
                        raise ComplexError(
                            f"d_{i} o d_{i + 1} != 0 at entry ({r},{c}): {self.algebra.nf(s)}")
        return self

    def is_minimal(self) -> bool:
        z = self.algebra.field.zero
        return all(e.constant_term() == z for mat in self.diffs for row in mat for e in row)

    def is_graded(self) -> bool:
        for i in range(1, self.length + 1):
            mat = self.d(i)
            for r, row in enumerate(mat):
                for c, e in enumerate(row):
                    if e.is_zero():
                        continue
                    want = self.shifts[i][c] - self.shifts[i - 1][r]
                    if e.homogeneous_degree() != want:
                        return False
        return True

    # ---- graded slices ----

    def slice_basis(self, i, e):
        out = []
        for c, s in enumerate(self.shifts[i]):
            for m in self.algebra.basis(e - s):
                out.append((c, m))
        return out

    def slice_matrix(self, i, e):
        """k-matrix of d_i on internal degree e (rows = F_{i-1} slice basis)."""
        A = self.algebra
        dom = self.slice_basis(i, e)
        cod = self.slice_basis(i - 1, e)
        cidx = {cm: j for j, cm in enumerate(cod)}
        mat = self.d(i)
        cols = []
        for (c, m) in dom:
            vec = [A.field.zero] * len(cod)
            for r in range(len(self.shifts[i - 1])):
                entry = mat[r][c]
                if entry.is_zero():
                    continue
                img = A.nf(entry.mul_term(m, A.field.one))
                for mm, cc in img.terms.items():
                    key = (r, mm)
                    if key not in cidx:
                        raise ComplexError(
                            "non-graded differential entry in graded slice computation")
                    vec[cidx[key]] = cc
            cols.append(vec)
        # transpose to rows-of-matrix form
        rows = [[cols[j][i2] for j in range(len(cols))] for i2 in range(len(cod))]
        return rows, len(dom), len(cod)

    def homology_dim(self, i, e) -> int:
        """dim_k H_i(self) in internal degree e."""
        ndom = len(self.slice_basis(i, e))
        if i >= 1:
            rows, ncols, _ = self.slice_matrix(i, e)
            cyc = ncols - rank(self.algebra.field, rows)
        else:
            cyc = ndom
        if i < self.length:
            rows2, _, _ = self.slice_matrix(i + 1, e)
            bnd = rank(self.algebra.field, rows2)
        else:
            bnd = 0
        return cyc - bnd

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks})"


def homology_dims(C: FreeComplex, i: int, d: int):
    """{internal degree e: dim H_i} for 0 <= e <= d."""
    if C.algebra.truncation is not None and d > C.algebra.truncation:
        raise ComplexError("requested degree exceeds the algebra truncation")
    return {e: C.homology_dim(i, e) for e in range(d + 1)}


def base_change(C: FreeComplex, q: AlgebraMorphism) -> FreeComplex:
    """Entrywise image of the differentials along a verified quotient map."""
    if not q.verified:
        raise AlgebraError("base change requires a verified morphism")
    diffs = [[[q.apply_poly(e).value for e in row] for row in mat] for mat in C.diffs]
    return FreeComplex(q.target, C.shifts, diffs)


# ---- modules and resolutions ----


@dataclass
class ModulePresentation:
    """Cokernel presentation: free module on gen_degrees modulo relation vectors."""

    algebra: PresentedAlgebra
    gen_degrees: list
    relations: list  # list of tuples of Poly, one entry per generator

    @classmethod
    def cyclic(cls, algebra, ideal_gens):
        rels = [(algebra.element(g).value,) for g in ideal_gens]
        return cls(algebra, [0], [r for r in rels if not r[0].is_zero()])

    @classmethod
    def residue_field(cls, algebra):
        return cls.cyclic(algebra, [algebra.ring.var(i) for i in range(algebra.nvars)])

    def vector_degree(self, vec):
        """Common internal degree of a homogeneous vector (None for 0)."""
        degs = set()
        for c, p in enumerate(vec):
            for m in p.terms:
                degs.add(self.algebra.ring.wdeg(m) + self.gen_degrees[c])
        if not degs:
            return None
        if len(degs) > 1:
            raise ComplexError("non-homogeneous module presentation")
        return degs.pop()


class BettiTable:
    def __init__(self, entries, certified_i, certified_j):
        self.entries = dict(entries)  # (i, j) -> dim
        self.certified_i = certified_i
        self.certified_j = certified_j

    def total(self, i) -> int:
        return sum(v for (ii, _), v in self.entries.items() if ii == i)

    def totals(self):
        return [self.total(i) for i in range(self.certified_i + 1)]

    def beta(self, i, j) -> int:
        return self.entries.get((i, j), 0)

    def to_json(self):
        betti = sorted([i, j, v] for (i, j), v in self.entries.items() if v)
        return {
            "betti": betti,
            "certified_i": self.certified_i,
            "certified_j": self.certified_j,
            "poincare": self.totals(),
        }

    def __repr__(self):
        return f"BettiTable(totals={self.totals()})"


def _vec_degree(algebra, shifts, vec):
    degs = set()
    for c, p in enumerate(vec):
        for m in p.terms:
            degs.add(algebra.ring.wdeg(m) + shifts[c])
    if len(degs) > 1:
        raise ComplexError("non-homogeneous vector")
    return degs.pop() if degs else None


def _slice_index(algebra, shifts, e):
    basis = []
    for c, s in enumerate(shifts):
        for m in algebra.basis(e - s):
            basis.append((c, m))
    return basis, {cm: i for i, cm in enumerate(basis)}


def _vec_coords(algebra, shifts, vec, idx):
    v = [algebra.field.zero] * len(idx)
    for c, p in enumerate(vec):
        for m, coeff in algebra.nf(p).terms.items():
            v[idx[(c, m)]] = coeff
    return v


def _scale_vec(algebra, vec, mono):
    one = algebra.field.one
    return tuple(algebra.nf(p.mul_term(mono, one)) for p in vec)


def _minimal_gens_of_submodule(algebra, shifts, gens, d):
    """Degreewise minimal generators of the submodule generated by gens.

    gens are homogeneous vectors over the free module with the given shifts;
    returns [(vector, degree)] in ascending degree, deterministic order.
    """
    by_deg = {}
    for g in gens:
        deg = _vec_degree(algebra, shifts, g)
        if deg is not None:
            by_deg.setdefault(deg, []).append(g)
    chosen = []
    for e in range(d + 1):
        basis, idx = _slice_index(algebra, shifts, e)
        if not basis:
            continue
        tracker = SpanTracker(algebra.field, len(basis))
        for g, gdeg in chosen:
            for mu in algebra.ring.monomials_of_degree(e - gdeg):
                tracker.add(_vec_coords(algebra, shifts, _scale_vec(algebra, g, mu), idx))
        for g in by_deg.get(e, []):
            if tracker.add(_vec_coords(algebra, shifts, g, idx)):
                chosen.append((g, e))
    return chosen


def _kernel_vectors(C: FreeComplex, i, d):
    """Homogeneous vectors spanning ker d_i in internal degrees <= d."""
    A = C.algebra
    out = []
    for e in range(d + 1):
        dom = C.slice_basis(i, e)
        if not dom:
            continue
        rows, ncols, _ = C.slice_matrix(i, e)
        for kv in kernel_basis(A.field, rows, ncols):
            vec = [A.ring.zero() for _ in C.shifts[i]]
            for (c, m), coeff in zip(dom, kv):
                if coeff != A.field.zero:
                    vec[c] = vec[c] + Poly(A.ring, {m: coeff})
            out.append(tuple(vec))
    return out


def minimal_free_resolution(module: ModulePresentation, n: int, d: int):
    """Minimal free resolution of the module to homological degree n,
    certified in internal degrees <= d.  Returns (FreeComplex, BettiTable).
    """
    A = module.algebra
    if A.truncation is not None and d > A.truncation:
        raise ComplexError("internal degree bound exceeds the algebra truncation")
    for vec in module.relations:
        module.vector_degree(vec)  # homogeneity check
    shifts = [list(module.gen_degrees)]
    diffs = []
    betti = {}
    for j in module.gen_degrees:
        betti[(0, j)] = betti.get((0, j), 0) + 1
    gens = [tuple(vec) for vec in module.relations]
    for i in range(1, n + 1):
        chosen = _minimal_gens_of_submodule(A, shifts[i - 1], gens, d)
        new_shifts = [deg for _, deg in chosen]
        mat = [[chosen[c][0][r] for c in range(len(chosen))]
               for r in range(len(shifts[i - 1]))]
        shifts.append(new_shifts)
        diffs.append(mat)
        for jdeg in new_shifts:
            betti[(i, jdeg)] = betti.get((i, jdeg), 0) + 1
        C = FreeComplex(A, shifts, diffs)
        if i < n:
            gens = _kernel_vectors(C, i, d)
    resolution = FreeComplex(A, shifts, diffs)
    return resolution, BettiTable(betti, n, d)


def poincare_poly(module: ModulePresentation, n: int, d: int):
    """Truncated Poincare series coefficients [dim Tor_0, ..., dim Tor_n]."""
    _, betti = minimal_free_resolution(module, n, d)
    return betti.totals()


def tor_dims_via_tensor(resolution: FreeComplex, n: int, d: int):
    """Independent route: Betti totals as dim H_i(F tensor k).

    Tensoring a complex with k kills every differential entry in m, so for a
    minimal complex this returns the ranks; for a general graded complex it
    returns honest Tor dimensions of its H_0 when the complex is a resolution.
    """
    A = resolution.algebra
    k_alg = PresentedAlgebra(A.ring.names, A.ring.weights,
                             [A.ring.var(i) for i in range(A.nvars)],
                             field=A.field, name="k")
    q = AlgebraMorphism(A, k_alg, [k_alg.var(i) for i in range(A.nvars)]).verify()
    Ck = base_change(resolution, q)
    out = []
    for i in range(n + 1):
        out.append(sum(homology_dims(Ck, i, d).values()))
    return out


# ---- flatness ----


def flatness_certificate(f: AlgebraMorphism, hrange: int, d=None) -> Verdict:
    """Certify Tor_i^T(R, k) = 0 for 1 <= i <= hrange along f: T -> R.

    Resolves k over T, base-changes along f, and checks homology vanishing on
    all internal degrees <= d.  Proved/Refuted verdicts are exact within the
    checked bounds; truncation limits are reported, never silently crossed.
    """
    if not f.verified:
        f.verify()
    T, R = f.source, f.target
    if not f.is_graded():
        return Verdict("flatness_certificate", TriState.UNKNOWN,
                       reason="morphism is not graded; graded slices are the only "
                              "exact finite evidence available")
    maxrel = max([r.degree() for r in T.base_relations] + [1])
    if d is None:
        d = hrange + maxrel + 2
    for alg in (T, R):
        if alg.truncation is not None and d > alg.truncation:
            return Verdict("flatness_certificate", TriState.UNKNOWN,
                           reason=f"truncation {alg.truncation} too small to certify "
                                  f"range {hrange} at internal degree {d}",
                           bounds={"requested_d": d, "truncation": alg.truncation})
    # resolve one level past the range: the top spot of a truncated complex
    # has no incoming boundaries and would report spurious homology
    res, _ = minimal_free_resolution(ModulePresentation.residue_field(T), hrange + 1, d)
    Rc = base_change(res, f)
    for i in range(1, hrange + 1):
        dims = homology_dims(Rc, i, d)
        for e, dim in sorted(dims.items()):
            if dim:
                return Verdict(
                    "flatness_certificate", TriState.REFUTED,
                    reason=f"Tor_{i}(R, k) has dimension {dim} in internal degree {e}",
                    certificate={"i": i, "internal_degree": e, "dim": dim},
                    bounds={"range": hrange, "internal_degree": d})
    return Verdict("flatness_certificate", TriState.PROVED,
                   reason=f"Tor_i(R,k)=0 for 1<=i<={hrange} in internal degrees <= {d}",
                   bounds={"range": hrange, "internal_degree": d})
