"""Lifting decision procedures: necessary conditions, the socle case,
retraction/section search, regularity checks, and the equivalence harness.

Retractions and sections are found (or refuted) by a bounded coefficient
search: the unknown images of the source variables are general elements of
the target's maximal ideal with undetermined coefficients up to degree d,
the defining constraints become polynomial equations in those coefficients,
and the system is simplified by exact linear elimination plus a single-term
rule.  An inconsistent truncated system is a valid nonexistence certificate:
any true homomorphism would satisfy every degree-truncated constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (AlgebraError, AlgebraMorphism, MorphismError,
                      PresentedAlgebra, minimal_generators)
from .constructions import ConstructionError, decomposition_verify
from .homology import (ComplexError, FreeComplex, ModulePresentation,
                       base_change, homology_dims, minimal_free_resolution,
                       flatness_certificate)
from .linalg import SpanTracker
from .poly import Poly, PolyRing
from .verdicts import SearchOutcome, SearchResult, TriState, Verdict


class LiftingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# symbolic coefficient search


class _SymCtx:
    """Arithmetic for elements of a target algebra whose coefficients are
    polynomials in unknown search variables, truncated at degree cap."""

    def __init__(self, target: PresentedAlgebra, unknown_names, cap: int):
        self.target = target
        self.cap = cap
        self.uring = PolyRing(target.field, tuple(unknown_names))

    def uconst(self, c):
        return self.uring.const(c)

    def uvar(self, i):
        return self.uring.var(i)

    def from_poly(self, p: Poly):
        """Known target element as a symbolic one."""
        out = {}
        for m, c in self.target.nf(p).terms.items():
            if self.target.ring.wdeg(m) <= self.cap:
                out[m] = self.uring.const(c)
        return out

    def add(self, a, b):
        out = dict(a)
        for m, u in b.items():
            s = out.get(m, self.uring.zero()) + u
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def mul(self, a, b):
        tgt = self.target
        out = {}
        for m1, u1 in a.items():
            for m2, u2 in b.items():
                prod = tgt.nf(Poly(tgt.ring, {tuple(x + y for x, y in zip(m1, m2)):
                                              tgt.field.one}))
                u12 = u1 * u2
                if u12.is_zero():
                    continue
                for m, c in prod.terms.items():
                    if tgt.ring.wdeg(m) > self.cap:
                        continue
                    s = out.get(m, self.uring.zero()) + u12 * c
                    if s.is_zero():
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    def eval_source_poly(self, p: Poly, images):
        """Evaluate a source polynomial at symbolic images (one per variable)."""
        acc = {}
        pow_cache = {}
        for m, c in p.terms.items():
            term = {(0,) * self.target.nvars: self.uring.const(c)}
            for i, e in enumerate(m):
                if not e:
                    continue
                if (i, e) not in pow_cache:
                    pw = images[i]
                    for _ in range(e - 1):
                        pw = self.mul(pw, images[i])
                    pow_cache[(i, e)] = pw
                term = self.mul(term, pow_cache[(i, e)])
            acc = self.add(acc, term)
        return acc

    def apply_known(self, f: AlgebraMorphism, sym):
        """Push a symbolic element of f.source through the known map f."""
        ctx2 = _SymCtx(f.target, self.uring.names, self.cap)
        out = {}
        for m, u in sym.items():
            img = f.apply_poly(Poly(f.source.ring, {m: f.source.field.one}))
            for mm, c in img.value.terms.items():
                if f.target.ring.wdeg(mm) > self.cap:
                    continue
                s = out.get(mm, self.uring.zero()) + u * c
                if s.is_zero():
                    out.pop(mm, None)
                else:
                    out[mm] = s
        return ctx2, out


INCONSISTENT = "inconsistent"
SOLVED = "solved"
STUCK = "stuck"


def _usubst(upoly: Poly, var_idx: int, repl: Poly) -> Poly:
    ring = upoly.ring
    out = ring.zero()
    for m, c in upoly.terms.items():
        e = m[var_idx]
        rest = tuple(0 if i == var_idx else x for i, x in enumerate(m))
        term = Poly(ring, {rest: c})
        if e:
            term = term * (repl ** e)
        out = out + term
    return out


def solve_system(uring: PolyRing, equations, budget=8, enum_limit=200000):
    """Simplify a polynomial system over the coefficient field.

    Returns (INCONSISTENT, trace), (SOLVED, assignment dict), or
    (STUCK, remaining equations).  Deterministic; the trace lists each
    elimination step so a nonexistence certificate can be replayed.
    """
    f = uring.field
    eqs = [e for e in equations if not e.is_zero()]
    subs = []  # (var index, replacement UPoly) in application order
    trace = []
    zero_exp = (0,) * uring.nvars

    def apply_sub(var, repl):
        nonlocal eqs
        subs.append((var, repl))
        eqs = [q for q in (_usubst(e, var, repl) for e in eqs) if not q.is_zero()]

    progress = True
    while progress:
        progress = False
        for e in eqs:
            if list(e.terms.keys()) == [zero_exp]:
                trace.append(f"constant contradiction: {e}")
                return INCONSISTENT, {"trace": trace, "subs": subs}
        # affine-linear equation: eliminate its first variable
        lin = next((e for e in eqs if (e.degree() or 0) <= 1), None)
        if lin is not None:
            m = lin.lm()
            var = next(i for i, x in enumerate(m) if x)
            coeff = lin.terms[m]
            rest = Poly(uring, {mm: c for mm, c in lin.terms.items() if mm != m})
            repl = rest * f.neg(f.inv(coeff))
            trace.append(f"linear: {uring.names[var]} := {repl}")
            apply_sub(var, repl)
            progress = True
            continue
        # single term in a single variable: that variable is zero
        single = None
        for e in eqs:
            if len(e.terms) == 1:
                m = next(iter(e.terms))
                nz = [i for i, x in enumerate(m) if x]
                if len(nz) == 1:
                    single = (e, nz[0])
                    break
        if single is not None:
            e, var = single
            trace.append(f"power: {uring.names[var]} := 0")
            apply_sub(var, uring.zero())
            progress = True
            continue

    if not eqs:
        assignment = {}
        for var, repl in reversed(subs):
            val = repl
            for v2, c2 in assignment.items():
                val = _usubst(val, v2, uring.const(c2))
            # remaining free variables default to zero
            val = Poly(uring, {m: c for m, c in val.terms.items() if m == zero_exp})
            assignment[var] = val.constant_term()
        for i in range(uring.nvars):
            assignment.setdefault(i, f.zero)
        return SOLVED, assignment

    # exhaustive search over a tiny field for the remaining unknowns
    live = sorted({i for e in eqs for m in e.terms for i, x in enumerate(m) if x})
    if f.enumerable and len(live) <= budget and (f.p ** len(live)) <= enum_limit:
        from itertools import product
        for combo in product(f.elements(), repeat=len(live)):
            ok = True
            for e in eqs:
                val = e
                for v, c in zip(live, combo):
                    val = _usubst(val, v, uring.const(c))
                if not val.is_zero():
                    ok = False
                    break
            if ok:
                assignment = {v: c for v, c in zip(live, combo)}
                for var, repl in reversed(subs):
                    val = repl
                    for v2, c2 in assignment.items():
                        val = _usubst(val, v2, uring.const(c2))
                    val = Poly(uring, {m: c for m, c in val.terms.items()
                                       if m == zero_exp})
                    assignment[var] = val.constant_term()
                for i in range(uring.nvars):
                    assignment.setdefault(i, f.zero)
                return SOLVED, assignment
        trace.append(f"exhaustive search over {f} refuted the residual system")
        return INCONSISTENT, {"trace": trace, "subs": subs}
    return STUCK, eqs


@dataclass
class ConstraintCertificate:
    """Replayable record of an unsatisfiable truncated constraint system."""

    field_repr: str
    variables: list
    equations: list          # UPoly objects (original, pre-simplification)
    trace: list
    bound: int

    def replay(self) -> bool:
        """Re-run the simplifier from the recorded equations."""
        if not self.equations:
            return False
        uring = self.equations[0].ring
        status, _ = solve_system(uring, list(self.equations))
        return status == INCONSISTENT

    def to_json(self):
        return {
            "field": self.field_repr,
            "variables": list(self.variables),
            "equations": [str(e) for e in self.equations],
            "trace": list(self.trace),
            "bound": self.bound,
        }


def _search_homomorphism(src: PresentedAlgebra, tgt: PresentedAlgebra,
                         constraints, d: int, budget=8, name="phi"):
    """Search for phi: src -> tgt with phi(m) in m satisfying the constraints.

    constraints: ('eval', src_poly, expected_tgt_poly) meaning
    phi(src_poly) = expected, or ('post', src_poly, known_map q, expected)
    meaning q(phi(src_poly)) = expected in q.target.
    """
    tgt_basis = []
    for e in range(1, d + 1):
        for m in tgt.basis(e):
            tgt_basis.append(m)
    unames = []
    slots = []  # (source var, target monomial)
    for i in range(src.nvars):
        for k, m in enumerate(tgt_basis):
            unames.append(f"c{i}_{k}")
            slots.append((i, m))
    ctx = _SymCtx(tgt, unames, d)
    images = []
    pos = 0
    for i in range(src.nvars):
        sym = {}
        for m in tgt_basis:
            sym[m] = ctx.uvar(pos)
            pos += 1
        images.append(sym)
    equations = []
    for con in constraints:
        if con[0] == "eval":
            _, sp, expected = con
            sym = ctx.eval_source_poly(sp, images)
            want = ctx.from_poly(expected)
        else:
            _, sp, qmap, expected = con
            sym0 = ctx.eval_source_poly(sp, images)
            ctx2, sym = ctx.apply_known(qmap, sym0)
            want = ctx2.from_poly(expected)
        diff = dict(sym)
        for m, u in want.items():
            s = diff.get(m, ctx.uring.zero()) - u
            if s.is_zero():
                diff.pop(m, None)
            else:
                diff[m] = s
        equations.extend(diff.values())
    original = list(equations)
    status, data = solve_system(ctx.uring, equations, budget=budget)
    if status == INCONSISTENT:
        cert = ConstraintCertificate(repr(tgt.field), unames, original,
                                     data["trace"], d)
        return SearchResult(SearchOutcome.NONE_EXISTS, certificate=cert, bound=d)
    if status == SOLVED:
        imgs = []
        for i in range(src.nvars):
            terms = {}
            for k, m in enumerate(tgt_basis):
                c = data[i * len(tgt_basis) + k]
                if c != tgt.field.zero:
                    terms[m] = c
            imgs.append(tgt.element(Poly(tgt.ring, terms)))
        try:
            phi = AlgebraMorphism(src, tgt, imgs, name=name).verify()
        except MorphismError as ex:
            return SearchResult(SearchOutcome.UNKNOWN, bound=d,
                                reason=f"candidate failed full verification: {ex}")
        return SearchResult(SearchOutcome.FOUND, witness=phi, bound=d)
    return SearchResult(SearchOutcome.UNKNOWN, bound=d,
                        reason=f"residual nonlinear system with "
                               f"{len(data)} equations beyond the solver rules")


def retraction_search(incl: AlgebraMorphism, d: int, budget=8) -> SearchResult:
    """Search for pi: R -> T with pi o incl = id_T, truncated at degree d."""
    if not incl.verified:
        incl.verify()
    T, R = incl.source, incl.target
    if not incl.is_injective_to(d):
        return SearchResult(SearchOutcome.NONE_EXISTS, bound=d,
                            reason="inclusion is not injective up to the bound; "
                                   "no map can retract it")
    constraints = [("eval", g, T.ring.zero()) for g in R.relations.gens]
    for j in range(T.nvars):
        constraints.append(("eval", incl.images[j].value, T.ring.var(j)))
    return _search_homomorphism(R, T, constraints, d, budget, name="retr")


def section_search(pi: AlgebraMorphism, d: int, budget=8) -> SearchResult:
    """Search for sigma: Rbar -> R with pi o sigma = id, truncated at d."""
    if not pi.verified:
        pi.verify()
    Rbar, R = pi.target, pi.source
    constraints = [("eval", g, R.ring.zero()) for g in Rbar.relations.gens]
    for j in range(Rbar.nvars):
        constraints.append(("post", Rbar.ring.var(j), pi, Rbar.ring.var(j)))
    return _search_homomorphism(Rbar, R, constraints, d, budget, name="sect")


# ---------------------------------------------------------------------------
# lifting problems


def alternating_complex(algebra, entries, length) -> FreeComplex:
    """Rank-one complex with the given entries cycled: d_i = entries[(i-1) % len]."""
    elems = [algebra.element(e) for e in entries]
    shifts = [[0]]
    diffs = []
    acc = 0
    for i in range(length):
        ent = elems[i % len(elems)]
        acc += ent.value.degree() or 0
        shifts.append([acc])
        diffs.append([[ent.value]])
    return FreeComplex(algebra, shifts, diffs)


@dataclass
class LiftingProblem:
    """k over Rbar = R/I, with its minimal resolution as the lifting target."""

    R: PresentedAlgebra
    I_gens: list
    n: int
    d: int

    def __post_init__(self):
        self.I_gens = [self.R.element(g) for g in self.I_gens]
        for g in self.I_gens:
            if not g.in_maximal_ideal():
                raise LiftingError(f"ideal generator {g} not in m_R")
        self.Rbar, self.pi = self.R.quotient([g.value for g in self.I_gens])
        self.F, self.F_betti = minimal_free_resolution(
            ModulePresentation.residue_field(self.Rbar), self.n, self.d)


def check_lifting(problem: LiftingProblem, L: FreeComplex) -> Verdict:
    """Is L a lifting of the resolution of k over Rbar?

    Verified iff L is a complex over R whose base change to Rbar has the
    same ranks/shifts as the minimal resolution, vanishing homology in the
    interior spots, and H_0 = k — all within the certified degree range.
    """
    if L.algebra != problem.R:
        raise LiftingError("candidate complex is not over R")
    try:
        L.verify()
    except ComplexError as ex:
        return Verdict("check_lifting", TriState.REFUTED,
                       reason=f"candidate is not a complex: {ex}")
    Lbar = base_change(L, problem.pi)
    F = problem.F
    levels = min(L.length, F.length)
    for i in range(levels + 1):
        if sorted(Lbar.shifts[i]) != sorted(F.shifts[i]):
            return Verdict("check_lifting", TriState.REFUTED,
                           reason=f"rank/shift mismatch at homological degree {i}: "
                                  f"{sorted(Lbar.shifts[i])} vs {sorted(F.shifts[i])}")
    for i in range(1, levels):  # interior spots only: the top has no boundaries
        dims = homology_dims(Lbar, i, problem.d)
        bad = {e: v for e, v in dims.items() if v}
        if bad:
            return Verdict("check_lifting", TriState.REFUTED,
                           reason=f"H_{i} of the base change is nonzero: {bad}")
    h0L = homology_dims(Lbar, 0, problem.d)
    h0F = homology_dims(F, 0, problem.d)
    if h0L != h0F:
        return Verdict("check_lifting", TriState.REFUTED,
                       reason=f"H_0 mismatch: {h0L} vs {h0F}")
    return Verdict("check_lifting", TriState.PROVED,
                   reason="base change matches the minimal resolution of k",
                   bounds={"homological": levels, "internal_degree": problem.d})


# ---------------------------------------------------------------------------
# necessary conditions


def _m_mod_m2_rank(R: PresentedAlgebra, elems):
    """Rank of the images of elems in m/m^2 (graded slice computation)."""
    if not elems:
        return 0
    bound = max(g.value.degree() for g in elems)
    if R.truncation is not None:
        bound = min(bound, R.truncation)
    idx = R.basis_index(1, bound)
    tracker = SpanTracker(R.field, len(idx))
    # preload span of m^2 in degrees <= bound
    for i in range(R.nvars):
        w = R.ring.weights[i]
        for e in range(1, bound - w + 1):
            for mu in R.ring.monomials_of_degree(e):
                p = R.nf(R.ring.var(i).mul_term(mu, R.field.one))
                p = Poly(R.ring, {m: c for m, c in p.terms.items()
                                  if R.ring.wdeg(m) <= bound})
                if p.terms:
                    tracker.add(R.vectorize(p, idx))
    count = 0
    for g in elems:
        p = Poly(R.ring, {m: c for m, c in g.value.terms.items()
                          if R.ring.wdeg(m) <= bound})
        if tracker.add(R.vectorize(p, idx)):
            count += 1
    return count


def thm_minimal_generator_test(R: PresentedAlgebra, I_gens) -> Verdict:
    """Necessary condition: if k over R/I lifts, I is generated by part of a
    minimal generating set of m.  Dependence in m/m^2 refutes liftability."""
    gens, nu = minimal_generators(R, I_gens)
    if nu == 0:
        return Verdict("thm_minimal_generator_test", TriState.UNKNOWN,
                       reason="I = 0; condition vacuous")
    indep = _m_mod_m2_rank(R, gens)
    if indep < nu:
        return Verdict(
            "thm_minimal_generator_test", TriState.REFUTED,
            reason=f"minimal generators of I are dependent in m/m^2 "
                   f"(rank {indep} < nu = {nu}); k is not liftable",
            certificate={"nu": nu, "rank_in_m_mod_m2": indep})
    return Verdict(
        "thm_minimal_generator_test", TriState.UNKNOWN,
        reason="I is generated by part of a minimal generating set of m "
               "(necessary condition holds; not sufficient)",
        certificate={"nu": nu, "rank_in_m_mod_m2": indep})


def poincare_factorization_test(R: PresentedAlgebra, I_gens, n: int,
                                d=None) -> Verdict:
    """Compare P^R_k with P^Rbar_k * P^R_Rbar coefficientwise to order n.

    A mismatch refutes liftability of k; a match is inconclusive.  Also
    reports the t-coefficient identity nu(m_R) = nu(m_Rbar) + nu(I).
    """
    I_elems = [R.element(g) for g in I_gens]
    maxrel = max([r.degree() for r in R.base_relations]
                 + [g.value.degree() for g in I_elems if not g.is_zero()] + [1])
    if d is None:
        d = n + maxrel + 2
    if R.truncation is not None and d > R.truncation:
        return Verdict("poincare_factorization_test", TriState.UNKNOWN,
                       reason=f"truncation {R.truncation} below required degree {d}")
    Rbar, _ = R.quotient([g.value for g in I_elems])
    p_k_R = minimal_free_resolution(
        ModulePresentation.residue_field(R), n, d)[1].totals()
    p_k_Rbar = minimal_free_resolution(
        ModulePresentation.residue_field(Rbar), n, d)[1].totals()
    p_Rbar_R = minimal_free_resolution(
        ModulePresentation.cyclic(R, [g.value for g in I_elems]), n, d)[1].totals()
    conv = [sum(p_k_Rbar[j] * p_Rbar_R[i - j] for j in range(i + 1))
            for i in range(n + 1)]
    _, nu_m = minimal_generators(R, [R.ring.var(i) for i in range(R.nvars)])
    _, nu_mbar = minimal_generators(
        Rbar, [Rbar.ring.var(i) for i in range(Rbar.nvars)])
    _, nu_I = minimal_generators(R, [g.value for g in I_elems])
    cert = {
        "P_k_R": p_k_R, "P_k_Rbar": p_k_Rbar, "P_Rbar_R": p_Rbar_R,
        "convolution": conv,
        "nu_identity": {"nu_m": nu_m, "nu_mbar": nu_mbar, "nu_I": nu_I},
    }
    for i in range(n + 1):
        if p_k_R[i] != conv[i]:
            return Verdict(
                "poincare_factorization_test", TriState.REFUTED,
                reason=f"factorization fails at t^{i}: {p_k_R[i]} != {conv[i]}; "
                       f"k is not liftable",
                certificate=cert, bounds={"order": n, "internal_degree": d})
    return Verdict(
        "poincare_factorization_test", TriState.UNKNOWN,
        reason="factorization holds to the checked order (necessary, not sufficient)",
        certificate=cert, bounds={"order": n, "internal_degree": d})


def ext2_sufficiency(Rbar: PresentedAlgebra, d=None) -> Verdict:
    """beta_2 of k over Rbar; zero means Ext^2(k,k) = 0, which suffices for
    liftability when I is generated by a regular sequence."""
    maxrel = max([r.degree() for r in Rbar.base_relations] + [1])
    if d is None:
        d = maxrel + 4
    if Rbar.truncation is not None and d > Rbar.truncation:
        return Verdict("ext2_sufficiency", TriState.UNKNOWN,
                       reason=f"truncation {Rbar.truncation} below required degree {d}")
    betti = minimal_free_resolution(
        ModulePresentation.residue_field(Rbar), 2, d)[1]
    b2 = betti.total(2)
    if b2 == 0:
        return Verdict(
            "ext2_sufficiency", TriState.PROVED,
            reason="Ext^2(k,k) = 0: sufficient for liftability when I is "
                   "generated by a regular sequence (hypothesis recorded)",
            certificate={"beta2": 0, "hypothesis": "I generated by a regular sequence"},
            bounds={"internal_degree": d})
    return Verdict("ext2_sufficiency", TriState.UNKNOWN,
                   reason=f"beta_2 = {b2} != 0; the sufficient condition does not apply",
                   certificate={"beta2": b2}, bounds={"internal_degree": d})


# ---------------------------------------------------------------------------
# the socle case


@dataclass
class SocleDecision:
    liftable: bool
    verdict: Verdict
    section: SearchResult = None
    decomposition: Verdict = None

    def __str__(self):
        return str(self.verdict)


def socle_case_decide(R: PresentedAlgebra, I_gens, bound=6, budget=8) -> SocleDecision:
    """Decide liftability of k over R/I when m_R I = 0, constructively.

    Liftable: returns a section of the quotient map and the semi-fiber
    decomposition R = Rbar |x I, both independently certified."""
    I_elems = [R.element(g) for g in I_gens]
    for g in I_elems:
        for i in range(R.nvars):
            prod = R.var(i) * g
            if not prod.is_zero():
                raise LiftingError(
                    f"m_R * I != 0: {R.ring.names[i]} * ({g}) = {prod}; "
                    "the socle-case corollary does not apply")
    mg_verdict = thm_minimal_generator_test(R, [g.value for g in I_elems])
    if mg_verdict.refuted:
        return SocleDecision(
            False,
            Verdict("socle_case_decide", TriState.REFUTED,
                    reason="NotLiftable: " + mg_verdict.reason,
                    certificate=mg_verdict.certificate))
    Rbar, pi = R.quotient([g.value for g in I_elems])
    section = section_search(pi, bound, budget)
    if not section.found:
        verdict = Verdict("socle_case_decide", TriState.UNKNOWN,
                          reason=f"liftable by the corollary, but the bounded "
                                 f"section search returned {section.outcome}")
        return SocleDecision(True, verdict, section=section)
    sigma = section.witness
    u_gens = [im.value for im in sigma.images if not im.is_zero()]
    dcheck = R.effective_bound(bound)
    try:
        decomp = decomposition_verify(
            R, u_gens, [g.value for g in I_elems if not g.is_zero()], dcheck)
    except ConstructionError as ex:
        decomp = Verdict("decomposition_verify", TriState.UNKNOWN, reason=str(ex))
    verdict = Verdict(
        "socle_case_decide", TriState.PROVED,
        reason="Liftable: I is part of a minimal generating set of m and "
               "m_R I = 0; section and decomposition attached",
        bounds={"search_bound": bound, "decomposition_degree": dcheck})
    return SocleDecision(True, verdict, section=section, decomposition=decomp)


# ---------------------------------------------------------------------------
# regularity and colon conditions


def regular_sequence_check(R: PresentedAlgebra, elems, d=None) -> Verdict:
    """elems form a regular sequence iff each colon (J_i : x_{i+1}) = J_i.

    Colons are taken against the base relations: the graded-cutoff monomials
    of a truncated presentation would make every element of m a zerodivisor.
    """
    elems = [R.element(e) for e in elems]
    for e in elems:
        if not e.in_maximal_ideal():
            raise LiftingError(f"{e} is not in the maximal ideal")
    from .poly import Ideal
    cur = Ideal(R.ring, R.base_relations)
    for step, e in enumerate(elems):
        if e.is_zero():
            return Verdict("regular_sequence_check", TriState.REFUTED,
                           reason=f"element #{step} is zero in the current quotient")
        colon = cur.colon(e.value)
        extra = [g for g in colon.groebner if not cur.contains(g)]
        if extra:
            return Verdict(
                "regular_sequence_check", TriState.REFUTED,
                reason=f"{e} is a zerodivisor modulo the previous elements",
                certificate={"witness": str(extra[0]), "step": step})
        cur = Ideal(R.ring, cur.groebner + [e.value])
    return Verdict("regular_sequence_check", TriState.PROVED,
                   reason="all colon ideals stable (exact, over the base relations)")


def cor44_hypothesis_check(R: PresentedAlgebra, x, n: int) -> Verdict:
    """(0 : x) = x^n R != 0, plus the periodicity ingredient (0 : x^n) = xR.

    Proved certifies flatness of k[x]/(x^{n+1}) -> R via the periodic exact
    sequence."""
    from .poly import Ideal
    x = R.element(x)
    if not x.in_maximal_ideal():
        raise LiftingError("x must lie in the maximal ideal")
    xn = x ** n
    if xn.is_zero():
        return Verdict("cor44_hypothesis_check", TriState.REFUTED,
                       reason=f"({x})^{n} = 0 in R, so the annihilator condition "
                              "is excluded")
    # colons over the base relations: truncation monomials would pollute (0:x)
    J = Ideal(R.ring, R.base_relations)
    ann_x = J.colon(x.value)
    want_x = Ideal(R.ring, J.groebner + [xn.value])
    if ann_x != want_x:
        extra = [g for g in ann_x.groebner if not want_x.contains(g)]
        missing = [g for g in want_x.groebner if not ann_x.contains(g)]
        wit = extra[0] if extra else missing[0]
        return Verdict("cor44_hypothesis_check", TriState.REFUTED,
                       reason=f"(0:x) != x^{n} R",
                       certificate={"witness": str(wit)})
    ann_xn = J.colon(xn.value)
    want_xn = Ideal(R.ring, J.groebner + [x.value])
    if ann_xn != want_xn:
        wit = next((g for g in ann_xn.groebner if not want_xn.contains(g)),
                   next(iter(want_xn.groebner), None))
        return Verdict("cor44_hypothesis_check", TriState.REFUTED,
                       reason=f"(0:x^{n}) != x R (periodicity fails)",
                       certificate={"witness": str(wit)})
    return Verdict(
        "cor44_hypothesis_check", TriState.PROVED,
        reason=f"(0:x) = x^{n} R != 0 and (0:x^{n}) = xR; "
               f"R is flat over k[x]/(x^{n + 1}) by periodic exactness",
        certificate={"n": n})


def mT_generates_check(phi: AlgebraMorphism) -> Verdict:
    """Does m_T R = m_R?  (The surjectivity ingredient of the harness.)"""
    if not phi.verified:
        phi.verify()
    from .poly import Ideal
    R = phi.target
    J = R.relations.groebner
    lhs = Ideal(R.ring, J + [im.value for im in phi.images])
    rhs = Ideal(R.ring, J + [R.ring.var(i) for i in range(R.nvars)])
    if lhs == rhs:
        return Verdict("mT_generates_check", TriState.PROVED,
                       reason="m_T R = m_R")
    missing = next(g for g in rhs.groebner if not lhs.contains(g))
    return Verdict("mT_generates_check", TriState.REFUTED,
                   reason=f"m_T R != m_R",
                   certificate={"witness": str(missing)})


# ---------------------------------------------------------------------------
# Main Theorem harness


@dataclass
class HarnessReport:
    flatness: Verdict
    lifting: Verdict
    retraction: SearchResult
    decomposition: Verdict
    consistent: bool
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "flatness": self.flatness.to_json(),
            "i_lifting": self.lifting.to_json(),
            "ii_retraction": self.retraction.to_json(),
            "iii_decomposition": self.decomposition.to_json(),
            "consistent": self.consistent,
            "notes": list(self.notes),
        }

    def __str__(self):
        return (f"(i) {self.lifting.state} / (ii) {self.retraction.outcome.value} / "
                f"(iii) {self.decomposition.state}; consistent={self.consistent}")


def main_theorem_harness(phi: AlgebraMorphism, bound: int, n: int,
                         budget=8) -> HarnessReport:
    """Run the three equivalent conditions and cross-check their verdicts.

    (i) liftability of k over R/m_T R, (ii) retraction of phi,
    (iii) semi-fiber decomposition R = T |x S with m_S = ker(retraction)."""
    T, R = phi.source, phi.target
    flat = flatness_certificate(phi, n)
    if not flat.proved:
        raise LiftingError(f"flatness hypothesis not certified: {flat}")
    notes = []
    I_gens = [im.value for im in phi.images if not im.is_zero()]
    retr = retraction_search(phi, bound, budget)

    if retr.found:
        pi = retr.witness
        ker = pi.kernel(bound)
        ker_gens = [g.map_ring(R.ring, list(range(R.nvars)))
                    for g in ker.groebner]
        ker_gens = [g for g in ker_gens if not R.relations.contains(g)]
        try:
            decomp = decomposition_verify(
                R, [im.value for im in phi.images if not im.is_zero()],
                ker_gens, R.effective_bound(bound))
        except ConstructionError as ex:
            decomp = Verdict("decomposition_verify", TriState.UNKNOWN,
                             reason=str(ex))
        # (i) via the proof's witness: resolve T = R/ker(pi) over R
        problem = LiftingProblem(R, I_gens, n, _harness_internal_bound(R, n))
        L, _ = minimal_free_resolution(
            ModulePresentation.cyclic(R, ker_gens), n, problem.d)
        lift = check_lifting(problem, L)
        if lift.proved:
            lift = Verdict("lifting_evidence", TriState.PROVED,
                           reason="resolution of T = R/ker(retraction) is a "
                                  "verified lifting of the resolution of k",
                           bounds=lift.bounds)
        else:
            lift = Verdict("lifting_evidence", lift.state, reason=lift.reason)
    else:
        decomp = Verdict("decomposition_verify", TriState.REFUTED
                         if retr.none_exists else TriState.UNKNOWN,
                         reason="no retraction found; by the equivalence no "
                                "semi-fiber decomposition over T exists"
                         if retr.none_exists else str(retr))
        if retr.none_exists:
            lift = Verdict("lifting_evidence", TriState.REFUTED,
                           reason="no retraction exists (bounded certificate); "
                                  "by the equivalence k over R/m_T R is not liftable")
            mg = thm_minimal_generator_test(R, I_gens)
            notes.append(f"necessary-condition cross-check: {mg}")
            if mg.state is TriState.PROVED:
                notes.append("INCONSISTENT necessary-condition result")
        else:
            lift = Verdict("lifting_evidence", TriState.UNKNOWN, reason=str(retr))

    consistent = _verdicts_consistent(lift, retr, decomp)
    return HarnessReport(flat, lift, retr, decomp, consistent, notes)


def _harness_internal_bound(R, n):
    maxrel = max([r.degree() for r in R.base_relations] + [1])
    d = n + maxrel + 2
    if R.truncation is not None:
        d = min(d, R.truncation)
    return d


def _verdicts_consistent(lift: Verdict, retr: SearchResult, decomp: Verdict) -> bool:
    vals = []
    if lift.state is not TriState.UNKNOWN:
        vals.append(lift.proved)
    if retr.outcome is not SearchOutcome.UNKNOWN:
        vals.append(retr.found)
    if decomp.state is not TriState.UNKNOWN:
        vals.append(decomp.proved)
    return len(set(vals)) <= 1
