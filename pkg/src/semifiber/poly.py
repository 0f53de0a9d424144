"""Exact multivariate polynomials with weighted gradings and Groebner bases.

The monomial order is graded reverse lexicographic refined by variable index,
graded by user-configurable positive weights.  Rings may carry a leading
elimination block (used internally for colon ideals and morphism kernels);
the block order compares the eliminated variables first, so polynomials free
of them are exactly the elimination ideal members.
"""

from __future__ import annotations

import re
from functools import cmp_to_key

from .fields import DEFAULT_FIELD


def _grevlex_cmp(a, b, weights):
    da = sum(e * w for e, w in zip(a, weights))
    db = sum(e * w for e, w in zip(b, weights))
    if da != db:
        return 1 if da > db else -1
    for i in range(len(a) - 1, -1, -1):
        if a[i] != b[i]:
            return 1 if a[i] < b[i] else -1
    return 0


class PolyRing:
    """k[x_1..x_n] with positive variable weights and a fixed global order."""

    def __init__(self, field=DEFAULT_FIELD, names=(), weights=None, nelim=0):
        names = tuple(names)
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("variable weights must be >= 1")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.weights = weights
        self.nelim = nelim  # leading block of variables compared first

    @property
    def nvars(self) -> int:
        return len(self.names)

    def wdeg(self, exp) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def mono_cmp(self, a, b) -> int:
        ne = self.nelim
        if ne:
            c = _grevlex_cmp(a[:ne], b[:ne], self.weights[:ne])
            if c:
                return c
            return _grevlex_cmp(a[ne:], b[ne:], self.weights[ne:])
        return _grevlex_cmp(a, b, self.weights)

    def mono_key(self):
        return cmp_to_key(self.mono_cmp)

    def mono_str(self, exp) -> str:
        parts = []
        for n, e in zip(self.names, exp):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    # ---- constructors ----

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(self.field.one)

    def const(self, c) -> "Poly":
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i) -> "Poly":
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms) -> "Poly":
        z = self.field.zero
        return Poly(self, {m: c for m, c in terms.items() if c != z})

    def monomials_of_degree(self, d: int):
        """All exponent tuples of weighted degree exactly d, deterministic order."""
        out = []

        def rec(i, rem, acc):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(acc))
                return
            w = self.weights[i]
            for e in range(rem // w + 1):
                rec(i + 1, rem - e * w, acc + [e])

        rec(0, d, [])
        out.sort(key=self.mono_key())
        return out

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
            and other.weights == self.weights
            and other.nelim == self.nelim
        )

    def __hash__(self):
        return hash((self.field, self.names, self.weights, self.nelim))

    def __repr__(self):
        vs = ", ".join(f"{n}({w})" for n, w in zip(self.names, self.weights))
        return f"{self.field}[{vs}]"


def _mul_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial: dict exponent-tuple -> nonzero field scalar."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lm(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.mono_key())
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self):
        """Maximum weighted degree of the terms (None for 0)."""
        if not self.terms:
            return None
        return max(self.ring.wdeg(m) for m in self.terms)

    def homogeneous_degree(self):
        """Common weighted degree if homogeneous, else None."""
        degs = {self.ring.wdeg(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(m) for m in self.terms}) <= 1

    def graded_part(self, d):
        r = self.ring
        return Poly(r, {m: c for m, c in self.terms.items() if r.wdeg(m) == d})

    def __add__(self, other):
        f = self.ring.field
        if not isinstance(other, Poly):
            other = self.ring.const(f.of_int(other))
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if s == f.zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(self.ring.field.of_int(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        f = self.ring.field
        if not isinstance(other, Poly):
            c = other if not isinstance(other, int) else f.of_int(other)
            if c == f.zero:
                return self.ring.zero()
            return Poly(self.ring, {m: f.mul(c, v) for m, v in self.terms.items()})
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_exp(m1, m2)
                s = f.add(terms.get(m, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_term(self, exp, coeff):
        f = self.ring.field
        return Poly(self.ring, {_mul_exp(m, exp): f.mul(c, coeff) for m, c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.lc())

    def map_ring(self, ring, var_map):
        """Reinterpret in another ring; var_map[i] = index of self's i-th var there."""
        terms = {}
        for m, c in self.terms.items():
            exp = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    exp[var_map[i]] += e
            terms[tuple(exp)] = c
        return Poly(ring, terms)

    def sorted_terms(self):
        key = self.ring.mono_key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(self.ring.field.of_int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return poly_str(self)


def poly_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    r = p.ring
    out = []
    for m, c in p.sorted_terms():
        ms = r.mono_str(m)
        cs = str(c)
        if out:
            sign = "+"
            if cs.startswith("-"):
                sign, cs = "-", cs[1:]
            out.append(sign)
        if ms == "1":
            out.append(cs if not out or cs else cs)
        elif cs == "1":
            out.append(ms)
        elif cs == "-1" and not out:
            out.append("-" + ms)
        else:
            out.append(f"{cs}*{ms}")
    return " ".join(s for s in out if s)


# ---- division and Groebner bases ----


def divmod_poly(p: Poly, divisors):
    """Multivariate division: returns (quotients, remainder).

    Deterministic: at each step the first divisor (in list order) whose
    leading monomial divides the current leading monomial is used.
    """
    ring = p.ring
    f = ring.field
    quot = [ring.zero() for _ in divisors]
    rem_terms = {}
    cur = p
    key = ring.mono_key()
    while cur.terms:
        m = cur.lm()
        c = cur.terms[m]
        hit = None
        for i, g in enumerate(divisors):
            gm = g.lm()
            if all(a >= b for a, b in zip(m, gm)):
                hit = i
                break
        if hit is None:
            rem_terms[m] = c
            cur = Poly(ring, {mm: cc for mm, cc in cur.terms.items() if mm != m})
            continue
        g = divisors[hit]
        factor_exp = tuple(a - b for a, b in zip(m, g.lm()))
        factor_c = f.div(c, g.lc())
        quot[hit] = quot[hit] + Poly(ring, {factor_exp: factor_c})
        cur = cur - g.mul_term(factor_exp, factor_c)
    return quot, Poly(ring, rem_terms)


def normal_form(p: Poly, basis) -> Poly:
    if not basis:
        return p
    return divmod_poly(p, basis)[1]


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def buchberger(gens, ring=None):
    """Reduced monic Groebner basis of the given generators.

    Deterministic: pairs are processed by (lcm weighted degree, lcm order);
    the final basis is inter-reduced, monic, and sorted by leading monomial.
    """
    if ring is None:
        if not gens:
            raise ValueError("need ring for empty generator list")
        ring = gens[0].ring
    basis = [g.monic() for g in gens if g and not g.is_zero()]
    # drop duplicates early for stability
    seen = set()
    uniq = []
    for g in basis:
        k = frozenset(g.terms.items())
        if k not in seen:
            seen.add(k)
            uniq.append(g)
    basis = uniq
    key = ring.mono_key()

    def pair_sort(pairs):
        pairs.sort(key=lambda ij: (ring.wdeg(_lcm_exp(basis[ij[0]].lm(), basis[ij[1]].lm())),
                                   key(_lcm_exp(basis[ij[0]].lm(), basis[ij[1]].lm())),
                                   ij))

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    pair_sort(pairs)
    while pairs:
        i, j = pairs.pop(0)
        gi, gj = basis[i], basis[j]
        lcm = _lcm_exp(gi.lm(), gj.lm())
        # Buchberger's coprimality criterion
        if all(a + b == c for a, b, c in zip(gi.lm(), gj.lm(), lcm)):
            continue
        si = gi.mul_term(tuple(a - b for a, b in zip(lcm, gi.lm())), ring.field.one)
        sj = gj.mul_term(tuple(a - b for a, b in zip(lcm, gj.lm())), ring.field.one)
        s = si - sj
        r = normal_form(s, basis)
        if not r.is_zero():
            basis.append(r.monic())
            new = [(t, len(basis) - 1) for t in range(len(basis) - 1)]
            pairs.extend(new)
            pair_sort(pairs)
    # minimalize: drop generators whose lm is divisible by another's
    basis.sort(key=lambda g: key(g.lm()))
    minimal = []
    for i, g in enumerate(basis):
        gm = g.lm()
        if any(j != i and all(a >= b for a, b in zip(gm, h.lm()))
               and (h.lm() != gm or j < i)
               for j, h in enumerate(basis)):
            continue
        minimal.append(g)
    # tail-reduce each against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others) if others else g
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda g: key(g.lm()))
    return reduced


class Ideal:
    """Ideal of a PolyRing with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = [g if isinstance(g, Poly) else ring.parse(g) for g in gens]
        self._gb = None

    @property
    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(self.gens, self.ring)
        return self._gb

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self.groebner)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and [g.terms for g in self.groebner] == [g.terms for g in other.groebner]
        )

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(g.terms.items()) for g in self.groebner)))

    def std_monomials(self, d: int):
        """k-basis of degree-d part of ring/ideal: standard monomials of weighted degree d."""
        lms = [g.lm() for g in self.groebner]
        out = []
        for m in self.ring.monomials_of_degree(d):
            if not any(all(a >= b for a, b in zip(m, lm)) for lm in lms):
                out.append(m)
        return out

    def dim_piece(self, d: int) -> int:
        return len(self.std_monomials(d))

    def intersection(self, other: "Ideal") -> "Ideal":
        """I cap J via the t-trick: eliminate t from t*I + (1-t)*J."""
        ring = self.ring
        ext = PolyRing(ring.field, ("@t",) + ring.names, (1,) + ring.weights, nelim=1)
        vmap = list(range(1, ring.nvars + 1))
        t = ext.var(0)
        gens = [t * g.map_ring(ext, vmap) for g in self.gens if g]
        gens += [(ext.one() - t) * g.map_ring(ext, vmap) for g in other.gens if g]
        gb = buchberger(gens, ext)
        kept = [Poly(ring, {m[1:]: c for m, c in g.terms.items()})
                for g in gb if all(m[0] == 0 for m in g.terms)]
        return Ideal(ring, kept)

    def colon(self, f: Poly) -> "Ideal":
        """(I : f) = { g : g*f in I }, computed from I cap (f)."""
        if f.is_zero():
            raise ValueError("colon by zero")
        cap = self.intersection(Ideal(self.ring, [f]))
        quots = []
        for g in cap.groebner:
            q, r = divmod_poly(g, [f])
            if not r.is_zero():
                raise AssertionError("intersection member not divisible by f")
            quots.append(q[0])
        return Ideal(self.ring, buchberger(quots, self.ring) if quots else [])

    def saturation_degree_zero(self) -> bool:
        return not self.groebner

    def __repr__(self):
        return "Ideal(" + ", ".join(map(str, self.gens)) + ")"


def morphism_kernel_truncated(images, source_names, source_weights, d,
                              target_relations=None):
    """Generators (weighted degree <= d) of the kernel of the ring map
    source -> target sending the i-th source variable to images[i].

    Computed by elimination: in k[target vars (block) | source vars] take
    (x_i - image_i) + target relations and keep the source-only members.
    """
    if not images:
        tring = None
    tring = images[0].ring if images else (target_relations[0].ring if target_relations else None)
    if tring is None:
        raise ValueError("no target ring data")
    sweights = tuple(source_weights)
    if any(w < 1 for w in sweights):
        raise ValueError("non-positive weights")
    ext = PolyRing(
        tring.field,
        tuple("@" + n for n in tring.names) + tuple(source_names),
        tring.weights + sweights,
        nelim=tring.nvars,
    )
    tmap = list(range(tring.nvars))
    gens = []
    for i, img in enumerate(images):
        xi = ext.var(tring.nvars + i)
        gens.append(xi - img.map_ring(ext, tmap))
    for g in (target_relations or []):
        gens.append(g.map_ring(ext, tmap))
    gb = buchberger(gens, ext)
    sring = PolyRing(tring.field, tuple(source_names), sweights)
    out = []
    nt = tring.nvars
    for g in gb:
        if all(all(m[i] == 0 for i in range(nt)) for m in g.terms):
            p = Poly(sring, {m[nt:]: c for m, c in g.terms.items()})
            if p.degree() is not None and p.degree() <= d:
                out.append(p)
    return Ideal(sring, out)


# ---- parsing ----

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9']*|\^|\*|\+|-|\(|\)|/)")


class PolyParseError(ValueError):
    pass


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise PolyParseError(f"bad character {text[pos]!r} at position {pos}")
        toks.append(m.group(1))
        pos = m.end()
    return toks


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse +,-,*,^, integer coefficients, parentheses over ring variables."""
    toks = _tokenize(text)
    idx = [0]

    def peek():
        return toks[idx[0]] if idx[0] < len(toks) else None

    def take():
        t = peek()
        idx[0] += 1
        return t

    def atom():
        t = take()
        if t is None:
            raise PolyParseError("unexpected end of polynomial")
        if t == "(":
            p = expr()
            if take() != ")":
                raise PolyParseError("expected ')'")
        elif t.isdigit():
            p = ring.const(ring.field.of_int(int(t)))
        else:
            if t not in ring.names:
                raise PolyParseError(f"unknown variable {t!r}")
            p = ring.var(ring.names.index(t))
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise PolyParseError("expected integer exponent after '^'")
            p = p ** int(e)
        return p

    def factor():
        neg = False
        while peek() in ("+", "-"):
            if take() == "-":
                neg = not neg
        p = atom()
        while peek() == "*" or (peek() is not None and peek() not in ("+", "-", ")", "*")):
            if peek() == "*":
                take()
            p = p * atom()
        return -p if neg else p

    def expr():
        p = factor()
        while peek() in ("+", "-"):
            op = take()
            q = factor()
            p = p + q if op == "+" else p - q
        return p

    p = expr()
    if peek() is not None:
        raise PolyParseError(f"trailing token {peek()!r}")
    return p
