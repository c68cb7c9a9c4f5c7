"""Sparse polynomials over GF(2^m) in up to three variables X, Y, Z.

A TriPoly is a dict {(a, b, c): coeff} with no zero coefficients. Bivariate
and univariate polynomials in X, Y, Z are TriPolys whose other exponents are
zero. UniPoly is a dense univariate type used for messages f, g.
"""
from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .errors import BothConstantInZ, NotDivisible, ZeroPolynomial
from .galois import FieldContext, FieldElement, extension_for

Monomial = Tuple[int, int, int]
Weights = Tuple[int, int, int]

VAR_INDEX = {"X": 0, "Y": 1, "Z": 2}


def _val(c) -> int:
    return c.value if isinstance(c, FieldElement) else int(c)


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial, coefficients low to high."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable, ctx: FieldContext):
        cs = [_val(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.ctx = ctx

    @classmethod
    def zero(cls, ctx):
        return cls((), ctx)

    @classmethod
    def one(cls, ctx):
        return cls((1,), ctx)

    @classmethod
    def x(cls, ctx):
        return cls((0, 1), ctx)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def eval(self, x) -> int:
        x = _val(x)
        mul = self.ctx.mul
        acc = 0
        for c in reversed(self.coeffs):
            acc = mul(acc, x) ^ c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return UniPoly(out, self.ctx)

    __sub__ = __add__

    def __mul__(self, other) -> "UniPoly":
        mul = self.ctx.mul
        if isinstance(other, (int, FieldElement)):
            c = _val(other)
            return UniPoly([mul(a, c) for a in self.coeffs], self.ctx)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.ctx)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] ^= mul(x, y)
        return UniPoly(out, self.ctx)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        r = list(self.coeffs)
        db = other.degree()
        inv_lc = ctx.inv(other.coeffs[-1])
        q = [0] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                f = ctx.mul(c, inv_lc)
                q[i - db] = f
                for k, b in enumerate(other.coeffs):
                    if b:
                        r[i - db + k] ^= ctx.mul(f, b)
        return UniPoly(q, ctx), UniPoly(r, ctx)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * self.ctx.inv(self.coeffs[-1])

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def to_hex(self) -> List[str]:
        return [f"{c:x}" for c in self.coeffs]

    def __repr__(self):
        return f"UniPoly([{', '.join(self.to_hex())}])"

    @classmethod
    def interpolate(cls, xs: Sequence[int], ys: Sequence[int], ctx: FieldContext) -> "UniPoly":
        """Lagrange interpolation through distinct points (Newton form internally)."""
        n = len(xs)
        mul, div = ctx.mul, ctx.div
        dd = list(ys)
        for lvl in range(1, n):
            for i in range(n - 1, lvl - 1, -1):
                dd[i] = div(dd[i] ^ dd[i - 1], xs[i] ^ xs[i - lvl])
        out = [0] * n
        for i in range(n - 1, -1, -1):
            xi = xs[i]
            for d in range(n - 1 - i, 0, -1):
                out[d] = out[d - 1] ^ mul(out[d], xi)
            out[0] = mul(out[0], xi) ^ dd[i]
        return cls(out, ctx)


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# monomial order


def monomial_key(u: Monomial, w: Weights):
    return (w[0] * u[0] + w[1] * u[1] + w[2] * u[2], u[0], u[1])


def monomial_cmp(u: Monomial, v: Monomial, w: Weights) -> int:
    """-1, 0 or 1 as u is below, equal to, or above v in the weighted order."""
    ku, kv = monomial_key(u, w), monomial_key(v, w)
    return (ku > kv) - (ku < kv)


# ---------------------------------------------------------------------------
# trivariate


class TriPoly:
    __slots__ = ("terms", "ctx")

    def __init__(self, terms: Dict[Monomial, int], ctx: FieldContext):
        self.terms = {tuple(k): _val(v) for k, v in terms.items() if _val(v)}
        self.ctx = ctx

    @classmethod
    def _raw(cls, terms, ctx):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.ctx = ctx
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._raw({}, ctx)

    @classmethod
    def constant(cls, c, ctx):
        return cls({(0, 0, 0): c}, ctx)

    @classmethod
    def monomial(cls, exps: Monomial, ctx, coeff=1):
        return cls({tuple(exps): coeff}, ctx)

    @classmethod
    def var(cls, name: str, ctx):
        e = [0, 0, 0]
        e[VAR_INDEX[name]] = 1
        return cls({tuple(e): 1}, ctx)

    @classmethod
    def from_uni(cls, f: UniPoly, var: str = "X"):
        i = VAR_INDEX[var]
        terms = {}
        for d, c in enumerate(f.coeffs):
            if c:
                e = [0, 0, 0]
                e[i] = d
                terms[tuple(e)] = c
        return cls._raw(terms, f.ctx)

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self):
        return TriPoly._raw(dict(self.terms), self.ctx)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, TriPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "TriPoly") -> "TriPoly":
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, 0) ^ v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return TriPoly._raw(out, self.ctx)

    __sub__ = __add__

    def __neg__(self):
        return self

    def scale(self, c) -> "TriPoly":
        c = _val(c)
        if c == 0:
            return TriPoly.zero(self.ctx)
        mul = self.ctx.mul
        return TriPoly._raw({k: mul(v, c) for k, v in self.terms.items()}, self.ctx)

    def shift(self, exps: Monomial) -> "TriPoly":
        a, b, c = exps
        return TriPoly._raw({(p + a, q + b, r + c): v for (p, q, r), v in self.terms.items()}, self.ctx)

    def __mul__(self, other) -> "TriPoly":
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        ctx = self.ctx
        exp, log = ctx.exp, ctx.log
        out: Dict[Monomial, int] = {}
        big = [(k, log[v]) for k, v in self.terms.items()]
        for (a2, b2, c2), v2 in other.terms.items():
            l2 = log[v2]
            for (a1, b1, c1), l1 in big:
                k = (a1 + a2, b1 + b2, c1 + c2)
                nv = out.get(k, 0) ^ exp[l1 + l2]
                if nv:
                    out[k] = nv
                else:
                    del out[k]
        return TriPoly._raw(out, ctx)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TriPoly":
        out = TriPoly.constant(1, self.ctx)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = VAR_INDEX[var]
        return max((k[i] for k in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def sorted_terms(self, w: Weights = (1, 1, 1), descending: bool = True):
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0], w), reverse=descending)

    def leading_monomial(self, w: Weights) -> Monomial:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda k: monomial_key(k, w))

    def leading_coefficient(self, w: Weights) -> int:
        return self.terms[self.leading_monomial(w)]

    def evaluate(self, x, y=0, z=0) -> int:
        x, y, z = _val(x), _val(y), _val(z)
        ctx = self.ctx
        acc = 0
        for (a, b, c), v in self.terms.items():
            t = ctx.mul(v, ctx.mul(ctx.pow(x, a), ctx.mul(ctx.pow(y, b), ctx.pow(z, c))))
            acc ^= t
        return acc

    def coeffs_in(self, var: str) -> Dict[int, "TriPoly"]:
        """Split into {exponent of var: coefficient polynomial without var}."""
        i = VAR_INDEX[var]
        out: Dict[int, Dict] = {}
        for k, v in self.terms.items():
            e = k[i]
            kk = list(k)
            kk[i] = 0
            out.setdefault(e, {})[tuple(kk)] = v
        return {e: TriPoly._raw(t, self.ctx) for e, t in out.items()}

    def divexact(self, d: "TriPoly") -> "TriPoly":
        """Exact division; raises NotDivisible if d does not divide self."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        exp, log = ctx.exp, ctx.log
        q1 = ctx.order - 1
        lt = max(d.terms)  # lex order on (a, b, c)
        lc_log = log[d.terms[lt]]
        dterms = [(k, log[v]) for k, v in d.terms.items() if k != lt]
        rem = dict(self.terms)
        quo: Dict[Monomial, int] = {}
        # max-heap of candidate keys; stale entries are skipped on pop
        heap = [(-a, -b, -c) for a, b, c in rem]
        heapq.heapify(heap)
        while rem:
            na, nb, nc = heapq.heappop(heap)
            k = (-na, -nb, -nc)
            if k not in rem:
                continue
            e = (k[0] - lt[0], k[1] - lt[1], k[2] - lt[2])
            if min(e) < 0:
                raise NotDivisible("polynomial is not divisible")
            fl = (log[rem.pop(k)] - lc_log) % q1
            quo[e] = exp[fl]
            for (a, b, c), lv in dterms:
                kk = (a + e[0], b + e[1], c + e[2])
                prev = rem.get(kk, 0)
                nv = prev ^ exp[lv + fl]
                if nv:
                    rem[kk] = nv
                    if not prev:
                        heapq.heappush(heap, (-kk[0], -kk[1], -kk[2]))
                else:
                    del rem[kk]
        return TriPoly._raw(quo, ctx)

    def monic(self, w: Weights = (1, 1, 1)) -> "TriPoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.leading_coefficient(w)))

    def to_string(self, w: Weights = (1, 1, 1)) -> str:
        return format_poly(self, w)

    def __repr__(self):
        return f"TriPoly({format_poly(self, (1, 1, 1))})"


BiPoly = TriPoly


def format_poly(p: TriPoly, w: Weights = (1, 1, 1)) -> str:
    """Terms as 'coeff·X^a·Y^b·Z^c', largest first in the weighted order."""
    if p.is_zero():
        return "0"
    parts = []
    for (a, b, c), v in p.sorted_terms(w):
        parts.append(f"{v:x}·X^{a}·Y^{b}·Z^{c}")
    return " + ".join(parts)


def weighted_degree(p: TriPoly, w: Weights) -> int:
    if p.is_zero():
        raise ZeroPolynomial("weighted degree of 0 is undefined")
    a, b, c = p.leading_monomial(w)
    return w[0] * a + w[1] * b + w[2] * c


def leading_monomial(p: TriPoly, w: Weights) -> Monomial:
    return p.leading_monomial(w)


def _binom_odd(n: int, k: int) -> bool:
    return (n & k) == k


def hasse_derivative(p: TriPoly, order: Monomial) -> TriPoly:
    i, j, k = order
    out = {}
    for (a, b, c), v in p.terms.items():
        if a >= i and b >= j and c >= k and _binom_odd(a, i) and _binom_odd(b, j) and _binom_odd(c, k):
            out[(a - i, b - j, c - k)] = v
    return TriPoly._raw(out, p.ctx)


def hasse_at(p: TriPoly, order: Monomial, point) -> int:
    """Value of the Hasse derivative of the given order at a point."""
    i, j, k = order
    x, y, z = (_val(v) for v in point)
    ctx = p.ctx
    mul, pw = ctx.mul, ctx.pow
    acc = 0
    for (a, b, c), v in p.terms.items():
        if a >= i and b >= j and c >= k and (a & i) == i and (b & j) == j and (c & k) == k:
            acc ^= mul(v, mul(pw(x, a - i), mul(pw(y, b - j), pw(z, c - k))))
    return acc


def passes_with_multiplicity(p: TriPoly, point, m: int) -> bool:
    for s in range(m):
        for a in range(s + 1):
            for b in range(s - a + 1):
                if hasse_at(p, (a, b, s - a - b), point):
                    return False
    return True


def multiplicity_at(p: TriPoly, point) -> int:
    if p.is_zero():
        raise ZeroPolynomial("multiplicity of the zero polynomial is unbounded")
    s = 0
    while True:
        for a in range(s + 1):
            for b in range(s - a + 1):
                if hasse_at(p, (a, b, s - a - b), point):
                    return s
        s += 1


def substitute(p: TriPoly, f: UniPoly, g: UniPoly) -> UniPoly:
    """p(X, f(X), g(X))."""
    ctx = p.ctx
    if p.is_zero():
        return UniPoly.zero(ctx)
    maxb = max(k[1] for k in p.terms)
    maxc = max(k[2] for k in p.terms)
    fp = [UniPoly.one(ctx)]
    for _ in range(maxb):
        fp.append(fp[-1] * f)
    gp = [UniPoly.one(ctx)]
    for _ in range(maxc):
        gp.append(gp[-1] * g)
    acc: List[int] = []
    cache = {}
    for (a, b, c), v in p.terms.items():
        prod = cache.get((b, c))
        if prod is None:
            prod = fp[b] * gp[c]
            cache[(b, c)] = prod
        cs = prod.coeffs
        need = a + len(cs)
        if len(acc) < need:
            acc.extend([0] * (need - len(acc)))
        for i, x in enumerate(cs):
            if x:
                acc[a + i] ^= ctx.mul(x, v)
    return UniPoly(acc, ctx)


# ---------------------------------------------------------------------------
# resultants


def _sylvester(q: TriPoly, p: TriPoly, var: str):
    cq = q.coeffs_in(var)
    cp = p.coeffs_in(var)
    dq = max(cq, default=-1)
    dp = max(cp, default=-1)
    ctx = q.ctx
    zero = TriPoly.zero(ctx)
    n = dq + dp
    rows = []
    for i in range(dp):
        row = [zero] * n
        for e, c in cq.items():
            row[i + dq - e] = c
        rows.append(row)
    for i in range(dq):
        row = [zero] * n
        for e, c in cp.items():
            row[i + dp - e] = c
        rows.append(row)
    return rows


def resultant_bareiss(q: TriPoly, p: TriPoly, var: str = "Z") -> TriPoly:
    """Sylvester determinant by fraction-free elimination with exact division."""
    if q.is_zero() or p.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    dq, dp = q.degree(var), p.degree(var)
    if dq == 0 and dp == 0:
        raise BothConstantInZ(f"neither input involves {var}")
    M = _sylvester(q, p, var)
    n = len(M)
    ctx = q.ctx
    prev = TriPoly.constant(1, ctx)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    break
            else:
                return TriPoly.zero(ctx)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i = M[i]
            row_k = M[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j]
                if not mik.is_zero() and not row_k[j].is_zero():
                    num = num + mik * row_k[j]
                row_i[j] = num.divexact(prev) if not num.is_zero() else num
            row_i[k] = TriPoly.zero(ctx)
        prev = pivot
    return M[n - 1][n - 1]


def _dense_for_resultant(p: TriPoly, var: str):
    """Array A[w, v, x] where w = eliminated variable exponent, v = survivor."""
    wi = VAR_INDEX[var]
    vi = 3 - wi  # survivor among Y(1)/Z(2)
    keys = np.array(list(p.terms.keys()), dtype=np.int64).reshape(-1, 3)
    vals = np.array(list(p.terms.values()), dtype=np.int64)
    A = np.zeros((keys[:, wi].max() + 1, keys[:, vi].max() + 1, keys[:, 0].max() + 1), dtype=np.int32)
    A[keys[:, wi], keys[:, vi], keys[:, 0]] = vals
    return A, keys[:, 0], keys[:, vi], keys[:, wi]


def _weight_bound(xs, vs, ws, d_other, wx, wv, ww):
    return int((wx * xs + wv * vs + ww * ws).max())


def _resultant_bounds(q: TriPoly, p: TriPoly, var: str, hint: int | None):
    _, qx, qv, qw = _dense_for_resultant(q, var)
    _, px, pv, pw = _dense_for_resultant(p, var)
    dQ = int(qw.max())
    dP = int(pw.max())
    maxx = int(max(qx.max(), px.max()))
    cand = {0}
    e = 1
    while e <= 2 * maxx + 2:
        cand.add(e)
        e *= 2
    if hint:
        cand.add(int(hint))
    cand = sorted(cand)

    def bound(wx, wv, ww):
        DQ = int((wx * qx + wv * qv + ww * qw).max())
        DP = int((wx * px + wv * pv + ww * pw).max())
        return dP * DQ + dQ * DP - ww * dP * dQ

    # degree in the survivor variable
    dv = min(bound(0, 1, ww) for ww in cand)
    dv = min(dv, dP * int(qv.max()) + dQ * int(pv.max()))
    xb = np.full(dv + 1, 1 << 60, dtype=np.int64)
    bs = np.arange(dv + 1, dtype=np.int64)
    for wv in cand:
        for ww in cand:
            xb = np.minimum(xb, bound(1, wv, ww) - wv * bs)
    return dQ, dP, dv, xb


def resultant_eval(q: TriPoly, p: TriPoly, var: str = "Z", hint: int | None = None) -> TriPoly:
    """Same determinant as resultant_bareiss, computed by evaluation and interpolation
    over an extension field. Degree bounds come from weighted-degree estimates."""
    if q.is_zero() or p.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    ctx = q.ctx
    dq, dp = q.degree(var), p.degree(var)
    if dq == 0 and dp == 0:
        raise BothConstantInZ(f"neither input involves {var}")
    dQ, dP, dv, xb = _resultant_bounds(q, p, var, hint)
    xb = np.maximum(xb, -1)
    nx = int(xb.max()) + 1
    if nx <= 0:
        return TriPoly.zero(ctx)
    ny = dv + 1
    ext = extension_for(ctx, max(nx, ny, 2))
    Aq, *_ = _dense_for_resultant(q, var)
    Ap, *_ = _dense_for_resultant(p, var)
    Aq = ext.embed[Aq]
    Ap = ext.embed[Ap]
    H = K.resultant_grid(Aq, dQ, Ap, dP, nx, ny, xb.astype(np.int64), ext.exp, ext.log, ext.order - 1)
    Hb = ext.unembed[H]
    if (Hb < 0).any():
        raise ArithmeticError("resultant coefficient outside the base field")
    xs, vs = np.nonzero(Hb)
    vi = 3 - VAR_INDEX[var]
    terms = {}
    for a, b in zip(xs.tolist(), vs.tolist()):
        e = [a, 0, 0]
        e[vi] = b
        terms[tuple(e)] = int(Hb[a, b])
    return TriPoly._raw(terms, ctx)


def resultant(q: TriPoly, p: TriPoly, var: str = "Z", method: str = "auto", hint: int | None = None) -> TriPoly:
    if method == "auto":
        method = "bareiss" if len(q) * len(p) <= 400 and q.degree(var) + p.degree(var) <= 6 else "eval"
    if method == "bareiss":
        return resultant_bareiss(q, p, var)
    return resultant_eval(q, p, var, hint)


def resultant_z(q: TriPoly, p: TriPoly, **kw) -> TriPoly:
    return resultant(q, p, "Z", **kw)


def resultant_y(q: TriPoly, p: TriPoly, **kw) -> TriPoly:
    return resultant(q, p, "Y", **kw)


# ---------------------------------------------------------------------------
# gcd by nested primitive pseudo-remainder sequences


def _prem(a: TriPoly, b: TriPoly, var: str) -> TriPoly:
    i = VAR_INDEX[var]
    db = b.degree(var)
    cb = b.coeffs_in(var)
    lcb = cb[db]
    rest_b = b + lcb.shift(tuple(db if t == i else 0 for t in range(3)))
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        lcr = r.coeffs_in(var)[dr]
        sh = tuple(dr - db if t == i else 0 for t in range(3))
        top = lcr.shift(tuple(dr if t == i else 0 for t in range(3)))
        r = lcb * (r + top) + (lcr * rest_b).shift(sh)
    return r


def _gcd_rec(a: TriPoly, b: TriPoly, variables: Tuple[str, ...]) -> TriPoly:
    ctx = a.ctx
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    main = variables[0]
    rest = variables[1:]
    if not rest:
        i = VAR_INDEX[main]
        fa = UniPoly([a.terms.get(tuple(d if t == i else 0 for t in range(3)), 0) for d in range(a.degree(main) + 1)], ctx)
        fb = UniPoly([b.terms.get(tuple(d if t == i else 0 for t in range(3)), 0) for d in range(b.degree(main) + 1)], ctx)
        return TriPoly.from_uni(uni_gcd(fa, fb), main)
    ca = _content(a, main, rest)
    cb = _content(b, main, rest)
    c = _gcd_rec(ca, cb, rest)
    pa = a.divexact(ca)
    pb = b.divexact(cb)
    if pa.degree(main) < pb.degree(main):
        pa, pb = pb, pa
    while not pb.is_zero() and pb.degree(main) > 0:
        r = _prem(pa, pb, main)
        pa = pb
        if r.is_zero():
            pb = r
            break
        pb = r.divexact(_content(r, main, rest))
    if not pb.is_zero():
        # remainder became a nonzero element of the coefficient ring
        return c
    g = pa.divexact(_content(pa, main, rest))
    return c * g


def _content(p: TriPoly, main: str, rest: Tuple[str, ...]) -> TriPoly:
    g = TriPoly.zero(p.ctx)
    for coef in sorted(p.coeffs_in(main).values(), key=len):
        g = _gcd_rec(g, coef, rest)
        if g.total_degree() == 0:
            return TriPoly.constant(1, p.ctx)
    return g


def trivariate_gcd(q: TriPoly, p: TriPoly, w: Weights = (1, 1, 1), method: str = "auto") -> TriPoly:
    """gcd in F[X,Y,Z], scaled so its leading coefficient under the weighted order is 1.

    "prs" runs nested primitive pseudo-remainder sequences; "eval" evaluates X at
    points of an extension field and interpolates (used for large inputs).
    """
    if q.is_zero() and p.is_zero():
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if q.is_zero() or p.is_zero():
        return (p if q.is_zero() else q).monic(w)
    if method == "auto":
        small, big = (q, p) if len(q) <= len(p) else (p, q)
        # cheap exit: the smaller input already divides the larger one
        if 4 * len(small) <= len(big):
            try:
                big.divexact(small)
                return small.monic(w)
            except NotDivisible:
                pass
        method = "prs" if len(q) + len(p) <= 200 else "eval"
    if method == "prs":
        g = _gcd_rec(q, p, ("Z", "Y", "X"))
    else:
        g = _gcd_eval(q, p)
    return g.monic(w)


def _x_coeff_groups(p: TriPoly) -> Dict[Tuple[int, int], UniPoly]:
    groups: Dict[Tuple[int, int], Dict[int, int]] = {}
    for (a, b, c), v in p.terms.items():
        groups.setdefault((b, c), {})[a] = v
    out = {}
    for k, d in groups.items():
        cs = [0] * (max(d) + 1)
        for a, v in d.items():
            cs[a] = v
        out[k] = UniPoly(cs, p.ctx)
    return out


def _x_content(groups) -> UniPoly:
    g = None
    for f in sorted(groups.values(), key=lambda u: u.degree()):
        g = f.monic() if g is None else uni_gcd(g, f)
        if g.degree() == 0:
            break
    return g


def _yz_key(bc):
    return (bc[0] + bc[1], bc[0], bc[1])


class _EvalField:
    """Python-level extension field plus its embedding of the base field."""

    def __init__(self, base: FieldContext):
        ext = extension_for(base, 1024)
        self.ext = ext
        self.ctx = FieldContext(ext.e, ext.modulus, _skip_check=True)
        self.embed = [int(v) for v in ext.embed]
        self.sub = set(self.embed)


_EVAL_FIELDS: Dict[Tuple[int, int], _EvalField] = {}


def _eval_field(base: FieldContext) -> _EvalField:
    key = (base.m, base.modulus)
    if key not in _EVAL_FIELDS:
        _EVAL_FIELDS[key] = _EvalField(base)
    return _EVAL_FIELDS[key]


def _specialize_x(groups, xi: int, ef: _EvalField) -> TriPoly:
    E = ef.ctx
    emb = ef.embed
    terms = {}
    for (b, c), f in groups.items():
        acc = 0
        for v in reversed(f.coeffs):
            acc = E.mul(acc, xi) ^ emb[v]
        if acc:
            terms[(0, b, c)] = acc
    return TriPoly._raw(terms, E)


def _gcd_eval(q: TriPoly, p: TriPoly) -> TriPoly:
    ctx = q.ctx
    gq, gp = _x_coeff_groups(q), _x_coeff_groups(p)
    cq, cp = _x_content(gq), _x_content(gp)
    cont = uni_gcd(cq, cp)
    if cq.degree() > 0:
        gq = {k: f.divmod(cq)[0] for k, f in gq.items()}
    if cp.degree() > 0:
        gp = {k: f.divmod(cp)[0] for k, f in gp.items()}
    q1 = TriPoly._raw({(a, b, c): v for (b, c), f in gq.items() for a, v in enumerate(f.coeffs) if v}, ctx)
    p1 = TriPoly._raw({(a, b, c): v for (b, c), f in gp.items() for a, v in enumerate(f.coeffs) if v}, ctx)
    lq = gq[max(gq, key=_yz_key)]
    lp = gp[max(gp, key=_yz_key)]
    gamma = uni_gcd(lq, lp)
    ef = _eval_field(ctx)
    E = ef.ctx
    emb = ef.embed
    inv_emb = {v: i for i, v in enumerate(emb)}

    def ev(f: UniPoly, xi):
        acc = 0
        for v in reversed(f.coeffs):
            acc = E.mul(acc, xi) ^ emb[v]
        return acc

    limit = gamma.degree() + min(q1.degree("X"), p1.degree("X")) + 1
    xs: List[int] = []
    imgs: List[Dict[Tuple[int, int], int]] = []
    best = None
    check_at = 1
    xi = 1
    while xi < E.order:
        cand_x = xi
        xi += 1
        if cand_x in ef.sub:
            continue
        if ev(lq, cand_x) == 0 or ev(lp, cand_x) == 0:
            continue
        a = _specialize_x(gq, cand_x, ef)
        b = _specialize_x(gp, cand_x, ef)
        g = _gcd_rec(a, b, ("Z", "Y"))
        lm = max(((k[1], k[2]) for k in g.terms), key=_yz_key)
        key = _yz_key(lm)
        if best is not None and key > best:
            continue
        if best is None or key < best:
            best = key
            xs, imgs = [], []
        scale = E.mul(E.inv(g.terms[(0, lm[0], lm[1])]), ev(gamma, cand_x))
        imgs.append({(k[1], k[2]): E.mul(v, scale) for k, v in g.terms.items()})
        xs.append(cand_x)
        if len(xs) >= min(check_at, limit):
            check_at *= 2
            cand = _interpolate_images(xs, imgs, E, inv_emb, ctx)
            if cand is None:
                continue
            cg = _x_coeff_groups(cand)
            cc = _x_content(cg)
            if cc.degree() > 0:
                cand = TriPoly._raw({(a2, b2, c2): v for (b2, c2), f in cg.items()
                                     for a2, v in enumerate(f.divmod(cc)[0].coeffs) if v}, ctx)
            try:
                q1.divexact(cand)
                p1.divexact(cand)
            except NotDivisible:
                continue
            return cand * TriPoly.from_uni(cont, "X")
    raise ArithmeticError("evaluation gcd ran out of points")


def _interpolate_images(xs, imgs, E: FieldContext, inv_emb, ctx) -> Optional[TriPoly]:
    keys = set()
    for im in imgs:
        keys.update(im)
    terms = {}
    for bc in keys:
        ys = [im.get(bc, 0) for im in imgs]
        f = UniPoly.interpolate(xs, ys, E)
        for a, v in enumerate(f.coeffs):
            if v:
                bv = inv_emb.get(v)
                if bv is None:
                    return None
                terms[(a, bc[0], bc[1])] = bv
    return TriPoly._raw(terms, ctx)


# ---------------------------------------------------------------------------
# roots Y = f(X) with deg f < bound


def _to_dense_xy(h: TriPoly, var: str) -> np.ndarray:
    vi = VAR_INDEX[var]
    other = 3 - vi
    for k in h.terms:
        if k[other]:
            raise ValueError(f"polynomial involves a variable besides X and {var}")
    keys = np.array(list(h.terms.keys()), dtype=np.int64).reshape(-1, 3)
    vals = np.array(list(h.terms.values()), dtype=np.int32)
    A = np.zeros((keys[:, 0].max() + 1, keys[:, vi].max() + 1), dtype=np.int32)
    A[keys[:, 0], keys[:, vi]] = vals
    return A


def dense_y_roots(A: np.ndarray, deg_bound: int, ctx: FieldContext) -> List[Tuple[int, ...]]:
    """Roth-Ruckenstein on a dense A[x_deg, y_deg]; returns coefficient tuples (trimmed)."""
    exp, log = ctx.exp_np, ctx.log_np
    q1 = ctx.order - 1
    found: List[Tuple[int, ...]] = []
    seen = set()
    root = K.strip_x(np.ascontiguousarray(A, dtype=np.int32))
    stack = [(root, ())]
    while stack:
        Q, prefix = stack.pop()
        if not Q[:, 0].any():
            f = list(prefix)
            while f and f[-1] == 0:
                f.pop()
            t = tuple(f)
            if t not in seen:
                seen.add(t)
                found.append(t)
        if len(prefix) >= deg_bound:
            continue
        roots = K.rr_children_roots(Q, ctx.order, exp, log)
        # push in reverse so ascending roots are explored first
        for c in roots[::-1].tolist():
            child = K.rr_shift(Q, c, exp, log, q1)
            if not child.any():
                continue
            stack.append((child, prefix + (c,)))
    return found


def y_roots(h: TriPoly, deg_bound: int, var: str = "Y") -> List[UniPoly]:
    """All f with deg f < deg_bound and h(X, f(X)) = 0, h a polynomial in X and var."""
    if h.is_zero():
        raise ZeroPolynomial("every polynomial is a root of 0")
    A = _to_dense_xy(h, var)
    return [UniPoly(t, h.ctx) for t in dense_y_roots(A, deg_bound, h.ctx)]
