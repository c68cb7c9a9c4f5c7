"""Interpolation-based list decoder for 2-interleaved binary alternant codes.

Three phases: a monomial starting basis, Koetter-style incremental
interpolation under the (1, k-1, k-1) weighted order, and recovery of
(f, g) through resultants and Y-/Z-root extraction.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .bounds import compute_delta, interpolation_cost, mu_from_delta
from .codes import CodeSpec, column_distance, grs_encode
from .errors import BadMultiplicities, BothConstantInZ
from .poly import TriPoly, UniPoly, dense_y_roots, resultant, trivariate_gcd, weighted_degree

SIDE_PATTERNS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class DecoderParams:
    n: int
    k_grs: int
    m1: int
    m2: int
    delta: float = field(init=False)
    mu: int = field(init=False)
    l: int = field(init=False)

    def __post_init__(self):
        if not (self.m1 >= 1 and 0 <= self.m2 < self.m1):
            raise BadMultiplicities(f"need 0 <= m2 < m1, got ({self.m1}, {self.m2})")
        object.__setattr__(self, "delta", compute_delta(self.n, self.k_grs, self.m1, self.m2))
        mu = mu_from_delta(self.n, self.k_grs, self.m1, self.m2)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "l", mu * (mu + 1) // 2)

    @property
    def weights(self) -> Tuple[int, int, int]:
        return (1, self.k_grs - 1, self.k_grs - 1)

    @property
    def cost(self) -> int:
        return interpolation_cost(self.m1, self.m2, self.n)


class BasisState:
    """l polynomials stored densely: coeffs[j, t, p] for X^p Y^q Z^r, slice t <-> (q, r), q + r < mu."""

    def __init__(self, ctx, mu: int, k_grs: int, xcap: int = 64):
        self.ctx = ctx
        self.mu = mu
        self.K = k_grs - 1
        pairs = [(q, r) for q in range(mu) for r in range(mu - q)]
        self.tq = np.array([q for q, _ in pairs], dtype=np.int64)
        self.tr = np.array([r for _, r in pairs], dtype=np.int64)
        T = len(pairs)
        self.coeffs = np.zeros((T, T, xcap), dtype=np.int32)
        for j in range(T):
            self.coeffs[j, j, 0] = 1
        self.lm_a = np.zeros(T, dtype=np.int64)
        self.lm_b = self.tq.copy()
        self.lm_c = self.tr.copy()
        self.constraints = 0

    @property
    def l(self) -> int:
        return self.coeffs.shape[0]

    @property
    def weights(self):
        return (1, self.K, self.K)

    def lm_degree(self, j: int) -> int:
        return int(self.lm_a[j] + self.K * (self.lm_b[j] + self.lm_c[j]))

    def leading_monomial(self, j: int):
        return (int(self.lm_a[j]), int(self.lm_b[j]), int(self.lm_c[j]))

    def ensure_capacity(self, extra: int):
        need = int((self.lm_a + self.K * (self.lm_b + self.lm_c)).max()) + extra + 2
        cap = self.coeffs.shape[2]
        if need > cap:
            new = max(need, 2 * cap)
            grown = np.zeros(self.coeffs.shape[:2] + (new,), dtype=np.int32)
            grown[:, :, :cap] = self.coeffs
            self.coeffs = grown

    def order(self) -> List[int]:
        keys = [(self.lm_degree(j), int(self.lm_a[j]), int(self.lm_b[j])) for j in range(self.l)]
        return sorted(range(self.l), key=lambda j: keys[j])

    def sort(self):
        idx = np.array(self.order(), dtype=np.int64)
        self.coeffs = self.coeffs[idx].copy()
        self.lm_a = self.lm_a[idx].copy()
        self.lm_b = self.lm_b[idx].copy()
        self.lm_c = self.lm_c[idx].copy()

    def poly(self, j: int) -> TriPoly:
        G = self.coeffs[j]
        ts, ps = np.nonzero(G)
        terms = {}
        for t, p in zip(ts.tolist(), ps.tolist()):
            terms[(p, int(self.tq[t]), int(self.tr[t]))] = int(G[t, p])
        return TriPoly._raw(terms, self.ctx)

    def polys(self) -> List[TriPoly]:
        return [self.poly(j) for j in range(self.l)]


def init_basis(params: DecoderParams, ctx) -> BasisState:
    """Y^i Z^j for i + j < mu, ordered i outer, j inner."""
    return BasisState(ctx, params.mu, params.k_grs, xcap=max(64, int(params.delta) + 8))


def column_points(spec: CodeSpec, R: np.ndarray, s: int, m1: int, m2: int):
    """The four (point, multiplicity) pairs of column s, received point first."""
    binv = spec.ctx.inv(spec.multipliers[s])
    x = spec.locators[s]
    rec = (int(R[0, s]), int(R[1, s]))
    pts = [((x, binv if rec[0] else 0, binv if rec[1] else 0), m1)]
    for pat in SIDE_PATTERNS:
        if pat != rec:
            pts.append(((x, binv if pat[0] else 0, binv if pat[1] else 0), m2))
    return pts


def interpolate(state: BasisState, spec: CodeSpec, R: np.ndarray, params: DecoderParams) -> BasisState:
    ctx = spec.ctx
    exp, log = ctx.exp_np, ctx.log_np
    q1 = ctx.order - 1
    R = np.asarray(R)
    for s in range(spec.n):
        for (x, y, z), mult in column_points(spec, R, s, params.m1, params.m2):
            if mult == 0:
                continue
            state.ensure_capacity(mult * (mult + 1) * (mult + 2) // 6)
            state.constraints += K.interpolate_point(
                state.coeffs, state.lm_a, state.lm_b, state.lm_c, state.tq, state.tr,
                state.K, x, y, z, mult, exp, log, q1,
            )
    state.sort()
    return state


@dataclass
class DecodeResult:
    status: str
    tau_hat: Optional[Fraction]
    candidates: List[Tuple[UniPoly, UniPoly]]
    raw_list: List[Tuple[UniPoly, UniPoly]]
    delta_hat: Optional[int] = None
    pair_degrees: Optional[Tuple[int, int]] = None
    pair_index: Optional[int] = None
    constraints_processed: int = 0
    gcd_branches: int = 0
    notes: List[str] = field(default_factory=list)
    distances: List[int] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == "success"

    @property
    def raw_list_size(self) -> int:
        return len(self.raw_list)

    @property
    def list_size(self) -> int:
        return len(self.candidates)


def _roots(h: Optional[TriPoly], var: str, bound: int) -> List[UniPoly]:
    if h is None or h.is_zero():
        return []
    from .poly import _to_dense_xy

    A = _to_dense_xy(h, var)
    return [UniPoly(t, h.ctx) for t in dense_y_roots(A, bound, h.ctx)]


def _safe_resultant(q: TriPoly, p: TriPoly, var: str, hint: int) -> Optional[TriPoly]:
    try:
        return resultant(q, p, var, hint=hint)
    except BothConstantInZ:
        return None


def _pairs_from(q: TriPoly, p: TriPoly, k_grs: int, hint: int, hz=None, hy=None):
    if hz is None:
        hz = _safe_resultant(q, p, "Z", hint)
    fs = _roots(hz, "Y", k_grs)
    if not fs:
        return []
    if hy is None:
        hy = _safe_resultant(q, p, "Y", hint)
    gs = _roots(hy, "Z", k_grs)
    return list(product(fs, gs))


def recover(state: BasisState, spec: CodeSpec, params: DecoderParams) -> DecodeResult:
    """Walk the sorted basis until a pair without a common Y/Z factor is found."""
    k = spec.k_grs
    hint = k - 1
    w = params.weights
    raw: List[Tuple[UniPoly, UniPoly]] = []
    gcd_branches = 0
    notes: List[str] = []
    Q = state.poly(0)
    l = state.l
    if l < 2:
        return DecodeResult("failure", None, [], [], constraints_processed=state.constraints,
                            notes=["basis has a single element"])
    for i in range(1, l):
        P = state.poly(i)
        hz = _safe_resultant(Q, P, "Z", hint)
        hy = _safe_resultant(Q, P, "Y", hint)
        # a zero resultant in Z (resp. Y) is equivalent to a common factor of positive
        # Z- (resp. Y-) degree; an undefined one means neither input involves that variable
        share_z = hz is not None and hz.is_zero()
        share_y = hy is not None and hy.is_zero()
        if not share_z and not share_y:
            raw.extend(_pairs_from(Q, P, k, hint, hz, hy))
            delta_hat = state.lm_degree(i)
            tau = Fraction(spec.n * params.m1 - delta_hat, params.m1 - params.m2)
            return DecodeResult(
                "success", tau, [], _dedupe(raw),
                delta_hat=delta_hat,
                pair_degrees=(weighted_degree(Q, w), delta_hat),
                pair_index=i,
                constraints_processed=state.constraints,
                gcd_branches=gcd_branches,
                notes=notes,
            )
        gcd_branches += 1
        phi = trivariate_gcd(Q, P, w)
        U = Q.divexact(phi)
        V = P.divexact(phi)
        if U.degree("Y") > 0 or U.degree("Z") > 0 or V.degree("Y") > 0 or V.degree("Z") > 0:
            raw.extend(_pairs_from(U, V, k, hint))
        notes.append(f"common factor at basis index {i}: deg_Y={phi.degree('Y')}, deg_Z={phi.degree('Z')}")
        Q = phi
    # a failed decode reports no list; pairs gathered along the way are only counted
    notes.append(f"no coprime pair in the basis; {len(_dedupe(raw))} intermediate pairs discarded")
    return DecodeResult("failure", None, [], [], constraints_processed=state.constraints,
                        gcd_branches=gcd_branches, notes=notes)


def _dedupe(pairs):
    seen = set()
    out = []
    for f, g in pairs:
        key = (f.coeffs, g.coeffs)
        if key not in seen:
            seen.add(key)
            out.append((f, g))
    return out


def codeword_rows(spec: CodeSpec, f: UniPoly, g: UniPoly):
    return grs_encode(spec, f), grs_encode(spec, g)


def post_filter(result: DecodeResult, spec: CodeSpec, R: np.ndarray) -> DecodeResult:
    """Keep pairs whose rows are binary and lie within column distance tau_hat of R."""
    kept, dists = [], []
    if result.tau_hat is None:
        result.candidates, result.distances = kept, dists
        return result
    for f, g in result.raw_list:
        r1, r2 = codeword_rows(spec, f, g)
        if any(v > 1 for v in r1) or any(v > 1 for v in r2):
            continue
        dist = column_distance(np.array([r1, r2]), R)
        if dist <= result.tau_hat:
            kept.append((f, g))
            dists.append(dist)
    result.candidates, result.distances = kept, dists
    return result


def decode(R: np.ndarray, spec: CodeSpec, params: DecoderParams, keep_basis: bool = False):
    t0 = time.perf_counter()
    state = init_basis(params, spec.ctx)
    interpolate(state, spec, np.asarray(R), params)
    t1 = time.perf_counter()
    res = recover(state, spec, params)
    t2 = time.perf_counter()
    post_filter(res, spec, np.asarray(R))
    res.timings = {"interpolate_s": t1 - t0, "recover_s": t2 - t1}
    if keep_basis:
        res.basis = state  # type: ignore[attr-defined]
    return res
