"""GRS, binary alternant and 2-interleaved alternant codes, plus the column-error channel."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import BadDimension, DegreeTooHigh, DuplicateLocator, EmptyCode, TooManyErrors, ZeroMultiplier
from .galois import FieldContext, FieldElement, make_field
from .poly import UniPoly


@dataclass(frozen=True)
class CodeSpec:
    ctx: FieldContext
    locators: Tuple[int, ...]
    multipliers: Tuple[int, ...]
    k_grs: int
    n: int = field(init=False)
    d: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", len(self.locators))
        object.__setattr__(self, "d", len(self.locators) - self.k_grs + 1)

    @property
    def inv_multipliers(self) -> Tuple[int, ...]:
        return tuple(self.ctx.inv(b) for b in self.multipliers)


def make_code(S: Sequence, B: Optional[Sequence], k_grs: int, ctx: FieldContext) -> CodeSpec:
    locs = tuple(int(v.value if isinstance(v, FieldElement) else v) for v in S)
    n = len(locs)
    if B is None:
        mults = (1,) * n
    else:
        mults = tuple(int(v.value if isinstance(v, FieldElement) else v) for v in B)
    if len(set(locs)) != n:
        raise DuplicateLocator("code locators must be distinct")
    if len(mults) != n:
        raise BadDimension("need one multiplier per locator")
    if any(b == 0 for b in mults):
        raise ZeroMultiplier("column multipliers must be nonzero")
    if any(not 0 <= a < ctx.order for a in locs + mults):
        raise BadDimension("locator or multiplier outside the field")
    if not 1 <= k_grs <= n <= ctx.order:
        raise BadDimension(f"need 1 <= k_grs <= n <= 2^m, got k={k_grs}, n={n}")
    return CodeSpec(ctx, locs, mults, k_grs)


def default_locators(ctx: FieldContext, n: int) -> List[int]:
    """0 followed by alpha^0 .. alpha^(n-2); all field elements when n = 2^m."""
    if not 1 <= n <= ctx.order:
        raise BadDimension(f"n={n} does not fit GF(2^{ctx.m})")
    return [0] + [ctx.alpha_pow(i) for i in range(n - 1)]


def default_code(m: int, n: int, k_grs: int, modulus: Optional[int] = None) -> CodeSpec:
    ctx = make_field(m, modulus)
    return make_code(default_locators(ctx, n), None, k_grs, ctx)


def grs_encode(spec: CodeSpec, f: UniPoly) -> List[int]:
    if f.degree() >= spec.k_grs:
        raise DegreeTooHigh(f"deg f = {f.degree()} >= k_grs = {spec.k_grs}")
    mul = spec.ctx.mul
    return [mul(b, f.eval(a)) for a, b in zip(spec.locators, spec.multipliers)]


def interpolate_message(spec: CodeSpec, row: Sequence[int]) -> UniPoly:
    """The unique polynomial of degree < n with b_s * f(a_s) = row_s."""
    ctx = spec.ctx
    ys = [ctx.mul(int(v), bi) for v, bi in zip(row, spec.inv_multipliers)]
    return UniPoly.interpolate(list(spec.locators), ys, ctx)


def in_grs(spec: CodeSpec, row: Sequence[int]) -> bool:
    return interpolate_message(spec, row).degree() < spec.k_grs


def _lagrange_basis(spec: CodeSpec) -> List[UniPoly]:
    ctx = spec.ctx
    w = UniPoly.one(ctx)
    for a in spec.locators:
        w = w * UniPoly((a, 1), ctx)
    out = []
    for a in spec.locators:
        q, r = w.divmod(UniPoly((a, 1), ctx))
        assert r.is_zero()
        out.append(q * ctx.inv(q.eval(a)))
    return out


def gf2_nullspace(rows: Sequence[int], n: int) -> List[int]:
    """Basis of {c in GF(2)^n : <row, c> = 0 for all rows}; vectors as bitmasks (bit s = c_s)."""
    pivots = {}
    for r in rows:
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if r:
            col = (r & -r).bit_length() - 1
            for c2 in list(pivots):
                if (pivots[c2] >> col) & 1:
                    pivots[c2] ^= r
            pivots[col] = r
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = 1 << fcol
        for col, pr in pivots.items():
            if (pr >> fcol) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


@dataclass(frozen=True)
class AlternantBasis:
    spec: CodeSpec
    matrix: np.ndarray  # k_a x n over GF(2)

    @property
    def k_a(self) -> int:
        return self.matrix.shape[0]

    def encode(self, msg: Sequence[int]) -> np.ndarray:
        m = np.asarray(msg, dtype=np.uint8)
        if self.k_a == 0:
            return np.zeros(self.spec.n, dtype=np.uint8)
        return (m @ self.matrix % 2).astype(np.uint8)


def alternant_basis(spec: CodeSpec) -> AlternantBasis:
    ctx, n, k = spec.ctx, spec.n, spec.k_grs
    lag = _lagrange_basis(spec)
    binv = spec.inv_multipliers
    rows = []
    for j in range(k, n):
        vals = [ctx.mul(binv[s], lag[s].coeffs[j] if j < len(lag[s].coeffs) else 0) for s in range(n)]
        for bit in range(ctx.m):
            mask = 0
            for s, v in enumerate(vals):
                if (v >> bit) & 1:
                    mask |= 1 << s
            if mask:
                rows.append(mask)
    vecs = gf2_nullspace(rows, n)
    mat = np.zeros((len(vecs), n), dtype=np.uint8)
    for i, v in enumerate(vecs):
        for s in range(n):
            mat[i, s] = (v >> s) & 1
    return AlternantBasis(spec, mat)


def sample_codeword_pair(basis: AlternantBasis, rng: np.random.Generator):
    """Two independent uniform codewords; returns (C, f, g) with C a 2 x n array."""
    if basis.k_a == 0:
        raise EmptyCode("the alternant code has dimension 0")
    msgs = rng.integers(0, 2, size=(2, basis.k_a), dtype=np.uint8)
    C = np.stack([basis.encode(msgs[0]), basis.encode(msgs[1])])
    f = interpolate_message(basis.spec, C[0].tolist())
    g = interpolate_message(basis.spec, C[1].tolist())
    return C, f, g


def apply_column_errors(C: np.ndarray, t: int, rng: np.random.Generator):
    """Corrupt exactly t uniformly chosen columns with a uniform nonzero 2-bit pattern."""
    n = C.shape[1]
    if not 0 <= t <= n:
        raise TooManyErrors(f"cannot corrupt {t} of {n} columns")
    E = np.zeros_like(C, dtype=np.uint8)
    cols = np.sort(rng.choice(n, size=t, replace=False)) if t else np.zeros(0, dtype=np.int64)
    pats = rng.integers(1, 4, size=t)
    for col, pat in zip(cols.tolist(), pats.tolist()):
        E[0, col] = pat >> 1
        E[1, col] = pat & 1
    return (C ^ E).astype(np.uint8), E


def colsupp(E: np.ndarray) -> List[int]:
    return np.flatnonzero(E.any(axis=0)).tolist()


def column_distance(A: np.ndarray, B: np.ndarray) -> int:
    return int(np.count_nonzero((np.asarray(A) != np.asarray(B)).any(axis=0)))


# JSON config: {m, modulus_hex, n, k_grs, locators?, multipliers?}


def code_from_config(cfg: dict) -> CodeSpec:
    m = int(cfg["m"])
    modulus = int(cfg["modulus_hex"], 16) if "modulus_hex" in cfg else None
    ctx = make_field(m, modulus)
    n = int(cfg["n"])
    locs = [int(v, 16) for v in cfg["locators"]] if cfg.get("locators") else default_locators(ctx, n)
    mults = [int(v, 16) for v in cfg["multipliers"]] if cfg.get("multipliers") else None
    if len(locs) != n:
        raise BadDimension("locator list length differs from n")
    return make_code(locs, mults, int(cfg["k_grs"]), ctx)


def code_to_config(spec: CodeSpec) -> dict:
    return {
        "m": spec.ctx.m,
        "modulus_hex": f"{spec.ctx.modulus:x}",
        "n": spec.n,
        "k_grs": spec.k_grs,
        "locators": [f"{a:x}" for a in spec.locators],
        "multipliers": [f"{b:x}" for b in spec.multipliers],
    }


def load_code(path: str) -> CodeSpec:
    with open(path) as fh:
        return code_from_config(json.load(fh))
