"""Arithmetic in GF(2^m) with log/antilog tables.

Elements are plain ints in [0, 2^m) read as GF(2) polynomials in the
root x of the modulus. FieldContext exposes int-level helpers used by the
hot paths; FieldElement is a thin checked wrapper for callers who want
operator syntax.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ContextMismatch, DegreeMismatch, ReducibleModulus, ZeroInverse

# One irreducible (in fact primitive) polynomial per degree.
DEFAULT_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

# Larger degrees, only used internally as evaluation fields.
_EXTENSION_MODULI = {
    17: 0x20009,
    18: 0x40081,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
}

MAX_M = 16


def _deg(p: int) -> int:
    return p.bit_length() - 1


def _gf2_mod(a: int, b: int) -> int:
    db = _deg(b)
    while a and _deg(a) >= db:
        a ^= b << (_deg(a) - db)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every GF(2) polynomial of degree 1..deg/2."""
    m = _deg(modulus)
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _gf2_mod(modulus, f) == 0:
                return False
    return True


def _mulmod(a: int, b: int, modulus: int, m: int) -> int:
    r = 0
    top = 1 << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


class FieldContext:
    """GF(2^m) defined by an irreducible modulus over GF(2)."""

    __slots__ = ("m", "modulus", "order", "generator", "exp", "log", "exp_np", "log_np", "_frozen")

    def __init__(self, m: int, modulus: int, *, _skip_check: bool = False):
        if _deg(modulus) != m:
            raise DegreeMismatch(f"modulus 0x{modulus:x} has degree {_deg(modulus)}, expected {m}")
        if not _skip_check and not is_irreducible(modulus):
            raise ReducibleModulus(f"0x{modulus:x} is reducible over GF(2)")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        q1 = self.order - 1
        gen, exp = self._find_generator()
        self.generator = gen
        # doubled antilog table so exp[log a + log b] never needs a reduction
        exp_full = exp + exp
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        log[0] = -1
        self.exp = exp_full
        self.log = log
        self.exp_np = np.array(exp_full, dtype=np.int32)
        self.log_np = np.array(log, dtype=np.int32)
        self.exp_np.setflags(write=False)
        self.log_np.setflags(write=False)
        assert len(set(exp)) == q1
        self._frozen = True

    def _find_generator(self):
        q1 = self.order - 1
        if q1 == 1:
            return 1, [1]
        for g in range(2, self.order):
            seq = [1]
            v = 1
            for _ in range(q1 - 1):
                v = _mulmod(v, g, self.modulus, self.m)
                if v == 1:
                    break
                seq.append(v)
            if len(seq) == q1:
                return g, seq
        raise ReducibleModulus("no primitive element found")  # unreachable for a field

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("FieldContext is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __repr__(self):
        return f"FieldContext(m={self.m}, modulus=0x{self.modulus:x})"

    # int-level arithmetic
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        q1 = self.order - 1
        return self.exp[(q1 - self.log[a]) % q1]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroInverse("division by 0")
        if a == 0:
            return 0
        q1 = self.order - 1
        return self.exp[(self.log[a] - self.log[b]) % q1]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroInverse("0 has no inverse")
            return 0
        q1 = self.order - 1
        return self.exp[(self.log[a] * e) % q1]

    def alpha_pow(self, e: int) -> int:
        return self.exp[e % (self.order - 1)]

    def elements(self):
        return range(self.order)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def is_binary(self, a: int) -> bool:
        return a in (0, 1)


@lru_cache(maxsize=None)
def make_field(m: int, modulus: int | None = None) -> FieldContext:
    """Build (and cache) GF(2^m). Default moduli are primitive."""
    if not 1 <= m <= MAX_M:
        raise DegreeMismatch(f"m must be in [1, {MAX_M}], got {m}")
    if modulus is None:
        modulus = DEFAULT_MODULI[m]
    return FieldContext(m, modulus)


class FieldElement:
    """A value of GF(2^m) bound to its context."""

    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: FieldContext):
        if not 0 <= value < ctx.order:
            raise ValueError(f"{value} is not an element of GF(2^{ctx.m})")
        self.value = value
        self.ctx = ctx

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            if not 0 <= other < self.ctx.order:
                raise ValueError(f"{other} is not an element of GF(2^{self.ctx.m})")
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value ^ v, self.ctx)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.ctx.mul(self.value, v), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.ctx.div(self.value, v), self.ctx)

    def __pow__(self, e: int):
        return FieldElement(self.ctx.pow(self.value, e), self.ctx)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.value), self.ctx)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_binary(self) -> bool:
        return self.value in (0, 1)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.ctx == other.ctx
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.m, self.ctx.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement(0x{self.value:x}, GF(2^{self.ctx.m}))"


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


class Extension:
    """GF(2^E) containing a given GF(2^m), with the embedding maps.

    Only used as an evaluation field for interpolation-based resultants.
    """

    def __init__(self, base: FieldContext, big_e: int):
        from ._kernels import build_tables

        if big_e % base.m:
            raise DegreeMismatch(f"{base.m} does not divide {big_e}")
        modulus = DEFAULT_MODULI.get(big_e) or _EXTENSION_MODULI[big_e]
        self.base = base
        self.e = big_e
        self.order = 1 << big_e
        self.modulus = modulus
        exp, log = build_tables(big_e, modulus)
        if exp is None:
            raise ReducibleModulus(f"0x{modulus:x} is not primitive")
        self.exp = exp
        self.log = log
        q1 = self.order - 1

        def emul(a, b):
            if a == 0 or b == 0:
                return 0
            return int(exp[int(log[a]) + int(log[b])])

        # a root of the base modulus lives in the subgroup of order 2^m - 1
        step = q1 // (base.order - 1)
        root = None
        coeffs = [(base.modulus >> i) & 1 for i in range(base.m + 1)]
        for j in range(base.order - 1):
            cand = int(exp[(step * j) % q1]) if base.m > 1 else 1
            acc = 0
            pw = 1
            for c in coeffs:
                if c:
                    acc ^= pw
                pw = emul(pw, cand)
            if acc == 0:
                root = cand
                break
        if root is None:
            raise ReducibleModulus("base modulus has no root in the extension")
        basis = []
        pw = 1
        for _ in range(base.m):
            basis.append(pw)
            pw = emul(pw, root)
        embed = np.zeros(base.order, dtype=np.int32)
        for v in range(1, base.order):
            low = v & -v
            embed[v] = embed[v ^ low] ^ basis[low.bit_length() - 1]
        unembed = np.full(self.order, -1, dtype=np.int32)
        unembed[embed] = np.arange(base.order, dtype=np.int32)
        self.embed = embed
        self.unembed = unembed


@lru_cache(maxsize=None)
def extension_for(base: FieldContext, min_points: int) -> Extension:
    """Smallest supported GF(2^E) ⊇ base with at least `min_points` elements."""
    e = base.m
    while (1 << e) < min_points or e < 8:
        e += base.m
    if e > 22:
        raise DegreeMismatch(f"no evaluation field with {min_points} points")
    return Extension(base, e)
