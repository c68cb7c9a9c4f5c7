import pytest
from hypothesis import given, strategies as st

from alternant_listdec.errors import ContextMismatch, DegreeMismatch, ReducibleModulus, ZeroInverse
from alternant_listdec.galois import (DEFAULT_MODULI, FieldContext, FieldElement, extension_for,
                                      fe_add, fe_inv, fe_mul, is_irreducible, make_field)

from oracles import gf_mul_naive, poly_is_irreducible_naive


@pytest.mark.parametrize("m", range(1, 9))
def test_tables_match_shift_and_add(m):
    F = make_field(m)
    for a in range(F.order):
        for b in range(F.order):
            assert F.mul(a, b) == gf_mul_naive(a, b, m, F.modulus)


@pytest.mark.parametrize("m", range(1, 17))
def test_default_moduli_irreducible_and_primitive(m):
    mod = DEFAULT_MODULI[m]
    assert mod.bit_length() - 1 == m
    assert poly_is_irreducible_naive(mod)
    F = make_field(m)
    # the root x (value 2) generates the whole multiplicative group
    g = 2 if m > 1 else 1
    seen, v = set(), 1
    for _ in range(F.order - 1):
        seen.add(v)
        v = F.mul(v, g)
    assert len(seen) == F.order - 1 and v == 1


def test_gf2():
    F = make_field(1, 0b11)
    assert F.order == 2
    assert F.inv(1) == 1
    with pytest.raises(ZeroInverse):
        F.inv(0)


def test_gf16_alpha_order_and_products():
    F = make_field(4, 0b10011)
    a = F.generator
    assert F.pow(a, 15) == 1
    assert all(F.pow(a, e) != 1 for e in range(1, 15))
    assert F.mul(F.alpha_pow(7), F.alpha_pow(9)) == F.alpha_pow(1)
    assert F.inv(F.alpha_pow(3)) == F.alpha_pow(12)


def test_gf32_constructs():
    F = make_field(5, 0x25)
    assert F.order == 32
    assert is_irreducible(0x25)


def test_rejects_bad_moduli():
    with pytest.raises(ReducibleModulus):
        FieldContext(4, 0b10101)  # (X^2+X+1)^2
    with pytest.raises(DegreeMismatch):
        FieldContext(4, 0b1011)
    with pytest.raises(DegreeMismatch):
        make_field(17)


def test_irreducibility_agrees_with_trial_division():
    for mod in range(1 << 3, 1 << 9):
        assert is_irreducible(mod) == poly_is_irreducible_naive(mod), hex(mod)


def test_field_element_wrappers():
    F = make_field(4)
    G = make_field(5)
    a, b = FieldElement(7, F), FieldElement(9, F)
    assert fe_mul(a, FieldElement(1, F)) == a
    assert fe_mul(a, FieldElement(0, F)).value == 0
    assert fe_add(a, a).value == 0
    assert (fe_inv(a) * a).value == 1
    assert (a * b).value == F.mul(7, 9)
    assert (a / b).value == F.div(7, 9)
    with pytest.raises(ContextMismatch):
        a * FieldElement(3, G)
    with pytest.raises(ZeroInverse):
        fe_inv(FieldElement(0, F))


def test_context_is_immutable():
    F = make_field(4)
    with pytest.raises(AttributeError):
        F.m = 5


@pytest.mark.parametrize("m", [8])
def test_axioms_exhaustive_gf256(m):
    import numpy as np

    F = make_field(m)
    q = F.order
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)])
    assert (mul == mul.T).all()
    # distributivity over a random slice of c, every a, b
    for c in (1, 2, 87, 200, 255):
        for a in range(q):
            row = mul[a]
            assert all(row[b ^ c] == row[b] ^ row[c] for b in range(q))


elems16 = st.integers(0, 15)


@given(elems16, elems16, elems16)
def test_field_properties_gf16(a, b, c):
    F = make_field(4)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    assert a ^ a == 0
    s = a ^ b
    assert F.mul(s, s) == F.mul(a, a) ^ F.mul(b, b)  # Frobenius
    if a:
        assert F.inv(F.inv(a)) == a


@given(st.integers(1, 16), st.data())
def test_inverse_property(m, data):
    F = make_field(m)
    a = data.draw(st.integers(1, F.order - 1))
    assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("m,points", [(3, 300), (4, 1024), (5, 2000)])
def test_extension_embedding_is_a_ring_map(m, points):
    F = make_field(m)
    E = extension_for(F, points)
    assert E.e % m == 0 and E.order >= points
    emb = [int(v) for v in E.embed]

    def emul(a, b):
        return 0 if a == 0 or b == 0 else int(E.exp[int(E.log[a]) + int(E.log[b])])

    for a in range(F.order):
        assert E.unembed[emb[a]] == a
        for b in range(F.order):
            assert emb[a ^ b] == emb[a] ^ emb[b]
            assert emb[F.mul(a, b)] == emul(emb[a], emb[b])
    assert (E.unembed >= 0).sum() == F.order
