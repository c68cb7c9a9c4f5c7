import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from alternant_listdec.errors import BothConstantInZ, NotDivisible, ZeroPolynomial
from alternant_listdec.galois import make_field
from alternant_listdec.poly import (TriPoly, UniPoly, format_poly, hasse_at, hasse_derivative, leading_monomial,
                                    monomial_cmp, multiplicity_at, passes_with_multiplicity, resultant,
                                    resultant_y, resultant_z, substitute, trivariate_gcd, weighted_degree, y_roots)

from oracles import HasseChecker, tri_eval

F8 = make_field(3)
F16 = make_field(4)
X = TriPoly.var("X", F8)
Y = TriPoly.var("Y", F8)
Z = TriPoly.var("Z", F8)


def tri(terms, F=F8):
    return TriPoly(terms, F)


def tri_strategy(F=F8, max_exp=(3, 2, 2), max_terms=6):
    mon = st.tuples(st.integers(0, max_exp[0]), st.integers(0, max_exp[1]), st.integers(0, max_exp[2]))
    return st.dictionaries(mon, st.integers(1, F.order - 1), min_size=1, max_size=max_terms).map(lambda d: TriPoly(d, F))


def rand_tri(rng, F, max_exp, n_terms):
    d = {}
    for _ in range(n_terms):
        d[(rng.randrange(max_exp[0] + 1), rng.randrange(max_exp[1] + 1), rng.randrange(max_exp[2] + 1))] = rng.randrange(1, F.order)
    return TriPoly(d, F)


def rand_xy(rng, F, deg):
    """Random polynomial in X, Y of total degree <= deg."""
    d = {}
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            if rng.random() < 0.6:
                d[(a, b, 0)] = rng.randrange(1, F.order)
    return TriPoly(d, F)


# -- ordering and degrees


def test_weighted_degree_examples():
    w = (1, 19, 19)
    assert weighted_degree(tri({(3, 2, 1): 1}), w) == 60
    assert weighted_degree(tri({(0, 0, 0): 1}), w) == 0
    p = tri({(2, 0, 0): 1, (0, 1, 0): 1})
    assert weighted_degree(p, (1, 2, 2)) == 2
    assert leading_monomial(p, (1, 2, 2)) == (2, 0, 0)
    with pytest.raises(ZeroPolynomial):
        weighted_degree(TriPoly.zero(F8), w)


def test_monomial_cmp_examples():
    assert monomial_cmp((0, 1, 0), (2, 0, 0), (1, 2, 2)) == -1
    assert monomial_cmp((0, 0, 1), (0, 1, 0), (1, 2, 2)) == -1
    assert monomial_cmp((1, 0, 0), (0, 1, 0), (1, 19, 19)) == -1
    assert monomial_cmp((1, 2, 3), (1, 2, 3), (1, 5, 5)) == 0


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3, unique=True))
def test_monomial_order_total_and_transitive(ms):
    w = (1, 3, 3)
    u, v, x = ms
    assert monomial_cmp(u, v, w) == -monomial_cmp(v, u, w) != 0
    if monomial_cmp(u, v, w) < 0 and monomial_cmp(v, x, w) < 0:
        assert monomial_cmp(u, x, w) < 0


@given(tri_strategy(), tri_strategy())
def test_weighted_degree_additive(p, q):
    w = (1, 4, 4)
    assert weighted_degree(p * q, w) == weighted_degree(p, w) + weighted_degree(q, w)


def test_format_poly_descending_order():
    p = tri({(2, 0, 0): 3, (0, 1, 0): 1, (0, 0, 1): 5})
    assert format_poly(p, (1, 2, 2)) == "3·X^2·Y^0·Z^0 + 1·X^0·Y^1·Z^0 + 5·X^0·Y^0·Z^1"


# -- Hasse derivatives and multiplicities


def test_hasse_examples():
    p = tri({(2, 1, 0): 3, (0, 0, 1): 1})
    assert hasse_derivative(p, (0, 0, 0)) == p
    assert hasse_derivative(tri({(2, 0, 0): 1}), (1, 0, 0)).is_zero()
    assert hasse_derivative(tri({(3, 0, 0): 1}), (1, 0, 0)) == tri({(2, 0, 0): 1})


@given(tri_strategy(max_exp=(7, 2, 2)), st.integers(0, 4), st.integers(0, 4))
def test_hasse_composition_law(p, a, a2):
    lhs = hasse_derivative(hasse_derivative(p, (a, 0, 0)), (a2, 0, 0))
    rhs = hasse_derivative(p, (a + a2, 0, 0)) if comb(a + a2, a) % 2 else TriPoly.zero(F8)
    assert lhs == rhs


@given(tri_strategy(max_exp=(5, 3, 3)), st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7)))
def test_hasse_at_matches_definition(p, point):
    chk = HasseChecker(3, F8.modulus)
    ref = chk.derivative_values(p.terms, point, 4)
    for order, v in ref.items():
        assert hasse_at(p, order, point) == v


def test_multiplicity_examples():
    assert multiplicity_at(tri({(1, 1, 0): 1}), (0, 0, 0)) == 2
    F2 = make_field(1)
    assert multiplicity_at(TriPoly({(1, 0, 0): 1, (0, 0, 0): 1}, F2), (1, 0, 1)) >= 1
    assert multiplicity_at(tri({(0, 0, 0): 1}), (0, 0, 0)) == 0
    with pytest.raises(ZeroPolynomial):
        multiplicity_at(TriPoly.zero(F8), (0, 0, 0))


@settings(max_examples=40)
@given(tri_strategy(max_exp=(2, 2, 2), max_terms=4), tri_strategy(max_exp=(2, 2, 2), max_terms=4),
       st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7)))
def test_multiplicity_additive(p, q, pt):
    assert multiplicity_at(p * q, pt) == multiplicity_at(p, pt) + multiplicity_at(q, pt)


def test_passes_with_multiplicity_shifted_power():
    # (X + 3)^2 (Y + 5) vanishes to order 3 at (3, 5, anything)
    p = (X + tri({(0, 0, 0): 3})) ** 2 * (Y + tri({(0, 0, 0): 5}))
    assert passes_with_multiplicity(p, (3, 5, 6), 3)
    assert not passes_with_multiplicity(p, (3, 5, 6), 4)
    assert multiplicity_at(p, (3, 5, 6)) == 3


# -- substitution


def test_substitute_examples():
    f = UniPoly([1, 2, 3], F8)
    assert substitute(Y + Z, f, f).is_zero()
    assert substitute(tri({(0, 0, 0): 1}), f, f) == UniPoly.one(F8)
    assert substitute(Y * Z, UniPoly([0, 1], F8), UniPoly([1, 1], F8)) == UniPoly([0, 1, 1], F8)


@given(tri_strategy(), st.lists(st.integers(0, 7), max_size=3), st.lists(st.integers(0, 7), max_size=3),
       st.integers(0, 7))
def test_substitute_commutes_with_evaluation(p, fc, gc, x):
    f, g = UniPoly(fc, F8), UniPoly(gc, F8)
    assert substitute(p, f, g).eval(x) == tri_eval(p.terms, x, f.eval(x), g.eval(x), 3, F8.modulus)


# -- univariate helpers


@given(st.lists(st.integers(0, 15), min_size=1, max_size=16, unique=True), st.data())
def test_uni_interpolate_roundtrip(xs, data):
    ys = data.draw(st.lists(st.integers(0, 15), min_size=len(xs), max_size=len(xs)))
    f = UniPoly.interpolate(xs, ys, F16)
    assert f.degree() < len(xs)
    assert [f.eval(x) for x in xs] == ys


@given(st.lists(st.integers(0, 7), max_size=6), st.lists(st.integers(0, 7), min_size=1, max_size=4))
def test_uni_divmod(a, b):
    A, B = UniPoly(a, F8), UniPoly(b, F8)
    if B.is_zero():
        return
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.degree() < B.degree() or r.is_zero()


# -- exact division


@given(tri_strategy(), tri_strategy())
def test_divexact_roundtrip(p, q):
    assert (p * q).divexact(q) == p


def test_divexact_rejects():
    with pytest.raises(NotDivisible):
        (X * Y + tri({(0, 0, 0): 1})).divexact(X)


# -- resultants


def test_resultant_examples():
    q = Z + Y
    p = Z + X
    assert resultant_z(q, p) == X + Y
    assert resultant_z(q, q).is_zero()
    with pytest.raises(BothConstantInZ):
        resultant_z(X, Y)
    assert resultant_y(Y + Z, Y + X) == X + Z


def product_formula(us, vs):
    """Res_Z(prod (Z - u_i), prod (Z - v_j)) for monic Z-factored inputs."""
    out = TriPoly.constant(1, us[0].ctx)
    for u in us:
        for v in vs:
            out = out * (u + v)
    return out


def z_factored(us):
    out = TriPoly.constant(1, us[0].ctx)
    for u in us:
        out = out * (Z + u)
    return out


def test_resultant_routes_agree_with_product_formula():
    rng = random.Random(7)
    for _ in range(60):
        us = [rand_xy(rng, F8, 2) for _ in range(rng.randint(1, 2))]
        vs = [rand_xy(rng, F8, 2) for _ in range(rng.randint(1, 2))]
        q, p = z_factored(us), z_factored(vs)
        ref = product_formula(us, vs)
        assert resultant(q, p, "Z", method="bareiss") == ref
        assert resultant(q, p, "Z", method="eval") == ref


def test_resultant_routes_agree_on_random_trivariates():
    rng = random.Random(11)
    for _ in range(40):
        q = rand_tri(rng, F8, (4, 2, 3), 8)
        p = rand_tri(rng, F8, (4, 3, 2), 8)
        for var in ("Y", "Z"):
            if q.degree(var) <= 0 and p.degree(var) <= 0:
                continue
            assert resultant(q, p, var, method="bareiss") == resultant(q, p, var, method="eval")


def test_resultant_zero_iff_gcd_has_positive_z_degree():
    rng = random.Random(3)
    for trial in range(40):
        a = rand_tri(rng, F8, (2, 1, 2), 4)
        b = rand_tri(rng, F8, (2, 1, 2), 4)
        shared = rand_tri(rng, F8, (1, 1, 1), 3) if trial % 2 else TriPoly.constant(1, F8)
        q, p = a * shared, b * shared
        if q.degree("Z") <= 0 and p.degree("Z") <= 0:
            continue
        g = trivariate_gcd(q, p)
        assert resultant_z(q, p).is_zero() == (g.degree("Z") > 0)


# -- gcd


def test_gcd_examples():
    w = (1, 2, 2)
    p = X * X + Y + Z + tri({(0, 0, 0): 1})
    assert trivariate_gcd(p, p, w) == p.monic(w)
    assert trivariate_gcd(Y * p, Z * p, w) == p.monic(w)
    assert trivariate_gcd(Z + Y, Z + X, w) == TriPoly.constant(1, F8)


def test_gcd_of_constructed_common_factor_both_routes():
    rng = random.Random(5)
    w = (1, 3, 3)
    for _ in range(25):
        common = rand_tri(rng, F8, (3, 1, 1), 4)
        a = rand_tri(rng, F8, (3, 2, 1), 5)
        b = rand_tri(rng, F8, (3, 1, 2), 5)
        q, p = a * common, b * common
        g_prs = trivariate_gcd(q, p, w, method="prs")
        g_eval = trivariate_gcd(q, p, w, method="eval")
        assert g_prs == g_eval
        q.divexact(g_prs)
        p.divexact(g_prs)
        g_prs.divexact(common)  # the planted factor divides the gcd


# -- root finding


def test_y_roots_examples():
    F = make_field(4)
    Xf, Yf = TriPoly.var("X", F), TriPoly.var("Y", F)
    one = TriPoly.constant(1, F)
    h = (Yf + Xf) * (Yf + Xf + one)
    roots = {r.coeffs for r in y_roots(h, 2)}
    assert roots == {(0, 1), (1, 1)}
    F4 = make_field(2)
    h2 = TriPoly({(0, 2, 0): 1, (0, 0, 0): 1}, F4)
    assert [r.coeffs for r in y_roots(h2, 1)] == [(1,)]


def test_y_roots_match_exhaustive_search():
    from itertools import product

    rng = random.Random(2)
    for _ in range(20):
        fs = [UniPoly([rng.randrange(8) for _ in range(3)], F8) for _ in range(rng.randint(1, 3))]
        h = TriPoly.from_uni(UniPoly([rng.randrange(1, 8), rng.randrange(8)], F8))
        for f in fs:
            h = h * (Y + TriPoly.from_uni(f))
        got = {r.coeffs for r in y_roots(h, 3)}
        ref = set()
        for c in product(range(8), repeat=3):
            f = UniPoly(c, F8)
            if substitute(h, f, UniPoly.zero(F8)).is_zero():
                ref.add(f.coeffs)
        assert got == ref
