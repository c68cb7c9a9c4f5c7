import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alternant_listdec.bounds import sigma_nu
from alternant_listdec.errors import DomainError
from alternant_listdec.multiplicity import (_step_cost, assign_multiplicities, build_reliability, candidate1_pair,
                                            candidate1_ratio, candidate2_pair, closed_form_ratio, dominant_levels,
                                            ratio_to_integers)


def received(n, seed=0):
    return np.random.default_rng(seed).integers(0, 2, size=(2, n))


def test_reliability_examples():
    R = received(32)
    Pi = build_reliability(0, 32, R)
    sym = R[0] * 2 + R[1]
    assert (Pi == np.eye(4)[sym]).all()
    Pi = build_reliability(32, 32, R)
    assert (Pi[np.arange(32), sym] == 0).all()
    assert np.allclose(Pi.sum(axis=1), 1)
    Pi = build_reliability(10, 32, R)
    assert np.allclose(Pi[np.arange(32), sym], 0.6875)
    off = Pi.copy()
    off[np.arange(32), sym] = np.nan
    assert np.allclose(off[~np.isnan(off)], 10 / 96)
    with pytest.raises(DomainError):
        build_reliability(33, 32, R)


def test_step_cost_identity():
    # (m^2 + 5m + 6)/2 is the number of new constraints when m+1 grows to m+2
    for m in range(50):
        assert 2 * _step_cost(m) == m * m + 5 * m + 6
        assert _step_cost(m) == ((m + 1) ** 2 + 3 * (m + 1) + 2) // 2


def test_assign_m_total_one_is_indicator():
    R = received(16, 3)
    M = assign_multiplicities(build_reliability(0, 16, R), 1).M
    assert (M == np.eye(4, dtype=int)[R[0] * 2 + R[1]]).all()


def test_assign_reference_trace():
    # two rows, hand-traced: scores 0.7/0.1/0.1/0.1, updates divide by 3, 6, 10
    Pi = np.array([[0.7, 0.1, 0.1, 0.1], [0.1, 0.7, 0.1, 0.1]])
    M = assign_multiplicities(Pi, 2).M
    # picks: (0,0) .7 -> .2333, (1,1) .7, then (0,0) .2333 vs (1,1) .2333: row 0 first, then row 1
    assert M.tolist() == [[2, 0, 0, 0], [0, 2, 0, 0]]
    M = assign_multiplicities(Pi, 3).M
    # next scores: (0,0) .7/6=.1167, (1,1) .1167, every 0.1 below: (0,0), (1,1)
    assert M.tolist() == [[3, 0, 0, 0], [0, 3, 0, 0]]
    M = assign_multiplicities(Pi, 4).M
    # .7/10 = .07 < .1, so the off entries are picked, fewest-row-picks first
    assert M.sum() == 8 and M[0, 0] == 3 and M[1, 1] == 3


@settings(max_examples=20)
@given(st.integers(1, 40), st.integers(0, 32), st.integers(0, 2 ** 31))
def test_assign_conserves_and_rows_are_permutations(m_total, t, seed):
    R = received(32, seed)
    M = assign_multiplicities(build_reliability(t, 32, R), m_total).M
    assert M.sum() == m_total * 32
    rows = {tuple(sorted(r)) for r in M.tolist()}
    assert len(rows) == 1


def test_dominant_levels_converge_to_closed_form():
    R = received(32)
    M = assign_multiplicities(build_reliability(10, 32, R), 1000)
    assert len({tuple(sorted(r)) for r in M.M.tolist()}) == 1
    m1, m2 = dominant_levels(M)
    assert abs(m2 / m1 - closed_form_ratio(10, 32)) <= 0.02
    assert abs(closed_form_ratio(10, 32) - 0.3893) < 1e-4


def test_candidate1_examples():
    rho, sigma = candidate1_ratio(32, 13)
    assert abs(sigma_nu(0, 13 / 32)[0] - 0.2926) < 1e-4
    assert abs(sigma - 0.42) < 0.005 and abs(rho - 0.5) < 0.05
    # brute force over the same grid
    grid = [i / 1000 for i in range(1000)]
    ref = max(grid, key=lambda r: (sigma_nu(r, 13 / 32)[0], -r))
    assert rho == pytest.approx(ref)
    rho_small, sigma_small = candidate1_ratio(100, 1)
    assert sigma_small >= sigma_nu(0, 0.01)[0]
    with pytest.raises(DomainError):
        candidate1_ratio(32, 0)
    with pytest.raises(DomainError):
        candidate1_ratio(32, 13, grid_step=0.5)


@given(st.integers(2, 60), st.data())
def test_candidate1_dominates_rho_zero(n, data):
    d = data.draw(st.integers(1, n - 1))
    rho, sigma = candidate1_ratio(n, d, 0.01)
    assert sigma >= sigma_nu(0, d / n)[0]


def test_ratio_to_integers_examples():
    assert ratio_to_integers(0.389, 8) == (8, 3)
    assert ratio_to_integers(0.0, 7) == (1, 0)
    assert ratio_to_integers(0.5, 2) == (2, 1)
    assert ratio_to_integers(0.5, 9) == (2, 1)


@given(st.floats(0, 0.999), st.integers(1, 30))
def test_ratio_to_integers_matches_exhaustive(rho, m1_max):
    m1, m2 = ratio_to_integers(rho, m1_max)
    feasible = [(a, b) for a in range(1, m1_max + 1) for b in range(a) if b / a <= rho + 1e-12]
    best = min(feasible, key=lambda p: (round(rho - p[1] / p[0], 12), p[0]))
    assert (m1, m2) == best


def test_candidate_pairs():
    assert candidate2_pair(32, 10, 17) == dominant_levels(assign_multiplicities(build_reliability(10, 32, np.zeros((2, 32))), 17))
    m1, m2 = candidate1_pair(32, 13, 40)
    assert m1 + 3 * m2 <= 40 * 1.5 and m2 < m1
