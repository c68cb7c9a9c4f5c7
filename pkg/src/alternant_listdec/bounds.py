"""Closed-form quantities: degree budget, interpolation cost, radii and list-size bound."""
from __future__ import annotations

import math
from math import comb

from .errors import BadMultiplicities, DomainError


def delta_radicand(n: int, k_grs: int, m1: int, m2: int) -> int:
    K = k_grs - 1
    return n * K * K * m1 * (m1 + 1) * (m1 + 2) + 3 * n * K * K * m2 * (m2 + 1) * (m2 + 2)


def _check_mults(m1: int, m2: int):
    if not (m1 >= 1 and 0 <= m2 < m1):
        raise BadMultiplicities(f"need 0 <= m2 < m1 and m1 >= 1, got ({m1}, {m2})")


def compute_delta(n: int, k_grs: int, m1: int, m2: int) -> float:
    """Real cube root of the weighted-degree budget radicand."""
    _check_mults(m1, m2)
    if n < 1 or k_grs < 2:
        raise BadMultiplicities(f"need n >= 1 and k_grs >= 2, got n={n}, k={k_grs}")
    return delta_radicand(n, k_grs, m1, m2) ** (1.0 / 3.0)


def mu_from_delta(n: int, k_grs: int, m1: int, m2: int) -> int:
    """ceil(delta / (k-1)) computed exactly: least mu with (mu (k-1))^3 >= radicand."""
    rad = delta_radicand(n, k_grs, m1, m2)
    K = k_grs - 1
    mu = max(1, int(compute_delta(n, k_grs, m1, m2) / K))
    while (mu * K) ** 3 < rad:
        mu += 1
    while mu > 1 and ((mu - 1) * K) ** 3 >= rad:
        mu -= 1
    return mu


def interpolation_cost(m1: int, m2: int, n: int) -> int:
    return n * comb(m1 + 2, 3) + 3 * n * comb(m2 + 2, 3)


def radius_theorem1(n: float, delta: float, m1: int, m2: int) -> float:
    _check_mults(m1, m2)
    return (n - delta / m1) / (1 - m2 / m1)


def sigma_nu(rho: float, d_over_n: float):
    """(sigma, nu) of the ratio-dependent radius bound; sigma is normalized by n."""
    if not 0 <= rho < 1:
        raise DomainError(f"ratio must lie in [0, 1), got {rho}")
    if not 0 < d_over_n < 1:
        raise DomainError(f"d/n must lie in (0, 1), got {d_over_n}")
    r = 1 - d_over_n
    rad = 4 / (3 * r) - 1 / 3 + 4 * rho ** 3 / r
    if rad < 0:
        raise DomainError("negative radicand")
    nu = math.sqrt(rad)
    sigma = (1 - r * (1 + nu) / 2) / (1 - rho)
    return sigma, nu


def chi_list_bound(n: int, t: int, k_grs: int, m1: int, m2: int) -> float:
    if t > n:
        raise DomainError("t exceeds n")
    B = (m1 * (n - t) + m2 * t) / (k_grs - 1)
    return B ** 3 + 2 * B


def gs_radius(n: float, d: float) -> float:
    if not 0 <= d <= n:
        raise DomainError("need 0 <= d <= n")
    return n * (1 - math.sqrt(1 - d / n))


def kv_binary_radius(n: float, d: float) -> float:
    if d < 0 or 2 * d > n:
        raise DomainError("binary Johnson radius needs 0 <= 2d <= n")
    return 0.5 * (n - n * math.sqrt(1 - 2 * d / n))


def johnson_q(n: float, d: float, q: int = 2) -> float:
    """q-ary Johnson radius with theta_q = (q - 1)/q."""
    theta = (q - 1) / q
    if d < 0 or d > theta * n:
        raise DomainError("need 0 <= d <= theta_q n")
    return n * theta * (1 - math.sqrt(1 - d / (theta * n)))


def classical_radii(n: float, d: float) -> dict:
    return {"gs": gs_radius(n, d), "kv_binary": kv_binary_radius(n, d), "johnson_q2": johnson_q(n, d, 2)}
