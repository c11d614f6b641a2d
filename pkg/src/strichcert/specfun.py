"""Special functions and orthogonal polynomials.

Bessel J is restricted to the orders that actually occur downstream
(integers and half-integers up to 64) and to arguments up to 1e4; inside
that envelope the backend guarantees absolute error below 1e-12. The
polynomial families all go through their three-term recurrences, never
through expanded coefficients, so degree ~1e3 stays stable. Every function
here accepts numpy arrays wherever a plain float argument is documented,
broadcasting elementwise.
"""

import math

import numpy as np

from .backend import bessel_a_scalar, bessel_j_scalar

MAX_ORDER = 64.0
MAX_ARG = 1.0e4


def ln_gamma(x):
    """log Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError("ln_gamma requires x > 0")
    return math.lgamma(x)


def _order_to_nu2(order):
    nu2 = int(round(2.0 * order))
    if abs(2.0 * order - nu2) > 1e-12 or nu2 < 0:
        raise ValueError("order must be a nonnegative integer or half-integer")
    if order > MAX_ORDER:
        raise ValueError(f"order {order} outside certified envelope (<= {MAX_ORDER})")
    return nu2


def _check_arg(x):
    if not 0.0 <= x <= MAX_ARG:
        raise ValueError(f"argument {x} outside certified envelope [0, {MAX_ARG}]")


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x).

    order must be a nonnegative integer or half-integer <= 64 and
    0 <= x <= 1e4; these bounds delimit the accuracy-certified envelope.
    """
    nu2 = _order_to_nu2(order)
    _check_arg(x)
    return bessel_j_scalar(nu2, float(x))


def bessel_a(order, x):
    """Normalized Bessel function J_order(x) / x^order.

    The removable singularity at x = 0 is filled with the series limit
    2^(-order) / Gamma(order + 1). Same envelope as bessel_j.
    """
    nu2 = _order_to_nu2(order)
    _check_arg(x)
    return bessel_a_scalar(nu2, float(x))


def laguerre(m, nu, x):
    """Generalized Laguerre polynomial L_m^nu(x), nu > -1."""
    if m < 0 or m > 10_000:
        raise ValueError("degree must lie in [0, 10000]")
    if nu <= -1:
        raise ValueError("Laguerre parameter must satisfy nu > -1")
    if m == 0:
        return x * 0.0 + 1.0
    prev = x * 0.0 + 1.0
    cur = 1.0 + nu - x
    for j in range(1, m):
        prev, cur = cur, ((2 * j + 1 + nu - x) * cur - (j + nu) * prev) / (j + 1)
    return cur


def laguerre_at_zero(m, nu):
    """L_m^nu(0), i.e. the binomial coefficient C(nu + m, m).

    Computed as the product of (nu + i)/i, which is exact at nu = 0 and
    loses only ~m ulps otherwise; this beats a Gamma-ratio in log space.
    """
    if m < 0 or m > 10_000:
        raise ValueError("degree must lie in [0, 10000]")
    if nu <= -1:
        raise ValueError("Laguerre parameter must satisfy nu > -1")
    out = 1.0
    for i in range(1, m + 1):
        out *= (nu + i) / i
    return out


def hermite_monic(n, x):
    """Monic Hermite polynomial, orthogonal for the standard Gaussian weight."""
    if n < 0 or n > 1000:
        raise ValueError("degree must lie in [0, 1000]")
    if n == 0:
        return x * 0.0 + 1.0
    prev = x * 0.0 + 1.0
    cur = x * 1.0
    for j in range(1, n):
        prev, cur = cur, x * cur - j * prev
    return cur


def gegenbauer(k, nu, alpha):
    """Gegenbauer polynomial C_k^nu(alpha), nu > -1/2, by recurrence.

    At nu = 0 the recurrence value is returned literally (identically zero
    for k >= 1); callers needing the Chebyshev limit of the normalized
    ratio should use gegenbauer_ratio.
    """
    if k < 0 or k > 1000:
        raise ValueError("degree must lie in [0, 1000]")
    if nu <= -0.5:
        raise ValueError("Gegenbauer parameter must satisfy nu > -1/2")
    if k == 0:
        return alpha * 0.0 + 1.0
    prev = alpha * 0.0 + 1.0
    cur = 2.0 * nu * alpha
    for j in range(2, k + 1):
        prev, cur = cur, (2.0 * (j + nu - 1) * alpha * cur - (j + 2 * nu - 2) * prev) / j
    return cur


def gegenbauer_ratio(k, nu, alpha):
    """C_k^nu(alpha) / C_k^nu(1), extended through nu = 0 by its limit.

    The endpoint normalization makes the ratio's absolute value <= 1 on
    [-1, 1]. The nu -> 0 limit is the Chebyshev polynomial T_k(alpha),
    evaluated by its own recurrence so endpoint values stay exact.
    """
    if k < 0 or k > 1000:
        raise ValueError("degree must lie in [0, 1000]")
    if nu < 0.0:
        raise ValueError("ratio defined for nu >= 0")
    if k == 0:
        return alpha * 0.0 + 1.0
    if nu == 0.0:
        prev = alpha * 0.0 + 1.0
        cur = alpha * 1.0
        for _ in range(1, k):
            prev, cur = cur, 2.0 * alpha * cur - prev
        return cur
    norm = 1.0
    for i in range(1, k + 1):
        norm *= (2.0 * nu - 1.0 + i) / i
    return gegenbauer(k, nu, alpha) / norm


def jacobi_p(m, a, b, x):
    """Jacobi polynomial P_m^(a,b)(x), a > -1, b > -1, by recurrence."""
    if m < 0 or m > 1000:
        raise ValueError("degree must lie in [0, 1000]")
    if a <= -1 or b <= -1:
        raise ValueError("Jacobi parameters must satisfy a, b > -1")
    if m == 0:
        return x * 0.0 + 1.0
    prev = x * 0.0 + 1.0
    cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for j in range(2, m + 1):
        # the m = 1 step of this recurrence can degenerate (a + b = 0),
        # hence the explicit first-degree seed above
        c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0)
        c2 = (2.0 * j + a + b - 1.0) * (a * a - b * b)
        c3 = (2.0 * j + a + b - 1.0) * (2.0 * j + a + b) * (2.0 * j + a + b - 2.0)
        c4 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b)
        prev, cur = cur, ((c2 + c3 * x) * cur - c4 * prev) / c1
    return cur


def binom_real(alpha, h):
    """Generalized binomial alpha (alpha-1) ... (alpha-h+1) / h!.

    Exactly zero whenever alpha is a nonnegative integer below h, because
    one factor vanishes identically.
    """
    if h < 0:
        raise ValueError("h must be a nonnegative integer")
    out = 1.0
    for i in range(h):
        out *= (alpha - i) / (i + 1)
    return out


def sph_harm_count(d, ell):
    """Number of spherical harmonics of degree ell on the d-sphere."""
    if d < 1 or ell < 0:
        raise ValueError("require d >= 1 and ell >= 0")
    if ell == 0:
        return 1
    return math.comb(ell + d, d) - math.comb(ell - 2 + d, d)


def sigma_hat(d, r):
    """Radial profile of the Fourier extension of the uniform unit density
    on the (d-1)-sphere: (2 pi)^(d/2) * A_(d/2-1)(r)."""
    if d < 2:
        raise ValueError("require d >= 2")
    return (2.0 * math.pi) ** (d / 2.0) * bessel_a((d - 2) / 2.0, r)
