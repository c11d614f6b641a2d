"""Constants and per-mode coercivity audit for the cone extension problem.

After compactification the second variation around the constant profile
diagonalizes over spherical-harmonic degrees ell, with time integrals
against |cos(nu T)|^(p-2) on the circle, nu = (d-1)/2, p = 2(d+1)/(d-1).
Everything here is scalar bookkeeping for that reduction: the cosine-power
Fourier coefficients and their truncated-series residual, the Gamma-ratio
identities that eliminate negative arguments, the sharp-coefficient scan
C(h), per-mode ratio tables with the implied coercivity constant rho, the
half-wave variant, and the closed-form extension constant for odd d.

Two readings of the scan's h = 1 value circulate: the literal maximum
p + p(p-2)/p = 2p - 2, and the closed value p + (p-2)/p that the rest of
the coercivity chain uses. They differ for every p > 2. This module
computes both and reports the discrepancy; it never picks a winner.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import integrate_adaptive
from .reports import CoeffTable
from .specfun import ln_gamma, sph_harm_count


@dataclass(frozen=True)
class WaveParams:
    """Dimension d >= 2 with cone exponent p and half-degree nu."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("require d >= 2")

    @property
    def p(self):
        return 2.0 * (self.d + 1) / (self.d - 1)

    @property
    def nu(self):
        return (self.d - 1) / 2.0

    @property
    def alpha(self):
        return self.p / 2.0


def sphere_area(n):
    """Surface measure of the unit n-sphere, 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    if n < 1:
        raise ValueError("require n >= 1")
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)


def c_star(d):
    """Extension constant sqrt(2/(d-1)) pi^(1/p) |S^d|^(1/p - 1/2), odd d."""
    if d < 3 or d % 2 == 0:
        raise ValueError("require odd d >= 3")
    p = WaveParams(d).p
    return (
        math.sqrt(2.0 / (d - 1))
        * math.pi ** (1.0 / p)
        * sphere_area(d) ** (1.0 / p - 0.5)
    )


def time_normalization(params):
    """Closed form of the full-period integral of |cos(nu T)|^p.

    Equals 2 sqrt(pi) Gamma((p+1)/2) / Gamma((p+2)/2); the quadrature
    cross-check lives in time_normalization_residual.
    """
    p = params.p
    return 2.0 * math.sqrt(math.pi) * math.gamma((p + 1) / 2) / math.gamma((p + 2) / 2)


def time_normalization_residual(params, tol=1e-10):
    """|quadrature - closed form| for the |cos(nu T)|^p period integral."""
    p, nu = params.p, params.nu

    def f(T):
        return np.abs(np.cos(nu * T)) ** p

    q = integrate_adaptive(f, -math.pi, math.pi, tol, panel_cap=math.pi / 8)
    return abs(q.value - time_normalization(params))


def _signed_pochhammer(alpha, h):
    """prod_(i=0)^(h-1) (alpha - i) as (sign, log|  |); sign 0 on exact zero."""
    sign = 1.0
    log_abs = 0.0
    for i in range(h):
        f = alpha - i
        if f == 0.0:
            return 0.0, -math.inf
        sign = -sign if f < 0 else sign
        log_abs += math.log(abs(f))
    return sign, log_abs


def cosine_coeff(alpha, h):
    """Fourier coefficient a_h of |cos(beta T)|^(2 alpha) on cos(2 h beta T).

    a_0 = Gamma(alpha + 1/2) / (sqrt(pi) Gamma(alpha + 1)); for h >= 1 the
    Gamma with argument alpha + 1 - h is eliminated through the signed
    falling product alpha (alpha-1) ... (alpha-h+1), which makes integer
    alpha <= h - 1 an exact zero instead of a pole limit.
    """
    if alpha <= 0.0:
        raise ValueError("require alpha > 0")
    if h < 0:
        raise ValueError("require h >= 0")
    if h == 0:
        return math.exp(ln_gamma(alpha + 0.5) - ln_gamma(alpha + 1.0)) / math.sqrt(
            math.pi
        )
    sign, log_abs = _signed_pochhammer(alpha, h)
    if sign == 0.0:
        return 0.0
    return (
        sign
        * (2.0 / math.sqrt(math.pi))
        * math.exp(log_abs + ln_gamma(alpha + 0.5) - ln_gamma(alpha + 1.0 + h))
    )


def fourier_series_residual(alpha, beta, H, T_grid):
    """Sup over the grid of |truncated cosine series - |cos(beta T)|^(2 alpha)|."""
    if H < 0 or H > 10_000:
        raise ValueError("require 0 <= H <= 10000")
    T = np.asarray(T_grid, dtype=np.float64)
    total = np.full_like(T, cosine_coeff(alpha, 0))
    for h in range(1, H + 1):
        a = cosine_coeff(alpha, h)
        if a != 0.0:
            total += a * np.cos(2.0 * h * beta * T)
    target = np.abs(np.cos(beta * T)) ** (2.0 * alpha)
    return float(np.max(np.abs(total - target)))


def abs_gamma_ratio(alpha, h):
    """|Gamma(alpha)^2 / (Gamma(alpha+h) Gamma(alpha-h))| without pole visits.

    Gamma(alpha-h) is folded into the signed product (alpha-1)...(alpha-h),
    so the value is exact 0 whenever alpha is an integer <= h.
    """
    if not 1.0 < alpha <= 3.0:
        raise ValueError("require alpha in (1, 3]")
    if h < 1:
        raise ValueError("require h >= 1")
    sign, log_abs = _signed_pochhammer(alpha - 1.0, h)
    if sign == 0.0:
        return 0.0
    return math.exp(log_abs + ln_gamma(alpha) - ln_gamma(alpha + h))


def gamma_identity_residual(p):
    """Residual of (p-1) G((p+2)/2) G((p-1)/2) / (G((p+1)/2) G(p/2)) = p."""
    if p <= 1.0:
        raise ValueError("require p > 1")
    lhs = (p - 1.0) * math.exp(
        ln_gamma((p + 2) / 2)
        + ln_gamma((p - 1) / 2)
        - ln_gamma((p + 1) / 2)
        - ln_gamma(p / 2)
    )
    return abs(lhs - p)


@dataclass(frozen=True)
class CSharpScan:
    """Result of maximizing C(h) = p + p |G(a)^2/(G(a+h)G(a-h))| over h >= 1.

    c_one_scanned is the literal C(1) = 2p - 2; c_one_claimed is the
    closed value p + (p-2)/p used downstream by the coercivity chain.
    """

    argmax_h: int
    max_value: float
    c_one_scanned: float
    c_one_claimed: float


def c_sharp_scan(params, h_max):
    if h_max < 2:
        raise ValueError("require h_max >= 2")
    p, alpha = params.p, params.alpha
    best_h, best = 1, -math.inf
    for h in range(1, h_max + 1):
        val = p + p * abs_gamma_ratio(alpha, h)
        if val > best:
            best_h, best = h, val
    c1 = p + p * abs_gamma_ratio(alpha, 1)
    return CSharpScan(
        argmax_h=best_h,
        max_value=best,
        c_one_scanned=c1,
        c_one_claimed=p + (p - 2.0) / p,
    )


def g_monotone_check(alpha, h_max):
    """True iff g(alpha, h) = Gamma(h-alpha+1)/Gamma(alpha+h) strictly
    decreases over 1 <= h <= h_max.

    Uses the exact step ratio g(alpha, h+1)/g(alpha, h) = (h+1-alpha)/(h+alpha),
    which must lie in (0, 1). Restricted to alpha < 2 so that g(alpha, 1)
    itself is finite and positive.
    """
    if not 0.5 < alpha < 2.0:
        raise ValueError("require alpha in (1/2, 2)")
    if h_max < 2:
        raise ValueError("require h_max >= 2")
    for h in range(1, h_max):
        r = (h + 1.0 - alpha) / (h + alpha)
        if not 0.0 < r < 1.0:
            return False
    return True


def mode_ratio(params, ell):
    """Per-mode coercivity ratio r(ell) of the second-variation bound.

    r(ell) = [p + p |G(a)^2/(G(a+h)G(a-h))| if ell = h nu else p] * nu/(ell+nu),
    the literal mode-by-mode constant extracted from the diagonalized
    quadratic form; the Gamma term fires only when ell is a multiple of nu.
    """
    if ell < 2:
        raise ValueError("require ell >= 2")
    p, nu, alpha = params.p, params.nu, params.alpha
    two_ell = 2 * ell
    gain = 0.0
    if two_ell % (params.d - 1) == 0:
        gain = abs_gamma_ratio(alpha, two_ell // (params.d - 1))
    return (p + p * gain) * nu / (ell + nu)


def mode_coercivity_table(params, ell_max):
    """Table of per-mode ratios r(ell) for 2 <= ell <= ell_max.

    Each row carries rho_implied = 2 - r(ell); the binding (smallest)
    entry is the coercivity constant the table certifies.
    """
    if ell_max < 2:
        raise ValueError("require ell_max >= 2")
    rows = []
    for ell in range(2, ell_max + 1):
        r = mode_ratio(params, ell)
        rows.append((params.d, ell, r, 2.0 - r))
    return CoeffTable(
        name="mode_coercivity",
        columns=("d", "ell", "ratio", "rho_implied"),
        rows=tuple(rows),
    )


def half_wave_mode_ratio(params, ell):
    """Per-mode ratio p nu/(ell+nu) of the half-wave deficit, ell >= 2.

    The cross term whose time average survives in the full-wave case
    vanishes here, leaving the plain weight; strictly below 2 since
    p nu = 2 nu + 2 < 2(ell + nu).
    """
    if ell < 2:
        raise ValueError("require ell >= 2")
    return params.p * params.nu / (ell + params.nu)


def orthog_formula_check(z, ell, h, params, tol=1e-10):
    """Quadrature residuals of the two circle-average identities.

    First: the full-period average of Re(z e^(iT ell))^2, under the
    normalized measure, equals sqrt(pi) G((p+2)/2)/(2 G((p+1)/2)) |z|^2.
    Second: the same average weighted by cos(2 h nu T) equals half that
    constant times Re(z^2), and only when ell = h nu.
    """
    if ell < 1 or h < 1:
        raise ValueError("require ell >= 1 and h >= 1")
    p, nu = params.p, params.nu
    z = complex(z)
    norm = math.sqrt(math.pi) * math.exp(
        ln_gamma((p + 2) / 2) - ln_gamma((p + 1) / 2)
    )
    density = math.exp(ln_gamma((p + 2) / 2) - ln_gamma((p + 1) / 2)) / (
        2.0 * math.sqrt(math.pi)
    )

    def sq(T):
        return (z.real * np.cos(ell * T) - z.imag * np.sin(ell * T)) ** 2

    q1 = integrate_adaptive(
        lambda T: density * sq(T), -math.pi, math.pi, tol, panel_cap=math.pi / 8
    )
    first = abs(q1.value - 0.5 * norm * abs(z) ** 2)

    q2 = integrate_adaptive(
        lambda T: density * np.cos(2.0 * h * nu * T) * sq(T),
        -math.pi,
        math.pi,
        tol,
        panel_cap=math.pi / 8,
    )
    delta = 1.0 if ell == h * nu else 0.0
    second = abs(q2.value - 0.25 * norm * (z * z).real * delta)
    return first, second


def tangent_dim(d):
    """Real dimension 2(d+2) of the maximizer manifold's tangent space.

    Cross-checked against the count of degree-0 plus degree-1 harmonics.
    """
    if d < 2:
        raise ValueError("require d >= 2")
    dim = 2 * (d + 2)
    harm = 2 * (sph_harm_count(d, 0) + sph_harm_count(d, 1))
    if dim != harm:
        raise AssertionError("harmonic count mismatch")
    return dim


def audit_report(d, ell_max=60, h_max=1000):
    """Full scalar audit for one dimension, as a JSON-shaped dict.

    Includes the closed constants, the quadrature cross-check of the time
    normalization, the C(h) scan with the two irreconciled readings of
    C(1), and the per-mode table summary with implied and claimed rho.
    """
    params = WaveParams(d)
    p, nu = params.p, params.nu
    scan = c_sharp_scan(params, h_max)
    table = mode_coercivity_table(params, ell_max)
    ratios = [row[2] for row in table.rows]
    sup_ratio = max(ratios)
    sup_ell = table.rows[ratios.index(sup_ratio)][1]
    rho_implied = 2.0 - sup_ratio
    # the full-wave claim exists for odd d only: 2/3 at d = 3, 1/(nu+1) beyond
    if d == 3:
        rho_claimed = 2.0 / 3.0
    elif d % 2 == 1:
        rho_claimed = 1.0 / (nu + 1.0)
    else:
        rho_claimed = None
    out = {
        "schema": 1,
        "d": d,
        "p": p,
        "nu": nu,
        "time_normalization": time_normalization(params),
        "time_normalization_quad_residual": time_normalization_residual(params),
        "gamma_identity_residual": gamma_identity_residual(p),
        "tangent_dim": tangent_dim(d),
        "c_sharp": {
            "argmax_h": scan.argmax_h,
            "max_value": scan.max_value,
            "c_one_discrepancy": {
                "scanned_from_max_formula": scan.c_one_scanned,
                "claimed_closed_form": scan.c_one_claimed,
                "difference": scan.c_one_scanned - scan.c_one_claimed,
                "note": (
                    "the literal h=1 maximum is 2p-2 while the closed form "
                    "reads p+(p-2)/p; both are reported, neither adjudicated"
                ),
            },
        },
        "mode_table": {
            "ell_max": ell_max,
            "sup_ratio": sup_ratio,
            "sup_at_ell": sup_ell,
            "rho_implied": rho_implied,
            "rho_claimed": rho_claimed,
            "claim_matches_table": (
                None
                if rho_claimed is None
                else abs(rho_implied - rho_claimed) <= 1e-12
            ),
        },
        "half_wave_sup_ratio": half_wave_mode_ratio(params, 2),
    }
    if d % 2 == 1:
        out["c_star"] = c_star(d)
    return out
