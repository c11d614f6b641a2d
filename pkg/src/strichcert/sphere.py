"""Coefficient certification for the sphere extension problem.

The central objects are the coefficients

    c_k = integral over (0, inf) of |A_nu(r)|^(p-2) A_(nu+k)(r)^2 r^(2nu+1+2k) dr

with nu = d/2 - 1 and p = 2(d+1)/(d-1). The module certifies the coercivity
gap (p-1)(c_k + err) < c_0 - err for the finitely many k where c_k is
computed numerically, covers the remaining k by a closed-form decreasing
upper bound b_k, reproduces the published threshold tables byte for byte,
and checks positive semidefiniteness of the Gegenbauer-deficit kernel on
sampled point sets.

A Bessel-amplitude bound |J_mu(r)| <= r^(-1/2), valid for r >= (3/2) mu,
makes the truncated tail of every c_k integrand at most r^(-2); truncating
at R = 2000 therefore costs at most 5e-4, which is the tail term carried in
every err_bound here.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .backend import ck_integrand_many
from .quadrature import (
    CertifiedValue,
    QuadratureNonConvergence,
    integrate_adaptive,
    tail_power_bound,
)
from .reports import CertReport, CoeffTable
from .specfun import MAX_ORDER, gegenbauer_ratio

# best possible uniform bound sup_x |J_nu(x)| x^(1/3) over nu, due to Landau
LANDAU_BOUND = 0.7857468705

CERTIFIED_DMAX = 60

_PANEL_CAP = 0.5 * math.pi
_DEFAULT_R = 2000.0
_DEFAULT_TOL = 1e-9

# published rounding slack: 1e-5 quadrature budget + 5e-4 truncation tail
_TABLE_SLACK = 5.1e-4


@dataclass(frozen=True)
class SphereParams:
    """Dimension d >= 2 with its derived exponents."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("require d >= 2")

    @property
    def p(self):
        return 2.0 * (self.d + 1) / (self.d - 1)

    @property
    def nu(self):
        return self.d / 2.0 - 1.0

    @property
    def lam(self):
        return (3.0 * self.d - 5.0) / (3.0 * self.d - 3.0)


@dataclass(frozen=True)
class SphereGapRow:
    """One k-cell of a gap certificate.

    scaled is the certified upper reading (p-1)(c_k + err); bk_scaled the
    closed-form threshold (p-1) b_k; either must fall below c0_lower.
    """

    d: int
    k: int
    ck: CertifiedValue
    scaled: float
    bk_scaled: float
    c0_lower: float


def ceil5(x):
    """Round up to 5 decimals, forgiving ~1e-11 of float fuzz below a grid point."""
    return math.ceil(x * 1e5 - 1e-6) / 1e5


def floor5(x):
    """Round down to 5 decimals, forgiving ~1e-11 of float fuzz above a grid point."""
    return math.floor(x * 1e5 + 1e-6) / 1e5


def k_split(d):
    """(k_numeric, k_tail): which k get numerical treatment vs the b_k bound.

    For d = 2 the tail range k >= 7 is covered by an external result rather
    than b_k; k_tail = 7 marks where the numeric range ends.
    """
    if d == 2:
        return 6, 7
    if d == 3:
        return 7, 8
    if d in (4, 5):
        return 4, 5
    return 3, 4


def _check_envelope(params, k, allow_uncertified):
    if k < 0 or k > 64:
        raise ValueError("require 0 <= k <= 64")
    if params.d > CERTIFIED_DMAX and not allow_uncertified:
        raise ValueError(
            f"d = {params.d} is outside the certified range d <= {CERTIFIED_DMAX}; "
            "pass allow_uncertified=True to compute anyway"
        )
    if params.nu + k > MAX_ORDER:
        raise ValueError("Bessel order nu + k exceeds the certified envelope")


@lru_cache(maxsize=None)
def _ck_quad(params, k, R, tol):
    """Adaptive quadrature of the truncated integral over [0, R].

    The integrand is nonnegative, so value - err_bound is a certified
    lower bound for the full untruncated c_k as well.
    """
    d = params.d
    return integrate_adaptive(
        lambda r: ck_integrand_many(d, k, r), 0.0, R, tol, panel_cap=_PANEL_CAP
    )


def ck_estimate(params, k, R=_DEFAULT_R, tol=_DEFAULT_TOL, allow_uncertified=False):
    """Certified estimate of c_k: truncated adaptive integral plus tail bound.

    Requires R >= (3/2)(nu + k) so the amplitude bound behind the r^(-2)
    tail majorant applies beyond R. err_bound = quadrature error +
    tail_power_bound(1, 2, R).
    """
    _check_envelope(params, k, allow_uncertified)
    if R < 1.5 * (params.nu + k):
        raise ValueError("require R >= (3/2)(nu + k) for the tail majorant")
    quad = _ck_quad(params, k, R, tol)
    return CertifiedValue(
        value=quad.value, err_bound=quad.err_bound + tail_power_bound(1.0, 2.0, R)
    )


def bk_upper(params, k):
    """Closed-form upper bound b_k > c_k, decreasing in k.

    b_k = L^(p-2) Gamma(lam) Gamma(nu+k+(1-lam)/2)
          / (2^lam Gamma((1+lam)/2)^2 Gamma(nu+k+(1+lam)/2))
    with L the Landau bound and lam = (3d-5)/(3d-3); evaluated in log space.
    """
    if k < 0:
        raise ValueError("require k >= 0")
    lam = params.lam
    a = params.nu + k
    logb = (
        (params.p - 2.0) * math.log(LANDAU_BOUND)
        + math.lgamma(lam)
        + math.lgamma(a + 0.5 * (1.0 - lam))
        - lam * math.log(2.0)
        - 2.0 * math.lgamma(0.5 * (1.0 + lam))
        - math.lgamma(a + 0.5 * (1.0 + lam))
    )
    return math.exp(logb)


def bk_decreasing_check(params, k_max):
    """True iff b_k > b_(k+1) for all 1 <= k < k_max."""
    if k_max < 2:
        raise ValueError("require k_max >= 2")
    vals = [bk_upper(params, k) for k in range(1, k_max + 1)]
    return all(a > b for a, b in zip(vals, vals[1:]))


def remarkable_identity_residual(params, R=_DEFAULT_R, tol=_DEFAULT_TOL):
    """Relative residual |c_0 - (p-1) c_1| / c_0 from the two estimates.

    The identity is exact for the untruncated integrals (here p always
    exceeds 2d/(d-1), so both sides are finite); truncation at R leaves a
    residual controlled by the combined err_bounds, which the caller should
    compare against.
    """
    c0 = ck_estimate(params, 0, R, tol)
    c1 = ck_estimate(params, 1, R, tol)
    return abs(c0.value - (params.p - 1.0) * c1.value) / c0.value


def sphere_surface_area(d):
    """Surface measure of the unit (d-1)-sphere in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def tomas_stein_constant(params, tol=_DEFAULT_TOL, R=10000.0):
    """Sharp-extension reference constant (2 pi)^(d/2) |S^(d-1)|^(-1/(d+1)) c_0^(1/p).

    Equals 2 pi at d = 3 where c_0 = 1/pi in closed form. The err_bound is
    the c_0 uncertainty pushed through the concave 1/p power at the lower
    endpoint, where the derivative is largest. The default truncation runs
    to the edge of the Bessel argument envelope: the generic 1/R tail
    allowance enters c_0^(1/p) amplified by c_0/p, so the table radius of
    2000 would leave several 1e-4 of slack on the constant itself.
    """
    d = params.d
    c0 = ck_estimate(params, 0, R, tol)
    pref = (2.0 * math.pi) ** (d / 2.0) * sphere_surface_area(d) ** (-1.0 / (d + 1))
    lo = c0.value - c0.err_bound
    if lo <= 0:
        raise ValueError("c_0 estimate is not certified positive")
    ip = 1.0 / params.p
    return CertifiedValue(
        value=pref * c0.value**ip,
        err_bound=pref * ip * lo ** (ip - 1.0) * c0.err_bound,
    )


def gap_certificate(
    params,
    k_numeric=None,
    k_tail=None,
    R=_DEFAULT_R,
    tol=_DEFAULT_TOL,
    monotone_horizon=200,
):
    """Certify (1-eps) c_0 > (p-1) c_k for all k >= 2 at dimension d.

    Numeric range: for k = 2..k_numeric require
    (p-1)(c_k + quad_err + tail) < c_0_trunc - quad_err; the truncated
    c_0 needs no tail allowance on its side since dropping a nonnegative
    tail only understates it. Tail range: (p-1) b_(k_tail) < that same
    lower bound, together with b_k decreasing (checked through
    monotone_horizon), covers every larger k. At d = 2 the tail range is
    instead covered by an external result, recorded as a flag.

    Returns PASS with margins (including the largest admissible eps),
    INCONCLUSIVE when an error bar straddles the threshold, FAIL only when
    a reverse inequality is certified outright.
    """
    d = params.d
    if k_numeric is None or k_tail is None:
        kn, kt = k_split(d)
        k_numeric = kn if k_numeric is None else k_numeric
        k_tail = kt if k_tail is None else k_tail
    if k_numeric < 2:
        raise ValueError("require k_numeric >= 2")
    if k_tail != k_numeric + 1:
        raise ValueError("require k_tail == k_numeric + 1")

    pm1 = params.p - 1.0
    # positivity of the integrand makes the truncated c_0 a lower bound for
    # the full one; only the quadrature error applies on that side. The
    # upper bound still carries the truncation tail.
    _check_envelope(params, 0, allow_uncertified=False)
    c0_quad = _ck_quad(params, 0, R, tol)
    c0_lower = c0_quad.value - c0_quad.err_bound
    c0_upper = c0_quad.value + c0_quad.err_bound + tail_power_bound(1.0, 2.0, R)

    margins = {}
    notes = []
    rows = []
    worst_ratio = 0.0
    any_fail = False
    any_straddle = False

    for k in range(2, k_numeric + 1):
        ck = ck_estimate(params, k, R, tol)
        scaled = pm1 * (ck.value + ck.err_bound)
        rows.append(
            SphereGapRow(
                d=d, k=k, ck=ck, scaled=scaled,
                bk_scaled=pm1 * bk_upper(params, k), c0_lower=c0_lower,
            )
        )
        margins[f"k={k}"] = c0_lower - scaled
        worst_ratio = max(worst_ratio, scaled / c0_lower)
        if pm1 * (ck.value - ck.err_bound) > c0_upper:
            any_fail = True
        elif scaled >= c0_lower:
            any_straddle = True

    tail_checked = d != 2
    if tail_checked:
        bt = pm1 * bk_upper(params, k_tail)
        margins[f"tail_k={k_tail}"] = c0_lower - bt
        worst_ratio = max(worst_ratio, bt / c0_lower)
        if bt >= c0_lower:
            # b_k is an upper bound, so crossing it is not a disproof
            any_straddle = True
    else:
        notes.append(
            f"k >= {k_tail} at d = 2 rests on an external result, not on b_k"
        )

    monotone = bk_decreasing_check(params, monotone_horizon)
    if not monotone:
        any_straddle = True
        notes.append("b_k failed the decreasing check; tail coverage unsupported")

    if any_fail:
        verdict = "FAIL"
    elif any_straddle:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "PASS"
        margins["epsilon"] = 1.0 - worst_ratio

    flags = {
        "tail_bound_checked": tail_checked,
        "k_tail_cited_external": not tail_checked,
        "bk_decreasing": monotone,
    }
    if params.d > CERTIFIED_DMAX:
        flags["uncertified_dimension"] = True
    return CertReport(
        name=f"sphere-gap-d{d}", verdict=verdict, margins=margins,
        flags=flags, notes=tuple(notes),
    )


def _gauss_theta(n):
    """Gauss-Legendre rule mapped to theta in [0, pi]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * math.pi * (x + 1.0), 0.5 * math.pi * w


def _kernel_inner_matrix(params, k, q, r, n_nodes):
    """I[i,j] = integral over [0,pi] of e^(q r_i r_j (cos t - 1))
    (1 - ratio_k(cos t)) (sin t)^(2 nu) dt, for all pairs at once."""
    theta, w = _gauss_theta(n_nodes)
    al = np.cos(theta)
    bracket = 1.0 - gegenbauer_ratio(k, params.nu, al)
    wt = w * np.sin(theta) ** (2.0 * params.nu) * bracket
    out = np.empty((r.size, r.size))
    dc = al - 1.0
    for i in range(r.size):
        out[i] = np.exp(q * r[i] * r[:, None] * dc[None, :]) @ wt
    return out


def kernel_gram(params, k, t, points):
    """Hermitian Gram matrix of the deficit kernel b_k at the given radii.

    b_k(t, r1, r2) factors as exp(-q(r1^2 + r2^2 - r1 r2)) times a unit-
    modulus phase in t times the bounded inner integral over the Gegenbauer
    variable, q = (1 + t^2)/(p - 2); the factored form never overflows. The
    inner integral is done by Gauss-Legendre with node doubling until two
    consecutive refinements agree to 1e-12 of the matrix scale.

    k = 0 is admitted as the degenerate case of an identically zero kernel.

    Definiteness depends on the parity of k. Expanding exp(q r1 r2 alpha)
    in powers of r1 r2 gives coefficients proportional to the alpha-moments
    of (1 - ratio_k) against the Gegenbauer weight: for even k the bracket
    is even, so odd moments vanish and even ones are nonnegative (the ratio
    is bounded by 1 where alpha^m >= 0), making the kernel positive
    semidefinite outright. For odd k the odd moments are strictly negative,
    and on well-spread positive radii the Gram matrix picks up genuinely
    negative eigenvalues (about -1e-2 of the norm at k = 1, -1e-6 at k = 3).
    """
    if not 0 <= k <= 50:
        raise ValueError("require 0 <= k <= 50")
    r = np.asarray(sorted(points), dtype=np.float64)
    if r.size == 0 or r.size > 200:
        raise ValueError("need between 1 and 200 points")
    if r[0] <= 0 or np.any(np.diff(r) == 0.0):
        raise ValueError("points must be positive and distinct")
    q = (1.0 + t * t) / (params.p - 2.0)

    inner = None
    prev = None
    for n_nodes in (192, 384, 768, 1536):
        cur = _kernel_inner_matrix(params, k, q, r, n_nodes)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if float(np.max(np.abs(cur - prev))) <= 1e-12 * scale:
                inner = cur
                break
        prev = cur
    if inner is None:
        raise QuadratureNonConvergence(
            "Gegenbauer kernel quadrature did not stabilize at 1536 nodes"
        )

    r2 = r * r
    damp = np.exp(-q * (r2[:, None] + r2[None, :] - np.outer(r, r)))
    phase = np.exp(-1j * math.pi * t * (r2[:, None] - r2[None, :]))
    B = damp * phase * inner
    return 0.5 * (B + B.conj().T)


def kernel_psd_min_eig(params, k, t, points):
    """Minimum eigenvalue of kernel_gram, via cyclic Jacobi sweeps on the
    2n x 2n real embedding of the Hermitian matrix."""
    B = kernel_gram(params, k, t, points)
    emb = np.block([[B.real, -B.imag], [B.imag, B.real]])
    return _jacobi_min_eig(emb)


def _jacobi_min_eig(S):
    """Minimum eigenvalue of a real symmetric matrix by cyclic Jacobi sweeps."""
    A = np.array(S, dtype=np.float64)
    n = A.shape[0]
    norm_f = float(np.linalg.norm(A))
    if norm_f == 0.0:
        return 0.0
    for _ in range(50):
        off = math.sqrt(max(0.0, float(np.sum(A * A)) - float(np.sum(np.diag(A) ** 2))))
        if off <= 1e-14 * norm_f:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * norm_f:
                    continue
                theta = 0.5 * (A[q, q] - A[p, p]) / apq
                tv = math.copysign(1.0, theta) / (
                    abs(theta) + math.hypot(theta, 1.0)
                )
                c = 1.0 / math.sqrt(tv * tv + 1.0)
                s = tv * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
    return float(np.min(np.diag(A)))


def emit_tables(d_range, fmt="csv", R=_DEFAULT_R, tol=_DEFAULT_TOL):
    """Reproduce the two published threshold tables over the given dimensions.

    Table 1: per dimension, the rounded-up tail threshold (p-1) b_(k_tail)
    (absent at d = 2, where that range is cited externally) and the
    rounded-down numeric c_0.
    Table 2: per dimension and each numeric k >= 2, the rounded-up certified
    reading (p-1)(c_k + 5.1e-4), the slack covering the quadrature budget
    (1e-5) plus the truncation tail (5e-4).

    fmt="json" adds raw err_bound columns; fmt="csv" keeps exactly the
    published columns. Returns (table1, table2).
    """
    if fmt not in ("csv", "json"):
        raise ValueError("fmt must be 'csv' or 'json'")
    rows1 = []
    rows2 = []
    for d in sorted(d_range):
        if not 2 <= d:
            raise ValueError("dimensions must satisfy d >= 2")
        params = SphereParams(d)
        allow = d > CERTIFIED_DMAX
        pm1 = params.p - 1.0
        kn, kt = k_split(d)
        c0 = ck_estimate(params, 0, R, tol, allow_uncertified=allow)
        c0_tilde = f"{floor5(c0.value):.5f}"
        if d == 2:
            thr = None
        else:
            thr = f"{ceil5(pm1 * bk_upper(params, kt)):.5f}"
        row1 = [d, thr, kt, c0_tilde]
        if fmt == "json":
            row1.append(c0.err_bound)
        rows1.append(tuple(row1))
        for k in range(2, kn + 1):
            ck = ck_estimate(params, k, R, tol, allow_uncertified=allow)
            upper = f"{ceil5(pm1 * (ck.value + _TABLE_SLACK)):.5f}"
            row2 = [d, k, upper, c0_tilde]
            if fmt == "json":
                row2.append(ck.err_bound)
            rows2.append(tuple(row2))
    cols1 = ["d", "pm1_bk_threshold", "k_threshold", "c0_tilde"]
    cols2 = ["d", "k", "pm1_ck_upper", "c0_tilde"]
    if fmt == "json":
        cols1.append("c0_err_bound")
        cols2.append("ck_err_bound")
    return (
        CoeffTable(name="tail_thresholds", columns=tuple(cols1), rows=tuple(rows1)),
        CoeffTable(name="coercivity_gap", columns=tuple(cols2), rows=tuple(rows2)),
    )
