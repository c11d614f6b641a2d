"""Pure numpy implementation of the hot evaluation kernels.

Mirrors the compiled extension ``strichcert._kernels``; the backend module
selects whichever is available. Orders are passed as ``nu2 = 2 * order`` so a
single integer covers the integer and half-integer families.

Evaluation scheme per point (certified envelope: order <= 64, 0 <= x <= 1e4):

* ``x < 0.5``            ascending series on A_nu(x) = J_nu(x) / x^nu; the
                         ratio x^2/4 < 1/16 keeps it cancellation free.
* integer order:
    - ``x >= max(18, n+2)``  Hankel asymptotics for J_0, J_1 followed by the
                             upward three-term recurrence (stable for n < x).
    - otherwise              downward Miller recurrence normalized by
                             1 = J_0 + 2*(J_2 + J_4 + ...).
* half-integer order:
    - ``x >= n + 1``         upward spherical recurrence from the sin/cos
                             closed forms of j_0, j_1.
    - otherwise              downward spherical Miller recurrence normalized
                             against whichever of j_0, j_1 is larger in
                             magnitude (both are available in closed form).

The Miller seed is tiny enough that no intermediate rescaling is needed
inside the envelope: the worst downward growth is ~1e260 starting from 1e-40.
"""

import math

import numpy as np

BACKEND_NAME = "python"

MILLER_EXTRA = 50
_SMALL_X = 0.5
_ASYMPTOTIC_X = 18.0
_SEED = 1e-40


def _series_a(nu2, x):
    """A_nu(x) for x < 0.5 by the ascending series; x may be any shape."""
    nu = 0.5 * nu2
    t = np.full_like(x, math.exp(-nu * math.log(2.0) - math.lgamma(nu + 1.0)))
    s = t.copy()
    q = -0.25 * x * x
    # |q| < 1/16, so 16 terms land far below 1e-30 relative
    for j in range(16):
        t = t * q / ((j + 1.0) * (nu + j + 1.0))
        s += t
    return s


def _asymptotic_j0_j1(x):
    """(J_0(x), J_1(x)) for x >= 18 via Hankel expansions.

    The cos/sin of the shifted phase are taken from angle-sum identities so
    no accuracy is lost subtracting pi/4 from a large argument.
    """
    out = []
    for mu in (0.0, 4.0):
        u = np.ones_like(x)
        p = np.ones_like(x)
        q = np.zeros_like(x)
        active = np.ones(x.shape, dtype=bool)
        for k in range(1, 41):
            un = u * (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
            grew = np.abs(un) >= np.abs(u)
            active &= ~grew
            term = np.where(active, un, 0.0)
            sign = -1.0 if ((k // 2) % 2) else 1.0
            if k % 2:
                q += sign * term
            else:
                p += sign * term
            active &= np.abs(un) >= 1e-18
            u = un
            if not active.any():
                break
        out.append((p, q))
    (p0, q0), (p1, q1) = out
    c = np.cos(x)
    s = np.sin(x)
    pref = np.sqrt(1.0 / (math.pi * x))
    j0 = pref * (p0 * (c + s) - q0 * (s - c))
    j1 = pref * (p1 * (s - c) + q1 * (s + c))
    return j0, j1


def _upward_int(n, x, j0, j1):
    if n == 0:
        return j0
    jm, jc = j0, j1
    for k in range(1, n):
        jm, jc = jc, (2.0 * k / x) * jc - jm
    return jc


def _miller_int(n, x):
    """J_n(x) by downward recurrence, for x below the asymptotic regime."""
    m = max(n, int(math.ceil(float(x.max())))) + MILLER_EXTRA
    jp = np.zeros_like(x)
    jc = np.full_like(x, _SEED)
    s = 2.0 * jc if m % 2 == 0 else np.zeros_like(x)
    out = None
    for k in range(m, 0, -1):
        jn = (2.0 * k / x) * jc - jp
        km1 = k - 1
        if km1 == n:
            out = jn.copy()
        if km1 == 0:
            s = s + jn
        elif km1 % 2 == 0:
            s = s + 2.0 * jn
        jp, jc = jc, jn
    return out / s


def _spherical_upward(n, x):
    """Spherical j_n(x) for x >= n + 1 (forward recurrence is stable there)."""
    j0 = np.sin(x) / x
    if n == 0:
        return j0
    j1 = j0 / x - np.cos(x) / x
    jm, jc = j0, j1
    for k in range(1, n):
        jm, jc = jc, ((2.0 * k + 1.0) / x) * jc - jm
    return jc


def _miller_sph(n, x):
    """Spherical j_n(x) by downward recurrence, normalized against j_0/j_1."""
    m = max(n, int(math.ceil(float(x.max())))) + MILLER_EXTRA
    jp = np.zeros_like(x)
    jc = np.full_like(x, _SEED)
    out = None
    u0 = None
    u1 = None
    for k in range(m, 0, -1):
        jn = ((2.0 * k + 1.0) / x) * jc - jp
        km1 = k - 1
        if km1 == n:
            out = jn.copy()
        if km1 == 1:
            u1 = jn.copy()
        elif km1 == 0:
            u0 = jn
        jp, jc = jc, jn
    t0 = np.sin(x) / x
    t1 = t0 / x - np.cos(x) / x
    use0 = np.abs(t0) >= np.abs(t1)
    denom = np.where(use0, u0, u1)
    scale = np.where(use0, t0, t1) / denom
    return out * scale


def bessel_j_many(nu2, x):
    """J_{nu2/2}(x) elementwise for a 1-D float array x >= 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    n = nu2 // 2
    half = bool(nu2 % 2)
    nu = 0.5 * nu2

    zero = x == 0.0
    if zero.any():
        out[zero] = 1.0 if nu2 == 0 else 0.0

    small = (~zero) & (x < _SMALL_X)
    if small.any():
        xs = x[small]
        a = _series_a(nu2, xs)
        if nu2 == 0:
            out[small] = a
        else:
            # x^nu underflows harmlessly to 0 for tiny x at high order
            out[small] = a * np.exp(nu * np.log(xs))

    rest = (~zero) & (~small)
    if rest.any():
        xr = x[rest]
        res = np.empty_like(xr)
        if half:
            up = xr >= n + 1.0
            if up.any():
                res[up] = _spherical_upward(n, xr[up])
            if (~up).any():
                res[~up] = _miller_sph(n, xr[~up])
            res *= np.sqrt(2.0 * xr / math.pi)
        else:
            asym = xr >= max(_ASYMPTOTIC_X, n + 2.0)
            if asym.any():
                xa = xr[asym]
                j0, j1 = _asymptotic_j0_j1(xa)
                res[asym] = _upward_int(n, xa, j0, j1)
            if (~asym).any():
                res[~asym] = _miller_int(n, xr[~asym])
        out[rest] = res
    return out


def bessel_a_many(nu2, x):
    """A_{nu2/2}(x) = J(x)/x^nu with the series limit filled in at x = 0."""
    x = np.asarray(x, dtype=np.float64)
    nu = 0.5 * nu2
    out = np.empty_like(x)
    zero = x == 0.0
    if zero.any():
        out[zero] = math.exp(-nu * math.log(2.0) - math.lgamma(nu + 1.0))
    small = (~zero) & (x < _SMALL_X)
    if small.any():
        out[small] = _series_a(nu2, x[small])
    rest = (~zero) & (~small)
    if rest.any():
        xr = x[rest]
        # x^nu stays below 1e260 inside the envelope, so direct division is safe
        out[rest] = bessel_j_many(nu2, xr) / np.power(xr, nu)
    return out


def ck_integrand_many(d, k, r):
    """Coefficient-integral integrand |A_nu|^(p-2) A_{nu+k}^2 r^(2nu+1+2k).

    Assembled in log space from plain Bessel values: the r-powers collapse to
    r^((3-d)/(d-1)). Zero at r = 0 and at zeros of either Bessel factor
    (continuous there since p > 2).
    """
    r = np.asarray(r, dtype=np.float64)
    pm2 = 4.0 / (d - 1.0)
    er = (3.0 - d) / (d - 1.0)
    ja = bessel_j_many(d - 2, r)
    jb = bessel_j_many(d - 2 + 2 * k, r)
    out = np.zeros_like(r)
    m = (r > 0.0) & (ja != 0.0) & (jb != 0.0)
    if m.any():
        lr = np.log(r[m])
        out[m] = np.exp(
            pm2 * np.log(np.abs(ja[m])) + 2.0 * np.log(np.abs(jb[m])) + er * lr
        )
    return out


def bessel_j_scalar(nu2, x):
    return float(bessel_j_many(nu2, np.array([x], dtype=np.float64))[0])


def bessel_a_scalar(nu2, x):
    return float(bessel_a_many(nu2, np.array([x], dtype=np.float64))[0])
