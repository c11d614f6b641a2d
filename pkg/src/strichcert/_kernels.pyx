# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled scalar implementation of the hot evaluation kernels.

Same algorithms and branch cuts as ``_kernels_py`` (the numpy fallback); see
that module for the scheme notes. Kept in plain C loops so adaptive
quadrature batches pay no per-element interpreter cost.
"""

import numpy as np

from libc.math cimport (ceil, cos, exp, fabs, lgamma, log, sin, sqrt, M_PI)

BACKEND_NAME = "cython"

cdef double MILLER_EXTRA = 50.0
cdef double _SMALL_X = 0.5
cdef double _ASYMPTOTIC_X = 18.0
cdef double _SEED = 1e-40


cdef double _series_a(int nu2, double x) nogil:
    cdef double nu = 0.5 * nu2
    cdef double t = exp(-nu * log(2.0) - lgamma(nu + 1.0))
    cdef double s = t
    cdef double q = -0.25 * x * x
    cdef int j
    for j in range(16):
        t = t * q / ((j + 1.0) * (nu + j + 1.0))
        s += t
    return s


cdef void _asym_pq(double mu, double x, double* pout, double* qout) nogil:
    cdef double u = 1.0
    cdef double p = 1.0
    cdef double q = 0.0
    cdef double un
    cdef double sign
    cdef int k
    for k in range(1, 41):
        un = u * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x)
        if fabs(un) >= fabs(u):
            break
        sign = -1.0 if ((k // 2) % 2) else 1.0
        if k % 2:
            q += sign * un
        else:
            p += sign * un
        u = un
        if fabs(un) < 1e-18:
            break
    pout[0] = p
    qout[0] = q


cdef double _bessel_j(int nu2, double x) nogil:
    cdef int n = nu2 // 2
    cdef int half = nu2 % 2
    cdef double nu = 0.5 * nu2
    cdef int m, k, km1
    cdef double jp, jc, jn, s, out, u0, u1, t0, t1
    cdef double p0, q0, p1, q1, c, sn, pref, j0, j1, jm

    if x == 0.0:
        return 1.0 if nu2 == 0 else 0.0
    if x < _SMALL_X:
        if nu2 == 0:
            return _series_a(nu2, x)
        return _series_a(nu2, x) * exp(nu * log(x))

    if half:
        if x >= n + 1.0:
            # forward spherical recurrence
            j0 = sin(x) / x
            if n == 0:
                return sqrt(2.0 * x / M_PI) * j0
            j1 = j0 / x - cos(x) / x
            jm = j0
            jc = j1
            for k in range(1, n):
                jn = ((2.0 * k + 1.0) / x) * jc - jm
                jm = jc
                jc = jn
            return sqrt(2.0 * x / M_PI) * jc
        # downward spherical Miller
        m = n + <int>MILLER_EXTRA
        if <int>ceil(x) > n:
            m = <int>ceil(x) + <int>MILLER_EXTRA
        jp = 0.0
        jc = _SEED
        out = 0.0
        u0 = 0.0
        u1 = 0.0
        for k in range(m, 0, -1):
            jn = ((2.0 * k + 1.0) / x) * jc - jp
            km1 = k - 1
            if km1 == n:
                out = jn
            if km1 == 1:
                u1 = jn
            elif km1 == 0:
                u0 = jn
            jp = jc
            jc = jn
        t0 = sin(x) / x
        t1 = t0 / x - cos(x) / x
        if fabs(t0) >= fabs(t1):
            out = out * (t0 / u0)
        else:
            out = out * (t1 / u1)
        return sqrt(2.0 * x / M_PI) * out

    if x >= _ASYMPTOTIC_X and x >= n + 2.0:
        _asym_pq(0.0, x, &p0, &q0)
        _asym_pq(4.0, x, &p1, &q1)
        c = cos(x)
        sn = sin(x)
        pref = sqrt(1.0 / (M_PI * x))
        j0 = pref * (p0 * (c + sn) - q0 * (sn - c))
        if n == 0:
            return j0
        j1 = pref * (p1 * (sn - c) + q1 * (sn + c))
        jm = j0
        jc = j1
        for k in range(1, n):
            jn = (2.0 * k / x) * jc - jm
            jm = jc
            jc = jn
        return jc

    # downward integer Miller
    m = n + <int>MILLER_EXTRA
    if <int>ceil(x) > n:
        m = <int>ceil(x) + <int>MILLER_EXTRA
    jp = 0.0
    jc = _SEED
    s = 2.0 * jc if m % 2 == 0 else 0.0
    out = 0.0
    for k in range(m, 0, -1):
        jn = (2.0 * k / x) * jc - jp
        km1 = k - 1
        if km1 == n:
            out = jn
        if km1 == 0:
            s += jn
        elif km1 % 2 == 0:
            s += 2.0 * jn
        jp = jc
        jc = jn
    return out / s


cdef double _bessel_a(int nu2, double x) nogil:
    cdef double nu = 0.5 * nu2
    if x == 0.0:
        return exp(-nu * log(2.0) - lgamma(nu + 1.0))
    if x < _SMALL_X:
        return _series_a(nu2, x)
    # x^nu stays below 1e260 inside the envelope
    return _bessel_j(nu2, x) / exp(nu * log(x))


def bessel_j_many(int nu2, x):
    arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] xv = arr
    cdef double[::1] ov = out
    cdef Py_ssize_t i, nn = xv.shape[0]
    with nogil:
        for i in range(nn):
            ov[i] = _bessel_j(nu2, xv[i])
    return out


def bessel_a_many(int nu2, x):
    arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] xv = arr
    cdef double[::1] ov = out
    cdef Py_ssize_t i, nn = xv.shape[0]
    with nogil:
        for i in range(nn):
            ov[i] = _bessel_a(nu2, xv[i])
    return out


def ck_integrand_many(int d, int k, r):
    arr = np.ascontiguousarray(r, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] rv = arr
    cdef double[::1] ov = out
    cdef Py_ssize_t i, nn = rv.shape[0]
    cdef double pm2 = 4.0 / (d - 1.0)
    cdef double er = (3.0 - d) / (d - 1.0)
    cdef int nu2a = d - 2
    cdef int nu2b = d - 2 + 2 * k
    cdef double x, ja, jb
    with nogil:
        for i in range(nn):
            x = rv[i]
            if x <= 0.0:
                ov[i] = 0.0
                continue
            ja = _bessel_j(nu2a, x)
            jb = _bessel_j(nu2b, x)
            if ja == 0.0 or jb == 0.0:
                ov[i] = 0.0
            else:
                ov[i] = exp(pm2 * log(fabs(ja)) + 2.0 * log(fabs(jb)) + er * log(x))
    return out


def bessel_j_scalar(int nu2, double x):
    return _bessel_j(nu2, x)


def bessel_a_scalar(int nu2, double x):
    return _bessel_a(nu2, x)
