"""Deficit functional on a finite-dimensional discretization.

psi(f) = C*^2 <f|f> - (sum_j w_j |(Sf)_j|^p)^(2/p), with C* calibrated so
psi(f*) = 0. The module provides the analytic first and second variations
and a full Hessian assembly over the 2n real coordinates (real parts, then
imaginary parts). Everything is plain weighted linear algebra; the point is
that the analytic formulas can be validated against finite differences and
then trusted in the mode-space models built on top.

psi is real-differentiable but not complex-differentiable, hence all
directional derivatives are taken along real lines and the Hessian lives on
the realified space.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np


def _as_readonly(a, dtype):
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DiscreteDeficitModel:
    """Weighted-grid model of the deficit functional.

    metric: positive diagonal Hilbert weights (length n).
    S: complex operator matrix (m x n) mapping coefficients to grid samples.
    w: positive grid weights (length m) of the L^p measure.
    p: exponent > 2.
    f_star: reference element (length n) with S f_star not identically 0.
    """

    metric: np.ndarray
    S: np.ndarray
    w: np.ndarray
    p: float
    f_star: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "metric", _as_readonly(self.metric, np.float64))
        object.__setattr__(self, "S", _as_readonly(self.S, np.complex128))
        object.__setattr__(self, "w", _as_readonly(self.w, np.float64))
        object.__setattr__(self, "f_star", _as_readonly(self.f_star, np.complex128))
        n = self.metric.shape[0]
        m = self.w.shape[0]
        if self.S.shape != (m, n):
            raise ValueError("S must have shape (len(w), len(metric))")
        if self.f_star.shape != (n,):
            raise ValueError("f_star must have length n")
        if np.any(self.metric <= 0) or np.any(self.w <= 0):
            raise ValueError("metric and grid weights must be positive")
        if self.p <= 2:
            raise ValueError("require p > 2")
        if self.lp_norm(self.S @ self.f_star) == 0.0:
            raise ValueError("S f_star must not vanish identically")

    @property
    def n(self):
        return self.metric.shape[0]

    @property
    def m(self):
        return self.w.shape[0]

    def inner(self, f, g):
        """Hermitian scalar product <f|g>, linear in g."""
        return complex(np.sum(self.metric * np.conj(f) * g))

    def lp_norm(self, u):
        return float(np.sum(self.w * np.abs(u) ** self.p)) ** (1.0 / self.p)

    @cached_property
    def c_star(self):
        ns = math.sqrt(self.inner(self.f_star, self.f_star).real)
        return self.lp_norm(self.S @ self.f_star) / ns

    def embed(self, f):
        """Complex coefficient vector -> 2n real coordinates."""
        f = np.asarray(f, dtype=np.complex128)
        return np.concatenate([f.real, f.imag])


@dataclass(frozen=True)
class VariationReport:
    """psi with its first two variations at a fixed base point.

    gradient_re[k] and gradient_im[k] are the derivatives along the k-th
    real and imaginary coordinate directions; hessian_action evaluates the
    second-variation quadratic form on a complex direction vector.
    """

    psi_value: float
    gradient_re: np.ndarray
    gradient_im: np.ndarray
    hessian_action: Callable = field(repr=False)

    def gradient_norm(self):
        return math.hypot(
            float(np.linalg.norm(self.gradient_re)),
            float(np.linalg.norm(self.gradient_im)),
        )


def psi(model, f):
    """C*^2 <f|f> - ||Sf||_p^2."""
    f = np.asarray(f, dtype=np.complex128)
    quad = model.inner(f, f).real
    return model.c_star**2 * quad - model.lp_norm(model.S @ f) ** 2


def _nondegenerate_sf(model, f):
    sf = model.S @ np.asarray(f, dtype=np.complex128)
    ns = model.lp_norm(sf)
    if ns == 0.0:
        raise ValueError("variation undefined where Sf vanishes identically")
    return sf, ns


def psi_prime(model, f, g):
    """First variation: 2 C*^2 Re<f|g> - 2||Sf||^(2-p) Re int |Sf|^(p-2) conj(Sf) Sg."""
    sf, ns = _nondegenerate_sf(model, f)
    g = np.asarray(g, dtype=np.complex128)
    sg = model.S @ g
    t1 = 2.0 * model.c_star**2 * model.inner(f, g).real
    dens = model.w * np.abs(sf) ** (model.p - 2.0)
    t2 = 2.0 * ns ** (2.0 - model.p) * float(np.sum(dens * (np.conj(sf) * sg).real))
    return t1 - t2


def _phase_sq(sf):
    """conj(Sf)^2 / |Sf|^2 with an explicit 0 at Sf = 0.

    This realizes |Sf|^(p-4) conj(Sf)^2 = |Sf|^(p-2) * phase^2 without ever
    forming a negative power; the p > 2 removable singularity at zeros of Sf
    becomes an exact zero branch.
    """
    a = np.abs(sf)
    out = np.zeros_like(sf)
    nz = a > 0.0
    ph = np.conj(sf[nz]) / a[nz]
    out[nz] = ph * ph
    return out


def psi_second(model, f, g):
    """Second variation quadratic form at f, evaluated on direction g."""
    sf, ns = _nondegenerate_sf(model, f)
    g = np.asarray(g, dtype=np.complex128)
    sg = model.S @ g
    p = model.p
    absf = np.abs(sf)
    dens = model.w * absf ** (p - 2.0)

    t1 = 2.0 * model.c_star**2 * model.inner(g, g).real
    t2 = p * ns ** (2.0 - p) * float(np.sum(dens * np.abs(sg) ** 2))
    c3 = _phase_sq(sf)
    t3 = (p - 2.0) * ns ** (2.0 - p) * float(np.sum(dens * (c3 * sg * sg).real))
    lin = float(np.sum(dens * (np.conj(sf) * sg).real))
    t4 = 2.0 * (2.0 - p) * ns ** (2.0 - 2.0 * p) * lin * lin
    return t1 - t2 - t3 - t4


def hessian_matrix(model, f):
    """Second variation as a symmetric matrix over the 2n real coordinates.

    Direct assembly: with P + iQ the realified operator and v the realified
    direction, Sg = (P + iQ)v, so each integral term becomes a congruence
    P^T diag(.) P style product; the rank-one last term is an outer product
    of the linear functional's representer.
    """
    sf, ns = _nondegenerate_sf(model, f)
    p = model.p
    n = model.n
    absf = np.abs(sf)
    dens = model.w * absf ** (p - 2.0)

    P = np.hstack([model.S.real, -model.S.imag])
    Q = np.hstack([model.S.imag, model.S.real])

    M1 = np.zeros((2 * n, 2 * n))
    idx = np.arange(2 * n)
    M1[idx, idx] = np.concatenate([model.metric, model.metric])

    M2 = P.T @ (dens[:, None] * P) + Q.T @ (dens[:, None] * Q)

    c3 = _phase_sq(sf)
    dr = dens * c3.real
    di = dens * c3.imag
    M3 = (
        P.T @ (dr[:, None] * P)
        - Q.T @ (dr[:, None] * Q)
        - P.T @ (di[:, None] * Q)
        - Q.T @ (di[:, None] * P)
    )

    u = dens * sf
    lvec = P.T @ u.real + Q.T @ u.imag

    H = (
        2.0 * model.c_star**2 * M1
        - p * ns ** (2.0 - p) * M2
        - (p - 2.0) * ns ** (2.0 - p) * M3
        - 2.0 * (2.0 - p) * ns ** (2.0 - 2.0 * p) * np.outer(lvec, lvec)
    )
    return 0.5 * (H + H.T)


def variation_report(model, f):
    """psi, full gradient over the 2n real directions, and the Hessian action."""
    f = np.asarray(f, dtype=np.complex128)
    sf, ns = _nondegenerate_sf(model, f)
    dens = model.w * np.abs(sf) ** (model.p - 2.0)
    u = dens * sf
    uhs = np.conj(u) @ model.S
    c2 = model.c_star**2
    scale = 2.0 * ns ** (2.0 - model.p)
    grad_re = 2.0 * c2 * model.metric * f.real - scale * uhs.real
    grad_im = 2.0 * c2 * model.metric * f.imag + scale * uhs.imag
    return VariationReport(
        psi_value=psi(model, f),
        gradient_re=grad_re,
        gradient_im=grad_im,
        hessian_action=lambda g: psi_second(model, f, g),
    )
