"""Radial Penrose compactification of Minkowski space as explicit geometry.

Forward map on a radial slice: T = arctan(t+r) + arctan(t-r),
R = arctan(t+r) - arctan(t-r). The image is the open triangle |T| + R < pi,
the map is conformal with factor Omega = cos T + cos R in the (t, r) plane,
and the angular metric block matches through the exact pointwise identity
r = sin(R)/Omega, so the full conformality statement reduces to the 2x2
Jacobian check plus that scalar. The t = 0 slice is the stereographic
projection; its fingerprint is Omega_0 = 1 + cos R pulling back to
2/(1+r^2), and the extremal profile (1+r^2)^(-(d-1)/2) is the power
(Omega_0/2)^((d-1)/2) of it.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class MinkowskiRadialPoint:
    t: float
    r: float

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError("require r >= 0")


@dataclass(frozen=True)
class CompactifiedPoint:
    T: float
    R: float

    def __post_init__(self):
        if not (0.0 <= self.R < math.pi and abs(self.T) < math.pi):
            raise ValueError("require R in [0, pi) and |T| < pi")
        if not abs(self.T) + self.R < math.pi:
            raise ValueError("point outside the image triangle |T| + R < pi")


def penrose_forward(pt):
    a = math.atan(pt.t + pt.r)
    b = math.atan(pt.t - pt.r)
    return CompactifiedPoint(T=a + b, R=a - b)


def penrose_inverse(pt):
    """Inverts the compactification; the triangle invariant keeps both
    half-angles strictly inside (-pi/2, pi/2)."""
    ta = math.tan(0.5 * (pt.T + pt.R))
    tb = math.tan(0.5 * (pt.T - pt.R))
    return MinkowskiRadialPoint(t=0.5 * (ta + tb), r=0.5 * (ta - tb))


def omega(pt):
    return math.cos(pt.T) + math.cos(pt.R)


def omega0(R):
    return 1.0 + math.cos(R)


def omega0_identity_residual(r):
    """|Omega_0 on the t=0 slice minus 2/(1+r^2)|, the stereographic check."""
    if r < 0.0:
        raise ValueError("require r >= 0")
    R = penrose_forward(MinkowskiRadialPoint(t=0.0, r=r)).R
    return abs(omega0(R) - 2.0 / (1.0 + r * r))


def conformal_fd_residual(pt, h=1e-5):
    """Max-entry deviation of J^T diag(1,-1) J from Omega^2 diag(1,-1).

    J is the (t, r) -> (T, R) Jacobian by central differences; the
    identity is the radial-plane half of conformality.
    """
    if not 0.0 < h <= 1e-4:
        raise ValueError("require 0 < h <= 1e-4")
    if pt.r <= h:
        raise ValueError("point must keep r - h positive")
    t, r = pt.t, pt.r

    def fwd(tt, rr):
        p = penrose_forward(MinkowskiRadialPoint(t=tt, r=rr))
        return p.T, p.R

    Tp_t, Rp_t = fwd(t + h, r)
    Tm_t, Rm_t = fwd(t - h, r)
    Tp_r, Rp_r = fwd(t, r + h)
    Tm_r, Rm_r = fwd(t, r - h)
    J = [
        [(Tp_t - Tm_t) / (2 * h), (Tp_r - Tm_r) / (2 * h)],
        [(Rp_t - Rm_t) / (2 * h), (Rp_r - Rm_r) / (2 * h)],
    ]
    om2 = omega(penrose_forward(pt)) ** 2
    # G = J^T diag(1,-1) J, entrywise
    g00 = J[0][0] ** 2 - J[1][0] ** 2
    g01 = J[0][0] * J[0][1] - J[1][0] * J[1][1]
    g11 = J[0][1] ** 2 - J[1][1] ** 2
    return max(abs(g00 - om2), abs(g01), abs(g11 + om2))


def angular_identity_residual(pt):
    """|sin(R)/Omega - r|: the angular metric block of conformality."""
    img = penrose_forward(pt)
    return abs(math.sin(img.R) / omega(img) - pt.r)


def f_star_profile(d, r):
    """Unnormalized extremal profile (1 + r^2)^(-(d-1)/2)."""
    if d < 2:
        raise ValueError("require d >= 2")
    if r < 0.0:
        raise ValueError("require r >= 0")
    return (1.0 + r * r) ** (-0.5 * (d - 1))


def profile_residual(d, r):
    """|profile - 2^(-nu) Omega_0(R(r))^nu|, nu = (d-1)/2."""
    nu = 0.5 * (d - 1)
    R = penrose_forward(MinkowskiRadialPoint(t=0.0, r=r)).R
    return abs(f_star_profile(d, r) - (0.5 * omega0(R)) ** nu)
