"""Deficit functional: analytic variations against finite differences."""

import math

import numpy as np
import pytest

from strichcert.deficit import (
    DiscreteDeficitModel,
    hessian_matrix,
    psi,
    psi_prime,
    psi_second,
    variation_report,
)

from conftest import make_random_model


# ------------------------------------------------------------- psi itself


def test_psi_vanishes_at_reference(rng):
    for _ in range(10):
        model = make_random_model(rng)
        assert abs(psi(model, model.f_star)) <= 1e-12 * max(
            1.0, model.c_star**2
        )


def test_psi_vanishes_on_phase_and_scale_orbit(rng):
    model = make_random_model(rng)
    for z in (2.0, -0.5, 1j, 0.3 + 0.4j, cmplx := complex(1.1, -2.2)):
        assert abs(psi(model, z * model.f_star)) <= 1e-10


def test_psi_two_homogeneous(rng):
    model = make_random_model(rng)
    f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    base = psi(model, f)
    for z in (3.0, 1j, 0.7 - 0.2j):
        assert abs(psi(model, z * f) - abs(z) ** 2 * base) <= 1e-10 * max(
            1.0, abs(base)
        )


def test_psi_one_dimensional_model_is_identically_zero(rng):
    # with a single coefficient every element lies on the reference orbit
    model = DiscreteDeficitModel(
        metric=np.array([1.3]),
        S=(rng.standard_normal((6, 1)) + 1j * rng.standard_normal((6, 1))),
        w=rng.uniform(0.5, 1.0, size=6),
        p=3.1,
        f_star=np.array([1.0 + 0.0j]),
    )
    for z in (1.0, 2j, -0.4 + 0.1j):
        assert abs(psi(model, np.array([z]))) <= 1e-12


def test_model_validation(rng):
    good = make_random_model(rng)
    with pytest.raises(ValueError):
        DiscreteDeficitModel(
            metric=-np.abs(good.metric), S=good.S, w=good.w, p=3.5,
            f_star=good.f_star,
        )
    with pytest.raises(ValueError):
        DiscreteDeficitModel(
            metric=good.metric, S=good.S, w=good.w, p=2.0, f_star=good.f_star,
        )
    with pytest.raises(ValueError):
        DiscreteDeficitModel(
            metric=good.metric, S=good.S, w=good.w[:-1], p=3.5,
            f_star=good.f_star,
        )
    with pytest.raises(ValueError):
        DiscreteDeficitModel(
            metric=good.metric, S=np.zeros_like(good.S), w=good.w, p=3.5,
            f_star=good.f_star,
        )


# --------------------------------------------------------- first variation


def test_euler_identity(rng):
    # psi is 2-homogeneous along real rays: psi'(f) f = 2 psi(f)
    for _ in range(20):
        model = make_random_model(rng)
        f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        assert abs(psi_prime(model, f, f) - 2.0 * psi(model, f)) <= 1e-10


def test_phase_direction_is_flat(rng):
    # psi(e^(i theta) f) is constant, so the derivative along i f vanishes
    for _ in range(20):
        model = make_random_model(rng)
        f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        assert abs(psi_prime(model, f, 1j * f)) <= 1e-11


def test_first_variation_real_linear(rng):
    model = make_random_model(rng)
    f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    g = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    h = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    a, b = 1.7, -0.6
    lhs = psi_prime(model, f, a * g + b * h)
    rhs = a * psi_prime(model, f, g) + b * psi_prime(model, f, h)
    assert abs(lhs - rhs) <= 1e-10


def test_first_variation_fd_convergence(rng):
    orders = []
    for _ in range(25):
        model = make_random_model(rng, p=float(rng.uniform(2.5, 4.5)))
        f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        g = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        ana = psi_prime(model, f, g)

        def fd(eps):
            return (psi(model, f + eps * g) - psi(model, f - eps * g)) / (
                2.0 * eps
            )

        e1 = abs(fd(1e-3) - ana)
        e2 = abs(fd(5e-4) - ana)
        if e1 > 1e-11:
            orders.append(math.log2(e1 / e2))
    assert len(orders) >= 20
    assert min(orders) >= 1.8


def test_gradient_matches_directional_derivatives(rng):
    model = make_random_model(rng)
    f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    rep = variation_report(model, f)
    for k in range(model.n):
        e = np.zeros(model.n, dtype=complex)
        e[k] = 1.0
        assert abs(rep.gradient_re[k] - psi_prime(model, f, e)) <= 1e-11
        assert abs(rep.gradient_im[k] - psi_prime(model, f, 1j * e)) <= 1e-11
    assert rep.psi_value == psi(model, f)


def test_degenerate_direction_rejected(rng):
    model = DiscreteDeficitModel(
        metric=np.ones(2),
        S=np.array([[1.0 + 0j, 0.0], [2.0 + 0j, 0.0]]),
        w=np.ones(2),
        p=3.0,
        f_star=np.array([1.0 + 0j, 0.0]),
    )
    dead = np.array([0.0, 1.0 + 0j])  # S annihilates this one
    with pytest.raises(ValueError):
        psi_prime(model, dead, dead)
    with pytest.raises(ValueError):
        psi_second(model, dead, dead)


# -------------------------------------------------------- second variation


def test_second_variation_fd_convergence(rng):
    orders = []
    for _ in range(25):
        model = make_random_model(rng, p=float(rng.uniform(2.5, 4.5)))
        f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        g = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        ana = psi_second(model, f, g)

        def fd(eps):
            return (
                psi(model, f + eps * g)
                - 2.0 * psi(model, f)
                + psi(model, f - eps * g)
            ) / (eps * eps)

        # the 1/eps^2 amplifies rounding; stay on the truncation side
        e1 = abs(fd(4e-3) - ana)
        e2 = abs(fd(2e-3) - ana)
        if e1 > 1e-6 * max(1.0, abs(ana)):
            orders.append(math.log2(e1 / e2))
    assert len(orders) >= 20
    assert min(orders) >= 1.8


def test_hessian_symmetric_and_matches_quadratic_form(rng):
    for _ in range(5):
        model = make_random_model(rng)
        f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        H = hessian_matrix(model, f)
        assert float(np.max(np.abs(H - H.T))) == 0.0
        for _ in range(20):
            g = rng.standard_normal(model.n) + 1j * rng.standard_normal(
                model.n
            )
            v = model.embed(g)
            quad = float(v @ H @ v)
            direct = psi_second(model, f, g)
            assert abs(quad - direct) <= 1e-10 * max(1.0, abs(direct))


def test_hessian_action_in_report(rng):
    model = make_random_model(rng)
    f = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    rep = variation_report(model, f)
    g = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
    assert rep.hessian_action(g) == psi_second(model, f, g)


def _second_variation_terms(model, f, g):
    """The four terms of the second variation, from public pieces only."""
    sf = model.S @ f
    sg = model.S @ g
    ns = model.lp_norm(sf)
    p = model.p
    dens = model.w * np.abs(sf) ** (p - 2.0)
    absf = np.abs(sf)
    phase2 = np.where(absf > 0, (np.conj(sf) / np.where(absf > 0, absf, 1.0)) ** 2, 0.0)
    t1 = 2.0 * model.c_star**2 * model.inner(g, g).real
    t2 = p * ns ** (2.0 - p) * float(np.sum(dens * np.abs(sg) ** 2))
    t3 = (p - 2.0) * ns ** (2.0 - p) * float(np.sum(dens * (phase2 * sg * sg).real))
    lin = float(np.sum(dens * (np.conj(sf) * sg).real))
    t4 = 2.0 * (2.0 - p) * ns ** (2.0 - 2.0 * p) * lin * lin
    return t1, t2, t3, t4


def test_last_term_vanishes_on_orthogonal_critical_directions(rng):
    # with a real operator and a real base point, a purely imaginary
    # direction makes Re(conj(Sf) Sg) an exact floating-point zero; the
    # rank-one last term then contributes nothing at all
    S = rng.standard_normal((8, 4))
    model = DiscreteDeficitModel(
        metric=rng.uniform(0.5, 1.5, size=4),
        S=S.astype(complex),
        w=rng.uniform(0.5, 1.5, size=8),
        p=3.3,
        f_star=np.ones(4, dtype=complex),
    )
    f = rng.standard_normal(4).astype(complex)
    g = 1j * rng.standard_normal(4)
    t1, t2, t3, t4 = _second_variation_terms(model, f, g)
    assert t4 == 0.0
    assert abs(psi_second(model, f, g) - (t1 - t2 - t3)) <= 1e-12 * max(
        1.0, abs(t1)
    )
    # generic directions carry the full four-term expression
    g2 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    u1, u2, u3, u4 = _second_variation_terms(model, f, g2)
    assert u4 != 0.0
    assert abs(psi_second(model, f, g2) - (u1 - u2 - u3 - u4)) <= 1e-12 * max(
        1.0, abs(u1)
    )


def test_second_variation_finite_where_sf_has_zeros(rng):
    # a grid point where Sf = 0 is a removable singularity of the p - 4
    # power; the zero branch must return a finite value below p = 4
    S = np.array(
        [[1.0 + 0j, -1.0], [1.0 + 0j, 1.0], [0.5 + 0j, 0.5], [2.0 + 0j, -0.3]]
    )
    model = DiscreteDeficitModel(
        metric=np.ones(2),
        w=np.ones(4),
        S=S,
        p=3.5,
        f_star=np.array([1.0 + 0j, 0.2]),
    )
    f = np.array([1.0 + 0j, 1.0])  # (Sf)_0 = 0 exactly
    g = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    val = psi_second(model, f, g)
    assert math.isfinite(val)
    H = hessian_matrix(model, f)
    assert np.all(np.isfinite(H))
