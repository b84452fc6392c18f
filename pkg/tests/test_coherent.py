"""Coherent-state families, uncertainty relations, dispersion minimizer."""

import numpy as np
import pytest

from fuzzysphere.circle import build_circle
from fuzzysphere.coherent import (check_heisenberg_circle, dispersion,
                                  minimize_dispersion, minimizer_certificate,
                                  random_omega_weights, spin_cs,
                                  strong_scs_circle, strong_scs_sphere_phi,
                                  verify_identity_resolution_circle,
                                  verify_identity_resolution_sphere,
                                  verify_weak_orbit, weak_scs_orbit)
from fuzzysphere.lierep import EulerAngles
from fuzzysphere.linop import State
from fuzzysphere.sphere import build_madore, build_sphere, madore_min_dispersion


def test_basis_states_saturate_circle_hur():
    # on psi_n both sides of every inequality vanish: <x> = 0 and Delta L = 0
    c = build_circle(4)
    for n in range(-4, 5):
        psi = State.basis(c.dim, c.index(n))
        d = dispersion(c, psi)
        assert d.L_var == pytest.approx(0.0, abs=1e-14)
        assert np.allclose(d.x_mean, 0.0, atol=1e-14)
        rep = check_heisenberg_circle(c, psi)
        assert rep.passed
        for rec in rep.checks:
            assert abs(rec.value) <= 1e-13     # saturated, not just satisfied


def test_random_states_obey_circle_hur():
    c = build_circle(5)
    rng = np.random.default_rng(11)
    for _ in range(50):
        chi = State.normalized(rng.normal(size=c.dim)
                               + 1j * rng.normal(size=c.dim))
        assert check_heisenberg_circle(c, chi).passed


def test_strong_circle_family_moments():
    lam = 6
    c = build_circle(lam)
    rng = np.random.default_rng(0)
    beta = rng.uniform(0, 2 * np.pi, size=c.dim)
    d = dispersion(c, strong_scs_circle(c, beta, 0.7))
    assert d.L_mean[0] == pytest.approx(0.0, abs=1e-13)
    assert d.l2_mean == pytest.approx(lam * (lam + 1) / 3, abs=1e-12)


def test_strong_circle_dispersion_bound():
    # (Delta x)^2 of a strong state stays below (1/2 + 1/(3 lam))/(lam + 1)
    for lam in (2, 5, 9):
        c = build_circle(lam)
        d = dispersion(c, strong_scs_circle(c, np.zeros(c.dim), 0.0))
        assert d.x_var < (0.5 + 1 / (3 * lam)) / (lam + 1)


def test_circle_identity_resolution():
    rng = np.random.default_rng(3)
    for lam in (1, 3, 7):
        c = build_circle(lam)
        beta = rng.uniform(0, 2 * np.pi, size=c.dim)
        assert verify_identity_resolution_circle(c, beta).passed


def test_circle_resolution_needs_enough_points():
    # 2 points alias: the quadrature misses the off-diagonal cancellations
    c = build_circle(2)
    rep = verify_identity_resolution_circle(c, npoints=2)
    assert not rep.passed


def test_strong_circle_beta_length_checked():
    c = build_circle(2)
    with pytest.raises(ValueError):
        strong_scs_circle(c, np.zeros(3), 0.0)


def test_spin_cs_saturates_sphere_ur():
    # pi(g) psi_l^l has (Delta L)^2 = l and <x3> driven by the weight c_{l}
    s = build_sphere(4)
    for l in (1, 2, 4):
        d = dispersion(s, spin_cs(s, l, EulerAngles(0.4, 1.0, 2.2)))
        assert d.L_var == pytest.approx(l, abs=1e-10)
        assert np.linalg.norm(d.L_mean) == pytest.approx(l, abs=1e-10)
    with pytest.raises(ValueError):
        spin_cs(s, 5, EulerAngles(0, 0, 0))


def test_phi_family_moments():
    lam = 5
    s = build_sphere(lam)
    rng = np.random.default_rng(1)
    chi = strong_scs_sphere_phi(s, rng.uniform(0, 2 * np.pi, lam + 1),
                                EulerAngles(0.3, 0.9, 1.7))
    d = dispersion(s, chi)
    assert d.l2_mean == pytest.approx(lam * (lam + 2) / 2, abs=1e-10)
    assert np.allclose(d.L_mean, 0.0, atol=1e-10)
    assert np.linalg.norm(d.x_mean) < 1 / (lam + 1)


@pytest.mark.parametrize("lam", [1, 2, 4])
def test_sphere_identity_resolutions(lam):
    s = build_sphere(lam)
    rng = np.random.default_rng(lam)
    assert verify_identity_resolution_sphere(s, "spin").passed
    omega = random_omega_weights(s, rng)
    assert verify_identity_resolution_sphere(s, "omega", omega=omega).passed
    beta = rng.uniform(0, 2 * np.pi, lam + 1)
    assert verify_identity_resolution_sphere(s, "phi", beta=beta).passed


def test_omega_weight_condition_enforced():
    s = build_sphere(2)
    omega = np.zeros(s.dim, dtype=complex)
    omega[s.index(0, 0)] = 1.0             # all weight at l=0
    with pytest.raises(ValueError, match="per-l defect"):
        verify_identity_resolution_sphere(s, "omega", omega=omega)
    with pytest.raises(ValueError):
        verify_identity_resolution_sphere(s, "nope")


def test_minimizer_circle():
    for lam in (1, 3, 6, 12):
        c = build_circle(lam)
        chi, var = minimize_dispersion(c)
        assert var < 3.5 / (lam + 1) ** 2
        assert minimizer_certificate(c, chi) <= 1e-10
        d = dispersion(c, chi)
        assert d.x_mean[1] == pytest.approx(0.0, abs=1e-10)   # gauge fixed
        assert d.x_mean[0] > 0


def test_minimizer_sphere():
    for lam in (1, 3, 6):
        s = build_sphere(lam)
        chi, var = minimize_dispersion(s)
        assert var < 11 / (lam + 1) ** 2
        assert minimizer_certificate(s, chi) <= 1e-10
        d = dispersion(s, chi)
        # gauge fixed: <x> along e3, and the minimizer sits in the L3 = 0 slice
        assert np.hypot(d.x_mean[0], d.x_mean[1]) <= 1e-10
        assert d.x_mean[2] > 0
        assert np.linalg.norm(s.L3 @ chi) <= 1e-10


def test_minimizer_scaling_slope():
    lams = np.array([4, 8, 16])
    mins = np.array([minimize_dispersion(build_circle(int(l)))[1]
                     for l in lams])
    assert np.all(np.diff(mins) < 0)
    slope = np.polyfit(np.log(lams + 1.0), np.log(mins), 1)[0]
    assert -2.3 < slope < -1.7


def test_minimizer_close_to_top_x_eigenvector():
    # the minimizer converges toward the top eigenvector of x3
    deficits = []
    for lam in (3, 9):
        s = build_sphere(lam)
        chi, _ = minimize_dispersion(s)
        vals, vecs = np.linalg.eigh(s.x3.mat)
        deficits.append(1.0 - abs(np.vdot(vecs[:, -1], chi.coeffs)) ** 2)
    assert deficits[1] < deficits[0] < 0.5


def test_madore_min_matches_closed_form():
    for l in (0.5, 1.0, 3.5, 8.0):
        got = madore_min_dispersion(build_madore(l))
        assert got == pytest.approx(1 / (l + 1), abs=1e-9)


def test_weak_orbit_circle():
    c = build_circle(4)
    chi, _ = minimize_dispersion(c)
    grid = np.linspace(0, 2 * np.pi, 7, endpoint=False)
    assert verify_weak_orbit(c, chi, grid).passed
    fam = weak_scs_orbit(c, chi, grid)
    assert len(fam.members) == 7 and fam.kind == "weak"


def test_weak_orbit_sphere():
    s = build_sphere(3)
    chi, _ = minimize_dispersion(s)
    rng = np.random.default_rng(9)
    grid = [EulerAngles(rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi),
                        rng.uniform(0, 2 * np.pi)) for _ in range(6)]
    assert verify_weak_orbit(s, chi, grid).passed


def test_dispersion_rotation_invariant():
    s = build_sphere(2)
    rng = np.random.default_rng(21)
    from fuzzysphere.lierep import rotation_operator
    for _ in range(10):
        chi = State.normalized(rng.normal(size=s.dim)
                               + 1j * rng.normal(size=s.dim))
        g = EulerAngles(rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi),
                        rng.uniform(0, 2 * np.pi))
        rot = State(rotation_operator(s, g) @ chi)
        assert dispersion(s, rot).x_var == pytest.approx(
            dispersion(s, chi).x_var, abs=1e-11)
