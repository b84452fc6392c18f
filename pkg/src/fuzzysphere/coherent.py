"""Coherent states, uncertainty relations and dispersion minimization.

The strong families come with exact resolutions of the identity; because
every integrand built from the truncated representation is a trigonometric
polynomial of bounded degree, uniform azimuthal grids of 4*lam+3 points and
Gauss-Legendre rules with 4*lam+4 nodes in cos(theta) integrate them exactly,
so the identity checks are rounding-level assertions rather than convergence
studies.  The weak families are orbits of the dispersion minimizer, found by
a self-consistent-field iteration on H_eff(b) = x^2 - 2 b.x.

All functions accept any space exposing x_ops, L_ops, l2_op and x_squared
(the fuzzy circle, the fuzzy sphere and the Madore comparator all do).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lierep import EulerAngles, rotation_operator, rotation_operator_circle
from .linop import Operator, State, hermitian_eig
from .report import CheckRecord, Report

__all__ = ["DispersionReport", "SCSFamily", "dispersion",
           "check_heisenberg_circle", "strong_scs_circle",
           "verify_identity_resolution_circle", "spin_cs",
           "strong_scs_sphere_phi", "random_omega_weights",
           "verify_identity_resolution_sphere", "minimize_dispersion",
           "weak_scs_orbit", "verify_weak_orbit"]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DispersionReport:
    """Position and angular-momentum moments of a single state."""

    x_mean: np.ndarray
    x2_mean: float
    x_var: float                # (Delta x)^2
    L_mean: np.ndarray
    l2_mean: float
    L_var: float                # (Delta L)^2


@dataclass(frozen=True)
class SCSFamily:
    """A labelled family of coherent states on one space."""

    space: object
    kind: str            # strong-circle | spin | strong-sphere | weak
    parameters: dict
    members: list


def dispersion(space, psi: State) -> DispersionReport:
    """Moments of psi; the dispersions are the O(D)-invariant variances."""
    x_mean = np.array([np.real(op.expect(psi)) for op in space.x_ops])
    x2 = float(np.real(space.x_squared.expect(psi)))
    L_mean = np.array([np.real(op.expect(psi)) for op in space.L_ops])
    l2 = float(np.real(space.l2_op.expect(psi)))
    return DispersionReport(x_mean=x_mean, x2_mean=x2,
                            x_var=x2 - float(x_mean @ x_mean),
                            L_mean=L_mean,
                            l2_mean=l2, L_var=l2 - float(L_mean @ L_mean))


def _slack_record(tag, lhs, rhs, lam, tol) -> CheckRecord:
    slack = lhs - rhs
    return CheckRecord(tag=tag, lam=lam, value=float(slack), bound=0.0,
                       residual=float(max(0.0, -slack)),
                       passed=bool(slack >= -tol))


def check_heisenberg_circle(c, psi: State, tol: float = 1e-12) -> Report:
    """The three covariant uncertainty inequalities on the fuzzy circle."""
    rep = Report()
    d = dispersion(c, psi)
    dL = np.sqrt(max(d.L_var, 0.0))
    ex1, ex2 = d.x_mean
    var1 = np.real(Operator(c.x1.mat @ c.x1.mat).expect(psi)) - ex1 ** 2
    var2 = np.real(Operator(c.x2.mat @ c.x2.mat).expect(psi)) - ex2 ** 2
    rep.add(_slack_record("HURS^1/Lx1", dL * np.sqrt(max(var1, 0.0)),
                          abs(ex2) / 2.0, c.lam, tol))
    rep.add(_slack_record("HURS^1/Lx2", dL * np.sqrt(max(var2, 0.0)),
                          abs(ex1) / 2.0, c.lam, tol))
    rep.add(_slack_record("HURS^1/product", d.L_var * d.x_var,
                          float(d.x_mean @ d.x_mean) / 4.0, c.lam, tol))
    return rep


def strong_scs_circle(c, beta: np.ndarray, alpha: float) -> State:
    """omega_alpha^beta = sum_n e^{i(alpha n + beta_n)} psi_n / sqrt(2L+1);
    beta is indexed like the basis (n descending from lam to -lam)."""
    beta = np.asarray(beta, dtype=float)
    if beta.size != c.dim:
        raise ValueError(f"beta must have {c.dim} entries, got {beta.size}")
    coeffs = np.exp(1j * (alpha * c.labels + beta)) / np.sqrt(c.dim)
    return State(coeffs)


def _gram(states: np.ndarray, weights) -> np.ndarray:
    """Weighted sum of projectors onto the columns of `states`."""
    w = np.asarray(weights, dtype=float)
    return (states * w) @ states.conj().T


def verify_identity_resolution_circle(c, beta=None, npoints: int | None = None,
                                      tol: float = 1e-10) -> Report:
    """Quadrature check of (2L+1)/(2pi) int dalpha P_alpha^beta = id."""
    if beta is None:
        beta = np.zeros(c.dim)
    if npoints is None:
        npoints = 4 * c.lam + 3
    alphas = TWO_PI * np.arange(npoints) / npoints
    states = np.column_stack([strong_scs_circle(c, beta, a).coeffs
                              for a in alphas])
    total = c.dim / npoints * _gram(states, np.ones(npoints))
    resid = float(np.linalg.norm(total - np.eye(c.dim)))
    rep = Report()
    rep.add_residual("IdResolS^1_L", resid, tol, lam=c.lam)
    return rep


def spin_cs(s, l: int, g: EulerAngles) -> State:
    """Rotated highest-weight state pi(g) psi_l^l."""
    if not 0 <= l <= s.lam:
        raise ValueError(f"l={l} out of range 0..{s.lam}")
    psi = State.basis(s.dim, s.index(l, l))
    return State(rotation_operator(s, g) @ psi)


def strong_scs_sphere_phi(s, beta: np.ndarray, g: EulerAngles) -> State:
    """phi_g^beta: the m=0 superposition with sqrt(2l+1) weights, rotated."""
    beta = np.asarray(beta, dtype=float)
    if beta.size != s.lam + 1:
        raise ValueError(f"beta must have {s.lam + 1} entries, got {beta.size}")
    v = np.zeros(s.dim, dtype=complex)
    for l in range(s.lam + 1):
        v[s.index(l, 0)] = np.exp(1j * beta[l]) * np.sqrt(2 * l + 1) / (s.lam + 1)
    return State(rotation_operator(s, g) @ State(v))


def random_omega_weights(s, rng) -> np.ndarray:
    """Random seed vector omega with the per-level norms (2l+1)/(lam+1)^2
    required for a strong family."""
    v = np.zeros(s.dim, dtype=complex)
    for l in range(s.lam + 1):
        block = rng.normal(size=2 * l + 1) + 1j * rng.normal(size=2 * l + 1)
        block *= np.sqrt(2 * l + 1) / ((s.lam + 1) * np.linalg.norm(block))
        v[s.index(l, -l):s.index(l, l) + 1] = block
    return v


def _polar_nodes(lam: int):
    """Gauss-Legendre nodes/weights in cos(theta), mapped to theta."""
    nodes, weights = np.polynomial.legendre.leggauss(4 * lam + 4)
    return np.arccos(nodes), weights


def verify_identity_resolution_sphere(s, family: str, omega=None, beta=None,
                                      tol: float = 1e-8) -> Report:
    """Quadrature check of the three strong-family identity resolutions.

    family "spin": sum_l (2l+1)/(4pi) over S^2 of |pi(g) psi_l^l><...|
    (the third Euler angle only contributes a phase, so its integral is an
    exact factor 2pi already absorbed in the weight).
    family "omega": (lam+1)^2/(8pi^2) over SO(3) with a seed omega obeying
    the per-level weight condition.
    family "phi": (lam+1)^2/(4pi) over S^2 with the m=0 seed phi^beta.
    """
    rep = Report()
    lam, dim = s.lam, s.dim
    n_az = 4 * lam + 3
    phis = TWO_PI * np.arange(n_az) / n_az
    thetas, w_th = _polar_nodes(lam)
    m_of = np.concatenate([np.arange(-l, l + 1) for l in range(lam + 1)])
    az_phases = np.exp(1j * np.outer(m_of, phis))    # columns: e^{i phi L_3}
    l2_vals, l2_vecs = hermitian_eig(s.L2)

    def rot_theta(theta):
        return (l2_vecs * np.exp(1j * theta * l2_vals)) @ l2_vecs.conj().T

    # seed columns; the third Euler angle is either a pure phase on the seed
    # (spin and phi families) or sampled on its own uniform grid (omega)
    if family == "spin":
        seeds = np.zeros((dim, lam + 1), dtype=complex)
        for l in range(lam + 1):
            seeds[s.index(l, l), l] = np.sqrt(2 * l + 1)
        norm = TWO_PI / n_az / (4.0 * np.pi)
        tag = "ResolIdS^2_L"
    elif family == "omega":
        if omega is None:
            raise ValueError("the omega family needs a seed vector")
        omega = np.asarray(omega, dtype=complex)
        defects = {}
        for l in range(lam + 1):
            block = omega[s.index(l, -l):s.index(l, l) + 1]
            target = (2 * l + 1) / (lam + 1) ** 2
            defect = abs(float(np.vdot(block, block).real) - target)
            if defect > 1e-12:
                defects[l] = defect
        if defects:
            raise ValueError(f"weight condition violated, per-l defect: {defects}")
        seeds = az_phases * omega[:, None]           # e^{i psi L_3} omega
        norm = (lam + 1) ** 2 * (TWO_PI / n_az) ** 2 / (8.0 * np.pi ** 2)
        tag = "ResolIdS^2_Lomegagen"
    elif family == "phi":
        if beta is None:
            beta = np.zeros(lam + 1)
        beta = np.asarray(beta, dtype=float)
        v = np.zeros(dim, dtype=complex)
        for l in range(lam + 1):
            v[s.index(l, 0)] = np.exp(1j * beta[l]) * np.sqrt(2 * l + 1) / (lam + 1)
        seeds = v[:, None]
        norm = (lam + 1) ** 2 * (TWO_PI / n_az) / (4.0 * np.pi)
        tag = "ResolIdS^2_Lphi"
    else:
        raise ValueError(f"unknown family {family!r}")

    total = np.zeros((dim, dim), dtype=complex)
    for theta, wt in zip(thetas, w_th):
        mid = rot_theta(theta) @ seeds
        states = (az_phases[:, :, None] * mid[:, None, :]).reshape(dim, -1)
        total += wt * (states @ states.conj().T)
    total *= norm

    rep.add_residual(tag, float(np.linalg.norm(total - np.eye(dim))), tol, lam=lam)
    return rep


def _scf(space, start: np.ndarray, tol: float, max_iter: int):
    """Self-consistent minimization of the dispersion from one start."""
    xs = [op.mat for op in space.x_ops]
    x2 = space.x_squared.mat
    chi = start / np.linalg.norm(start)
    prev_var = np.inf
    for _ in range(max_iter):
        b = np.array([np.real(chi.conj() @ (x @ chi)) for x in xs])
        h = x2 - 2.0 * sum(bi * xi for bi, xi in zip(b, xs))
        var = float(np.real(chi.conj() @ (x2 @ chi)) - b @ b)
        # stop only once chi is stationary, not merely once the dispersion
        # has stalled (the variance converges faster than the eigenvector)
        hchi = h @ chi
        energy = float(np.real(chi.conj() @ hchi))
        stat = np.linalg.norm(hchi - energy * chi)
        if abs(var - prev_var) < tol and stat <= 1e-12 * (1.0 + abs(energy)):
            return chi, var, True
        prev_var = var
        vals, vecs = np.linalg.eigh(h)
        # break ground-eigenspace ties toward the previous iterate
        scale = 1.0 + abs(vals[0])
        deg = np.nonzero(vals - vals[0] <= 1e-12 * scale)[0]
        if deg.size > 1:
            sub = vecs[:, deg]
            proj = sub @ (sub.conj().T @ chi)
            nrm = np.linalg.norm(proj)
            chi_new = proj / nrm if nrm > 1e-8 else vecs[:, 0]
        else:
            chi_new = vecs[:, 0]
        chi = chi_new
    return chi, prev_var, False


def _gauge_fix(space, chi: np.ndarray) -> np.ndarray:
    """Rotate the minimizer so <x> points along the first axis (circle) or
    the third axis (sphere)."""
    xs = [op.mat for op in space.x_ops]
    ex = np.array([np.real(chi.conj() @ (x @ chi)) for x in xs])
    if len(xs) == 2:
        # exp(i alpha L) sends <x_+> to e^{-i alpha} <x_+>, so rotating by the
        # phase of <x_+> leaves <x_1> = |<x>|, <x_2> = 0
        alpha = float(np.arctan2(ex[1], ex[0]))
        u = rotation_operator_circle(space, alpha).mat
        return u @ chi
    a = float(np.hypot(ex[0], ex[1]))
    if a < 1e-14 and ex[2] >= 0:
        return chi
    theta = float(np.arctan2(a, ex[2]))
    psi = float(np.arctan2(ex[1], ex[0]))
    u = rotation_operator(space, EulerAngles(0.0, theta, psi)).mat
    return u @ chi


def minimize_dispersion(space, tol: float = 1e-13, max_iter: int = 500,
                        restarts: int = 5, seed: int = 0):
    """Minimize (Delta x)^2 over unit states.

    Fixed-point iteration chi <- ground eigenvector of x^2 - 2<x>.x, started
    from the top eigenvector of the last coordinate, plus seeded random
    restarts; the winner is gauge-fixed so <x> lies on the reference axis.
    Returns (state, minimum value).
    """
    xs = [op.mat for op in space.x_ops]
    dim = xs[0].shape[0]
    _, vecs = hermitian_eig(space.x_ops[0] if len(xs) == 2 else space.x_ops[2])
    starts = [vecs[:, 0]]
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        starts.append(v)
    best = None
    for start in starts:
        chi, var, _ = _scf(space, np.asarray(start, dtype=complex), tol, max_iter)
        if best is None or var < best[1] - 1e-13:
            best = (chi, var)
    chi = _gauge_fix(space, best[0])
    var = dispersion(space, State.normalized(chi)).x_var
    return State.normalized(chi), float(var)


def minimizer_certificate(space, chi: State) -> float:
    """Stationarity residual: distance of chi from the ground eigenspace of
    H_eff at its own mean position."""
    xs = [op.mat for op in space.x_ops]
    b = np.array([np.real(op.expect(chi)) for op in space.x_ops])
    h = space.x_squared.mat - 2.0 * sum(bi * xi for bi, xi in zip(b, xs))
    vals, _ = np.linalg.eigh(h)
    v = chi.coeffs
    return float(np.linalg.norm(h @ v - vals[0] * v))


def weak_scs_orbit(space, chi: State, grid) -> SCSFamily:
    """Orbit {pi(g) chi} of the gauge-fixed minimizer over a grid of group
    elements (angles alpha for the circle, EulerAngles for the sphere)."""
    members = []
    for g in grid:
        if isinstance(g, EulerAngles):
            u = rotation_operator(space, g)
        else:
            u = rotation_operator_circle(space, float(g))
        members.append(State(u @ chi))
    return SCSFamily(space=space, kind="weak",
                     parameters={"grid": list(grid)}, members=members)


def verify_weak_orbit(space, chi: State, grid, tol_var: float = 1e-10,
                      tol_dir: float = 1e-9) -> Report:
    """On every orbit member the dispersion is unchanged and <x> points along
    the classically rotated reference direction."""
    from .lierep import classical_rotation, classical_rotation_2d
    rep = Report()
    base = dispersion(space, chi)
    r = np.linalg.norm(base.x_mean)
    fam = weak_scs_orbit(space, chi, grid)
    worst_var, worst_dir = 0.0, 0.0
    for g, member in zip(grid, fam.members):
        d = dispersion(space, member)
        worst_var = max(worst_var, abs(d.x_var - base.x_var))
        if isinstance(g, EulerAngles):
            u = classical_rotation(g) @ np.array([0.0, 0.0, 1.0])
        else:
            u = classical_rotation_2d(float(g)) @ np.array([1.0, 0.0])
        worst_dir = max(worst_dir, float(np.linalg.norm(d.x_mean - r * u)))
    lam = getattr(space, "lam", None)
    rep.add_residual("weak-orbit/dispersion", worst_var, tol_var, lam=lam)
    rep.add_residual("weak-orbit/direction", worst_dir, tol_dir, lam=lam)
    return rep
