"""The O(2)-covariant fuzzy circle.

The Hilbert space at truncation lam is spanned by angular-momentum
eigenvectors psi_n, n = lam, lam-1, ..., -lam (stored in that descending
order, so the coordinate matrix of x1 is read off directly).  The ladder
coordinates act as

    x_+ psi_n = sqrt(1 + n(n+1)/k) psi_{n+1},   x_- = x_+^dag,

which makes every algebraic relation below an exact identity of the
construction; the sharpness parameter obeys k >= lam^2 (lam+1)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linop import Operator, frobenius_residual
from .report import Report
from .spectral import TridiagSpec

__all__ = ["FuzzyCircle", "build_circle", "verify_circle_relations",
           "coordinate_matrix", "min_sharpness", "ladder_coefficient"]


def min_sharpness(lam: int) -> float:
    return float(lam * lam * (lam + 1) * (lam + 1))


def ladder_coefficient(n: int, k: float) -> float:
    """Coefficient of psi_{n+1} in x_+ psi_n."""
    return float(np.sqrt(1.0 + n * (n + 1) / k))


@dataclass(frozen=True)
class FuzzyCircle:
    lam: int
    k: float
    labels: np.ndarray          # angular momentum labels, descending
    L: Operator
    x_plus: Operator
    x_minus: Operator
    x1: Operator
    x2: Operator
    x_squared: Operator
    projectors: dict            # n -> rank-1 projector onto psi_n

    @property
    def dim(self) -> int:
        return 2 * self.lam + 1

    def index(self, n: int) -> int:
        """Basis index of psi_n."""
        if abs(n) > self.lam:
            raise ValueError(f"label n={n} out of range for lam={self.lam}")
        return self.lam - n

    # uniform space protocol used by the coherent-state machinery
    @property
    def x_ops(self):
        return (self.x1, self.x2)

    @property
    def L_ops(self):
        return (self.L,)

    @property
    def l2_op(self) -> Operator:
        return Operator(self.L.mat @ self.L.mat, label="L^2")

    @property
    def rotation_generator(self) -> Operator:
        return self.L


def build_circle(lam: int, k: float | None = None) -> FuzzyCircle:
    """Construct the fuzzy circle at truncation lam (default sharpness is
    the minimal admissible one, which maximizes the corrections)."""
    if lam < 1:
        raise ValueError(f"lam must be >= 1, got {lam}")
    kmin = min_sharpness(lam)
    if k is None:
        k = kmin
    k = float(k)
    if k < kmin * (1 - 1e-12):
        raise ValueError(f"k={k} below the admissible minimum {kmin}")

    dim = 2 * lam + 1
    labels = np.arange(lam, -lam - 1, -1)
    L = Operator(np.diag(labels.astype(complex)), label="L")

    xp = np.zeros((dim, dim), dtype=complex)
    for n in range(-lam, lam):
        # psi_n sits at index lam-n, psi_{n+1} one row above
        xp[lam - n - 1, lam - n] = ladder_coefficient(n, k)
    x_plus = Operator(xp, label="x_+")
    x_minus = Operator(xp.conj().T, label="x_-")
    x1 = Operator((xp + xp.conj().T) / 2.0, label="x_1")
    x2 = Operator((xp - xp.conj().T) / 2.0j, label="x_2")
    x_squared = Operator((xp @ xp.conj().T + xp.conj().T @ xp) / 2.0, label="x^2")

    projectors = {}
    for n in range(-lam, lam + 1):
        p = np.zeros((dim, dim), dtype=complex)
        p[lam - n, lam - n] = 1.0
        projectors[n] = Operator(p, label=f"P_{n}")

    return FuzzyCircle(lam=lam, k=k, labels=labels, L=L, x_plus=x_plus,
                       x_minus=x_minus, x1=x1, x2=x2, x_squared=x_squared,
                       projectors=projectors)


def verify_circle_relations(c: FuzzyCircle, tol: float = 1e-10) -> Report:
    """Residuals of the defining relations; pass iff all are <= tol."""
    rep = Report()
    lam, k, dim = c.lam, c.k, c.dim
    L, xp, xm = c.L.mat, c.x_plus.mat, c.x_minus.mat
    eye = np.eye(dim)

    rep.add_residual("commrelD=2'/[L,x+]", frobenius_residual(L @ xp - xp @ L, xp),
                     tol, lam=lam)
    rep.add_residual("commrelD=2'/[L,x-]", frobenius_residual(L @ xm - xm @ L, -xm),
                     tol, lam=lam)
    rep.add_residual("commrelD=2'/adjoint", frobenius_residual(xp.conj().T, xm),
                     tol, lam=lam)
    rep.add_residual("commrelD=2'/L-herm", frobenius_residual(L.conj().T, L),
                     tol, lam=lam)

    edge = 1.0 + lam * (lam + 1) / k
    p_top = c.projectors[lam].mat
    p_bot = c.projectors[-lam].mat
    rhs_comm = -2.0 * L / k + edge * (p_top - p_bot)
    rep.add_residual("y+y-", frobenius_residual(xp @ xm - xm @ xp, rhs_comm),
                     tol, lam=lam)

    rhs_r2 = eye + L @ L / k - edge * (p_top + p_bot) / 2.0
    rep.add_residual("defR2D=2", frobenius_residual(c.x_squared.mat, rhs_r2),
                     tol, lam=lam)

    poly = eye.astype(complex)
    for n in range(-lam, lam + 1):
        poly = poly @ (L - n * eye)
    rep.add_residual("commrelD=2/L-poly", frobenius_residual(poly, np.zeros_like(poly)),
                     tol, lam=lam)
    nil = np.linalg.matrix_power(xp, dim)
    rep.add_residual("commrelD=2/nilpotent", frobenius_residual(nil, np.zeros_like(nil)),
                     tol, lam=lam)
    return rep


def coordinate_matrix(c: FuzzyCircle, toeplitz_limit: bool = False) -> TridiagSpec:
    """The symmetric tridiagonal matrix of x1 in the descending basis
    {psi_lam, ..., psi_-lam}.  With toeplitz_limit=True returns the analytic
    k->infinity matrix (all off-diagonals 1/2)."""
    if toeplitz_limit:
        off = np.full(c.dim - 1, 0.5)
    else:
        # row i couples psi_{lam-i} and psi_{lam-i-1}
        ns = np.array([c.lam - i - 1 for i in range(c.dim - 1)])
        off = np.array([0.5 * ladder_coefficient(n, c.k) for n in ns])
    return TridiagSpec(off)
