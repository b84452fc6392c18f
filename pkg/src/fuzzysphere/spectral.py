"""Spectral toolkit for hermitian tridiagonal matrices with zero diagonal.

Covers the three-term characteristic-polynomial recurrence, Sturm-count
bisection for all eigenvalues, spectrum symmetry / interlacing / simplicity
checks, and the combined theorem verifier for the coordinate matrices of the
fuzzy circle and sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _sturm
from .report import CheckRecord, Report

__all__ = [
    "TridiagSpec",
    "Spectrum",
    "charpoly_eval",
    "eig_bisection",
    "toeplitz_spectrum",
    "check_spectrum_symmetry",
    "check_interlacing",
    "spectrum_invariance_under_phases",
    "circle_diag_report",
    "sphere_diag_report",
    "verify_diag_theorems",
]

DEFAULT_TOL = 1e-12
SIMPLE_GAP_FACTOR = 10.0


@dataclass(frozen=True)
class TridiagSpec:
    """Hermitian tridiagonal matrix with identically zero diagonal,
    described by its superdiagonal entries a_1 ... a_{n-1}."""

    offdiag: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.offdiag, dtype=complex))
        a.setflags(write=False)
        object.__setattr__(self, "offdiag", a)

    @property
    def n(self) -> int:
        return self.offdiag.size + 1

    def abs2(self) -> np.ndarray:
        return np.abs(self.offdiag) ** 2

    def dense(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=complex)
        idx = np.arange(self.n - 1)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag.conj()
        return m

    def gershgorin_radius(self) -> float:
        return 2.0 * float(np.abs(self.offdiag).max(initial=0.0))


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues in descending order with near-degeneracy flags."""

    values: np.ndarray
    degenerate: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=float))
        d = np.atleast_1d(np.asarray(self.degenerate, dtype=bool))
        if v.size != d.size:
            raise ValueError("values and degeneracy flags must match in length")
        if np.any(np.diff(v) > 0):
            raise ValueError("spectrum values must be descending")
        v.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "degenerate", d)

    @property
    def n(self) -> int:
        return self.values.size

    @classmethod
    def from_values(cls, values, gap_tol: float = 0.0) -> "Spectrum":
        v = np.sort(np.atleast_1d(np.asarray(values, dtype=float)))[::-1]
        flags = np.zeros(v.size, dtype=bool)
        if v.size > 1 and gap_tol > 0:
            close = -np.diff(v) <= gap_tol  # v is descending
            flags[:-1] |= close
            flags[1:] |= close
        return cls(v, flags)


def charpoly_eval(t: TridiagSpec, alpha: float):
    """Evaluate the characteristic polynomial recurrence at alpha.

    Returns (value, sign_changes) where sign_changes counts the eigenvalues
    strictly greater than alpha (Sturm count).  The value is computed with
    per-step rescaling and saturates to +-inf if it overflows.
    """
    value, changes = _sturm.charpoly_value_and_count(t.abs2(), float(alpha))
    return float(value), int(changes)


def eig_bisection(t: TridiagSpec, tol: float = 1e-12) -> Spectrum:
    """All eigenvalues by Sturm-count bisection, to absolute accuracy tol."""
    if tol <= 0:
        raise ValueError("bisection tolerance must be positive")
    radius = t.gershgorin_radius() + tol
    values = _sturm.bisect_all(t.abs2(), radius, tol)
    return Spectrum.from_values(values, gap_tol=SIMPLE_GAP_FACTOR * tol)


def toeplitz_spectrum(n: int) -> np.ndarray:
    """Closed-form descending spectrum cos(h*pi/(n+1)) of the constant-1/2
    off-diagonal tridiagonal of size n."""
    h = np.arange(1, n + 1)
    return np.cos(h * np.pi / (n + 1))


def check_spectrum_symmetry(s: Spectrum, tol: float = 1e-10) -> bool:
    """True iff the eigenvalue multiset is invariant under negation."""
    v = s.values
    return bool(np.max(np.abs(v + v[::-1])) <= tol)


def check_interlacing(inner: Spectrum, outer: Spectrum) -> bool:
    """Strict interlacing of an n-spectrum between an (n+1)-spectrum."""
    if outer.n != inner.n + 1:
        raise ValueError(
            f"outer spectrum must have exactly one more eigenvalue "
            f"(got {outer.n} vs {inner.n})")
    a, b = outer.values, inner.values
    return bool(np.all(a[:-1] > b) and np.all(b > a[1:]))


def spectrum_invariance_under_phases(t: TridiagSpec, rng=None,
                                     tol: float = 1e-10) -> bool:
    """True iff the spectrum is unchanged when every off-diagonal entry is
    replaced by its modulus, and by a random rephasing of it."""
    if rng is None:
        rng = np.random.default_rng(0)
    bis_tol = min(tol, 1e-12)
    base = eig_bisection(t, bis_tol).values
    mod = eig_bisection(TridiagSpec(np.abs(t.offdiag)), bis_tol).values
    phases = np.exp(2j * np.pi * rng.random(t.n - 1))
    reph = eig_bisection(TridiagSpec(np.abs(t.offdiag) * phases), bis_tol).values
    return bool(np.max(np.abs(base - mod)) <= tol
                and np.max(np.abs(base - reph)) <= tol)


def circle_diag_report(lam_min: int, lam_max: int, k=None,
                       tol: float = 1e-10) -> Report:
    """Spectrum symmetry, interlacing of the positive halves, top-eigenvalue
    bound and simplicity for the circle coordinate matrices."""
    from .circle import build_circle, coordinate_matrix

    report = Report()
    bis_tol = min(tol, 1e-12)
    circle_spectra = {}
    for lam in range(lam_min, lam_max + 2):
        c = build_circle(lam, k)
        circle_spectra[lam] = eig_bisection(coordinate_matrix(c), bis_tol)
    for lam in range(lam_min, lam_max + 1):
        s_now, s_next = circle_spectra[lam], circle_spectra[lam + 1]
        sym = check_spectrum_symmetry(s_now, tol)
        report.add_residual("diag-circle/symmetry", 0.0 if sym else 1.0, 0.5, lam=lam)
        # the theorem interlaces the positive halves (sizes differ by 2 overall)
        top_in = Spectrum.from_values(s_now.values[:lam])
        top_out = Spectrum.from_values(s_next.values[:lam + 1])
        inter = check_interlacing(top_in, top_out)
        report.add_residual("diag-circle/interlacing", 0.0 if inter else 1.0,
                            0.5, lam=lam)
        bound = 1.0 - np.pi ** 2 / (8.0 * (lam + 1) ** 2)
        a1 = s_now.values[0]
        report.add(CheckRecord(tag="diag-circle/alpha1-bound", lam=lam,
                               value=float(a1), bound=float(bound),
                               passed=bool(a1 >= bound)))
        gaps = -np.diff(s_now.values)
        simple = bool(gaps.min(initial=np.inf) > SIMPLE_GAP_FACTOR * bis_tol)
        report.add_residual("diag-circle/simple", 0.0 if simple else 1.0, 0.5, lam=lam)
    return report


def sphere_diag_report(lam_min: int, lam_max: int, k=None,
                       tol: float = 1e-10) -> Report:
    """Per-block symmetry, interlacing, simplicity, m-monotonicity and the
    top-eigenvalue bound for the sphere coordinate matrices."""
    from .sphere import build_sphere, coordinate_blocks

    report = Report()
    bis_tol = min(tol, 1e-12)
    sphere_blocks = {}
    for lam in range(lam_min, lam_max + 2):
        s = build_sphere(lam, k)
        sphere_blocks[lam] = {
            m: eig_bisection(blk, bis_tol)
            for m, blk in coordinate_blocks(s).items()
        }
    for lam in range(lam_min, lam_max + 1):
        alpha1 = []
        for m in range(0, lam + 1):
            s_now = sphere_blocks[lam][m]
            s_next = sphere_blocks[lam + 1][m]
            alpha1.append(s_now.values[0])
            sym = check_spectrum_symmetry(s_now, tol)
            report.add_residual("diag-sphere/symmetry", 0.0 if sym else 1.0,
                                0.5, lam=lam, m=m)
            inter = check_interlacing(s_now, s_next)
            report.add_residual("diag-sphere/interlacing", 0.0 if inter else 1.0,
                                0.5, lam=lam, m=m)
            if s_now.n > 1:
                gaps = -np.diff(s_now.values)
                simple = bool(gaps.min() > SIMPLE_GAP_FACTOR * bis_tol)
                report.add_residual("diag-sphere/simple", 0.0 if simple else 1.0,
                                    0.5, lam=lam, m=m)
        mono = bool(np.all(np.diff(alpha1) < 0))
        report.add_residual("diag-sphere/alpha1-monotone", 0.0 if mono else 1.0,
                            0.5, lam=lam)
        if lam >= 2:
            bound = 1.0 - np.pi ** 2 / (2.0 * (lam + 2) ** 2)
            report.add(CheckRecord(tag="diag-sphere/alpha1-bound", lam=lam, m=0,
                                   value=float(alpha1[0]), bound=float(bound),
                                   passed=bool(alpha1[0] >= bound)))
    return report


def verify_diag_theorems(lam_max: int, k=None, tol: float = 1e-10) -> Report:
    """Verify the coordinate-spectrum theorems for the circle and the sphere
    up to truncation lam_max: symmetry, strict interlacing in the truncation,
    top-eigenvalue lower bounds, m-monotonicity and simplicity."""
    if lam_max < 2:
        raise ValueError("lam_max must be at least 2")
    report = circle_diag_report(1, lam_max, k, tol)
    report.extend(sphere_diag_report(1, lam_max, k, tol))
    return report
