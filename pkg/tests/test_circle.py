"""Fuzzy circle construction and relation suite."""

import numpy as np
import pytest

from fuzzysphere.circle import (build_circle, coordinate_matrix,
                                ladder_coefficient, min_sharpness,
                                verify_circle_relations)
from fuzzysphere.linop import State


def test_build_validations():
    with pytest.raises(ValueError):
        build_circle(0)
    with pytest.raises(ValueError):
        build_circle(2, k=10.0)            # below 2^2 * 3^2 = 36


def test_default_sharpness_is_minimal():
    c = build_circle(3)
    assert c.k == min_sharpness(3) == 144.0


def test_basis_indexing():
    c = build_circle(2)
    assert c.index(2) == 0
    assert c.index(0) == 2
    assert c.index(-2) == 4
    with pytest.raises(ValueError):
        c.index(3)
    assert list(c.labels) == [2, 1, 0, -1, -2]


def test_ladder_action_small():
    # lam=1, k=4: x_+ psi_0 = psi_1 and x_+ psi_{-1} = psi_0 exactly,
    # since n(n+1) = 0 for both
    c = build_circle(1, 4.0)
    psi0 = State.basis(c.dim, c.index(0))
    out = c.x_plus @ psi0
    assert out[c.index(1)] == pytest.approx(1.0)
    assert ladder_coefficient(1, 4.0) == pytest.approx(np.sqrt(1.5))


def test_top_state_annihilated():
    c = build_circle(4)
    top = State.basis(c.dim, c.index(4))
    assert np.linalg.norm(c.x_plus @ top) == 0.0


def test_coordinates_hermitian():
    c = build_circle(3)
    assert c.x1.is_hermitian()
    assert c.x2.is_hermitian()
    assert c.x_squared.is_hermitian()
    assert np.allclose(c.x_minus.mat, c.x_plus.mat.conj().T)


@pytest.mark.parametrize("lam", [1, 2, 3, 5, 8, 13])
def test_relations_hold(lam):
    rep = verify_circle_relations(build_circle(lam))
    assert rep.passed
    assert max(c.residual for c in rep.checks) <= 1e-12


def test_relations_hold_for_larger_k():
    rep = verify_circle_relations(build_circle(4, k=1e6))
    assert rep.passed


def test_relations_catch_tampering():
    c = build_circle(2)
    mat = np.array(c.x_plus.mat)
    mat[0, 1] *= 1.01
    bad = c.__class__(**{**c.__dict__, "x_plus": c.x_plus.__class__(mat)})
    rep = verify_circle_relations(bad)
    assert not rep.passed
    assert rep.first_failure() is not None


def test_x_squared_edge_projection():
    # <x^2> on the top state is depressed by half the edge weight
    lam, k = 3, float(min_sharpness(3))
    c = build_circle(lam)
    top = State.basis(c.dim, c.index(lam))
    expected = 1 + lam ** 2 / k - (1 + lam * (lam + 1) / k) / 2
    assert c.x_squared.expect(top).real == pytest.approx(expected, abs=1e-14)


def test_coordinate_matrix_entries():
    c = build_circle(2, 36.0)
    t = coordinate_matrix(c)
    assert t.n == 5
    # row i couples labels 2-i and 1-i
    expected = [0.5 * ladder_coefficient(n, 36.0) for n in (1, 0, -1, -2)]
    assert np.allclose(t.offdiag, expected)
    assert np.allclose(t.dense(), c.x1.mat)


def test_coordinate_matrix_toeplitz_limit():
    t = coordinate_matrix(build_circle(3), toeplitz_limit=True)
    assert np.allclose(t.offdiag, 0.5)
