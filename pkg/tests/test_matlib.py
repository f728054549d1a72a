"""Dense-matrix helpers: closed-form cases, Moore-Penrose identities,
and reconstruction properties on random Hermitian inputs.
"""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcorr import DEFAULT_TOL, Tolerance
from qcorr.errors import DimensionMismatch, NotHermitian, NotPsd
from qcorr.matlib import (
    add,
    commutator,
    dagger,
    fro_norm,
    hermitian_eig,
    hermiticity_defect,
    hermitize,
    kron,
    matmul,
    psd_sqrt,
    pseudo_inverse,
    scale,
    trace,
)


def random_hermitian(seed: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def test_default_tolerances_frozen():
    t = DEFAULT_TOL
    assert t.eps_psd == 1e-9
    assert t.eps_residual == 1e-8
    assert t.eps_rank == 1e-10
    assert t.eps_sppt == 1e-7
    assert t.eps_cq == 1e-6
    assert t.eps_degenerate == 1e-8
    assert t.eps_prob == 1e-12


def test_tolerance_is_immutable():
    with pytest.raises(Exception):
        DEFAULT_TOL.eps_psd = 1.0  # frozen dataclass


def test_dagger_conjugate_transposes():
    a = np.array([[1 + 2j, 3], [4j, 5], [6, 7 - 1j]])
    d = dagger(a)
    assert d.shape == (2, 3)
    assert d[0, 1] == np.conj(a[1, 0])
    assert np.array_equal(dagger(d), a.astype(np.complex128))


def test_fro_norm_matches_direct_sum():
    a = np.array([[3j, 4.0], [0.0, 0.0]])
    assert fro_norm(a) == pytest.approx(5.0, abs=1e-15)


def test_trace_and_arith_small_cases():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.eye(2)
    assert trace(a) == pytest.approx(5.0)
    assert np.allclose(matmul(a, b), a)
    assert np.allclose(add(a, b), a + b)
    assert np.allclose(scale(2.0, a), 2 * a)


def test_arith_shape_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        matmul(np.eye(2), np.eye(3))
    with pytest.raises(DimensionMismatch):
        add(np.eye(2), np.eye(3))


def test_kron_small_case_by_hand():
    a = np.array([[0.0, 1.0], [2.0, 0.0]])
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    k = kron(a, b)
    assert k.shape == (4, 4)
    # top-right 2x2 block is a[0,1] * b
    assert np.allclose(k[:2, 2:], b)
    assert np.allclose(k[2:, :2], 2 * b)


def test_commutator_antisymmetric_and_zero_for_commuting():
    a = random_hermitian(1, 4)
    b = random_hermitian(2, 4)
    c = commutator(a, b)
    assert np.allclose(c, -commutator(b, a))
    assert fro_norm(commutator(a, a @ a)) < 1e-12


def test_hermitize_projects_and_defect_vanishes():
    a = np.array([[1.0, 2.0 + 1j], [0.0, 3.0]])
    h = hermitize(a)
    assert hermiticity_defect(h) < 1e-15
    assert np.allclose(h, (a + a.conj().T) / 2)


def test_hermitian_eig_descending_and_reconstructs():
    a = random_hermitian(3, 5)
    eig = hermitian_eig(a)
    assert np.all(np.diff(eig.eigenvalues) <= 1e-12)
    rec = eig.eigenvectors @ np.diag(eig.eigenvalues) @ eig.eigenvectors.conj().T
    assert fro_norm(rec - a) < 1e-12 * max(1.0, fro_norm(a))


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_psd_sqrt_closed_form_diagonal():
    r = psd_sqrt(np.diag([4.0, 1.0, 0.0]))
    assert np.allclose(r, np.diag([2.0, 1.0, 0.0]), atol=1e-14)


def test_psd_sqrt_clamps_tiny_negative_eigenvalues():
    a = np.diag([1.0, -1e-12])
    r = psd_sqrt(a)
    assert np.allclose(r @ r, np.diag([1.0, 0.0]), atol=1e-10)


def test_psd_sqrt_rejects_clearly_indefinite():
    with pytest.raises(NotPsd):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_psd_sqrt_scale_parameter_sets_the_floor():
    # defect 1e-7 is accepted relative to a large scale, rejected at scale 1
    a = np.diag([1.0, -1e-7])
    with pytest.raises(NotPsd):
        psd_sqrt(a)
    r = psd_sqrt(a, scale=1e3)
    assert np.allclose(r @ r, np.diag([1.0, 0.0]), atol=1e-6)


def test_pseudo_inverse_matches_inverse_when_invertible():
    a = random_hermitian(4, 4) + 5 * np.eye(4)
    assert fro_norm(pseudo_inverse(a) - np.linalg.inv(a)) < 1e-10


def test_pseudo_inverse_moore_penrose_on_singular_input():
    v = np.array([[1.0], [2.0]]) / np.sqrt(5)
    a = v @ v.T  # rank 1 projector-like matrix
    p = pseudo_inverse(a)
    assert fro_norm(a @ p @ a - a) < 1e-12
    assert fro_norm(p @ a @ p - p) < 1e-12
    assert hermiticity_defect(a @ p) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_psd_sqrt_squares_back_property(seed, n):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = g @ g.conj().T
    r = psd_sqrt(a)
    assert hermiticity_defect(r) < 1e-10 * max(1.0, fro_norm(a))
    assert fro_norm(r @ r - a) < 1e-9 * max(1.0, fro_norm(a))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_hermitian_eig_reconstruction_property(seed, n):
    a = random_hermitian(seed, n)
    eig = hermitian_eig(a)
    vtv = eig.eigenvectors.conj().T @ eig.eigenvectors
    assert fro_norm(vtv - np.eye(n)) < 1e-12
    rec = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
    assert fro_norm(rec - a) < 1e-11 * max(1.0, fro_norm(a))


def test_custom_tolerance_threads_through_psd_check():
    loose = Tolerance(eps_psd=1e-2)
    r = psd_sqrt(np.diag([1.0, -1e-3]), tol=loose)
    assert np.allclose(r @ r, np.diag([1.0, 0.0]), atol=1e-2)
