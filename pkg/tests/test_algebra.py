import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bqscat.algebra import (MAT_A, MAT_B, OMEGA, cofactor, conj, conj_exp, det,
                            identity, inverse)
from bqscat.errors import OverflowRisk, SingularMatrix

entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
matrices = arrays(complex, (3, 3), elements=entries)


def test_omega_is_cube_root():
    assert abs(OMEGA**3 - 1) < 1e-15
    assert abs(1 + OMEGA + OMEGA**2) < 1e-15


def test_structure_matrices():
    assert np.allclose(np.linalg.matrix_power(MAT_A, 3), np.eye(3))
    assert np.allclose(MAT_B @ MAT_B, np.eye(3))
    assert det(MAT_A) == pytest.approx(1)
    assert det(MAT_B) == pytest.approx(-1)


@pytest.mark.parametrize("m", [MAT_A, MAT_B, MAT_A @ MAT_B])
@given(a=matrices)
@settings(max_examples=30, deadline=None)
def test_conj_matches_product(m, a):
    assert np.allclose(conj(m, a), m @ a @ np.linalg.inv(m))


def test_conj_keeps_nan_local():
    a = np.eye(3, dtype=complex)
    a[:, 0] = np.nan
    out = conj(MAT_A, a)
    assert np.isnan(out).sum() == 3


@given(a=matrices)
@settings(max_examples=50, deadline=None)
def test_det_and_cofactor(a):
    assert det(a) == pytest.approx(np.linalg.det(a), abs=1e-9 * max(1, np.abs(a).max() ** 3))
    # cofactor(a)^T a = det(a) I
    assert np.allclose(cofactor(a).T @ a, det(a) * np.eye(3), atol=1e-8 * max(1, np.abs(a).max() ** 3))


def test_inverse_batch(rng):
    a = rng.normal(size=(5, 3, 3)) + 1j * rng.normal(size=(5, 3, 3))
    assert np.allclose(inverse(a) @ a, identity((5,)))


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        inverse(np.ones((3, 3)))


@given(d=arrays(complex, 3, elements=st.complex_numbers(max_magnitude=5)), a=matrices)
@settings(max_examples=30, deadline=None)
def test_conj_exp(d, a):
    D = np.diag(np.exp(d))
    assert np.allclose(conj_exp(d, a), D @ a @ np.diag(np.exp(-d)), rtol=1e-10, atol=1e-10 * np.abs(D).max() ** 2)


def test_conj_exp_cap():
    with pytest.raises(OverflowRisk):
        conj_exp(np.array([800.0, 0, 0]), np.eye(3))
