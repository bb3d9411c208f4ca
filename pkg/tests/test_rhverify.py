import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqscat import contour, rhverify
from bqscat.algebra import MAT_A, MAT_B, OMEGA, conj
from bqscat.jump import JumpEvaluator
from bqscat.spectral import Scattering


@given(st.floats(0.2, 4.0), st.floats(0, 360))
@settings(max_examples=100)
def test_group_element_reaches_base_region(r, deg):
    k = r * np.exp(1j * np.deg2rad(deg))
    if contour.locate(k, tol=1e-6) is not None or abs(abs(k) - 1) < 1e-6:
        return
    try:
        contour.classify(k)
    except Exception:
        return
    a, inv, name, kp = rhverify.group_element(k)
    expect = OMEGA**a * k
    assert np.isclose(kp, 1 / expect if inv else expect)
    assert name in rhverify.BASE_REGIONS


@pytest.mark.parametrize("degree", [2, 4, 6])
def test_fit_inverse_powers_exact(degree, rng):
    k = np.geomspace(20, 100, 16) * np.exp(0.3j)
    c = rng.normal(size=(degree + 1, 3, 3))
    m = sum(c[p] * k[:, None, None] ** -p for p in range(degree + 1))
    # only the leading coefficients are well conditioned, and only they are used
    assert np.allclose(rhverify.fit_inverse_powers(k, m, degree)[:3], c[:3], atol=1e-6)


def test_residue_pattern():
    a, b = 0.3 + 0.1j, -0.2j
    P = np.array([[a, 0, b], [-a, 0, -b], [0, 0, 0]])
    res, fit = rhverify.residue_pattern_residual(P)
    assert res < 1e-15 and np.allclose(fit, P)
    res, _ = rhverify.residue_pattern_residual(P + 0.1 * np.eye(3))
    assert res > 0.01


def test_zero_data(zero_source):
    scat = Scattering(zero_source)
    M = rhverify.SectionalM(scat)
    k = np.array([1.5 + 0.7j, 0.3 - 0.2j, -2.0 + 0.1j])
    assert np.allclose(M(0.5, 0.5, k), np.eye(3))
    assert np.all(rhverify.residue_matrix(M, 0.5, 0.5) == 0)
    ex, _ = M.jump_residual(0.5, 0.5, "3", np.array(contour.sample_piece(contour.piece("3"), 2)),
                            JumpEvaluator(scat))
    assert np.all(ex < 1e-14)


def test_sectional_symmetry(short_wave):
    """M(k) = A M(wk) A^-1 = B M(1/k) B holds by construction of the sectional solution."""
    M = rhverify.SectionalM(Scattering(short_wave))
    k = np.array([1.4 + 0.6j, 0.5 + 0.2j])
    m = M(0.8, 0.4, k)
    assert np.allclose(m, conj(MAT_A, M(0.8, 0.4, OMEGA * k)), atol=1e-12)
    assert np.allclose(m, conj(MAT_B, M(0.8, 0.4, 1 / k)), atol=1e-12)


def test_recovery_matches_data(short_wave):
    M = rhverify.SectionalM(Scattering(short_wave))
    rec, _ = rhverify.recover_u(M, 1.0, 0.5)
    u = short_wave.x_fields(0.5, np.array([1.0]))["u"][0]
    assert abs(rec.u_b - u) < 1e-8
    assert abs(rec.u_a - u) < 1e-6


def test_recovery_needs_room(zero_source):
    with pytest.raises(ValueError):
        rhverify.recover_u(rhverify.SectionalM(Scattering(zero_source)), 0.05, 0.5)
