import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqscat.algebra import OMEGA
from bqscat.errors import NearSingularPoint, ZeroArgument
from bqscat.lax import (KAPPA, distance_to_qhat, exponent, lam, l_values, make_point,
                        phase, vandermonde_batch, z_values)

radii = st.floats(0.2, 5.0)
angles = st.floats(0, 2 * np.pi)


def point(r, a):
    return r * np.exp(1j * a)


@given(radii, angles)
def test_symbols_sum_to_zero(r, a):
    k = point(r, a)
    assert abs(l_values(k).sum()) < 1e-12 * (r + 1 / r)
    assert abs(z_values(k).sum()) < 1e-12 * (r**2 + r**-2)


@given(radii, angles)
def test_rotation_permutes_symbols(r, a):
    k = point(r, a)
    # l_j(wk) = l_{j+1}(k)
    assert np.allclose(l_values(OMEGA * k), np.roll(l_values(k), -1))
    assert np.allclose(z_values(OMEGA * k), np.roll(z_values(k), -1))


@given(radii, angles)
def test_inversion(r, a):
    k = point(r, a)
    # w^j / k = 1 / (w^{-j} k): the inversion swaps indices 1 and 2
    assert np.allclose(l_values(1 / k), l_values(k)[[1, 0, 2]])
    assert np.allclose(z_values(1 / k), z_values(k)[[1, 0, 2]])


@given(radii, angles)
@settings(max_examples=50)
def test_dispersion_relation(r, a):
    """z_j is a quadratic in l_j: z = -i sqrt(3) (l^2 + 1/6)."""
    k = point(r, a)
    l, z = l_values(k), z_values(k)
    assert np.allclose(z, -1j * np.sqrt(3) * (l**2 + 1.0 / 6.0), atol=1e-12 * (r**2 + r**-2))


def test_lam_invariance():
    k = 0.7 + 0.3j
    assert lam(OMEGA * k) == pytest.approx(lam(k))
    assert lam(1 / k) == pytest.approx(lam(k))


def test_distance_to_qhat():
    assert distance_to_qhat(KAPPA[2]) == 0
    assert distance_to_qhat(0.0) == 0
    assert distance_to_qhat(2.0) == pytest.approx(1.0)


def test_make_point_zero():
    with pytest.raises(ZeroArgument):
        make_point(0)


def test_phase_and_exponent():
    p = make_point(1.3 + 0.4j)
    d = exponent(0.5, 0.2, p.k)
    assert phase(1, 2, 0.5, 0.2, p) == pytest.approx(d[0] - d[1])


@given(radii, angles)
@settings(max_examples=50)
def test_vandermonde_inverse(r, a):
    k = point(r, a)
    if distance_to_qhat(k) < 0.05:
        return
    P, Pinv = vandermonde_batch(np.array([k]))
    assert np.allclose(P[0] @ Pinv[0], np.eye(3), atol=1e-9)


@pytest.mark.parametrize("k", [1.0, OMEGA, 1e-3, -1.01])
def test_vandermonde_exclusion(k):
    with pytest.raises(NearSingularPoint):
        vandermonde_batch(np.array([k]))
