import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqscat.errors import BandViolation
from bqscat.oracle import (PicardRequest, WavepacketSource, WavepacketSpec, dispersion,
                           linear_residual, nonlinear_residual, pde_residual, picard_reference,
                           wavepacket_dataset)


@pytest.mark.parametrize("kbar, hw", [(0.5, 0.5), (0.1, 0.2), (0.9, 0.15)])
def test_band_violation(kbar, hw):
    with pytest.raises(BandViolation):
        WavepacketSpec(kappa_bar=kbar, half_width=hw)


def test_dispersion():
    k = np.linspace(0.1, 0.9, 9)
    W = dispersion(k)
    assert np.allclose(W**2, k**2 - k**4)


@pytest.fixture(scope="module")
def wave():
    return WavepacketSource(WavepacketSpec(eps=1e-3, n_quad=200))


@given(st.floats(0, 20), st.floats(0, 1))
@settings(max_examples=20, deadline=None)
def test_linear_equation_exact(x, t):
    src = WavepacketSource(WavepacketSpec(eps=1e-3, n_quad=64))
    assert linear_residual(src, np.array([x]), np.array([t])) < 1e-15


@pytest.mark.parametrize("eps", [1e-3, 2e-3, 4e-3])
def test_nonlinear_defect_is_quadratic(eps):
    x = np.linspace(0, 10, 201)
    r = nonlinear_residual(WavepacketSource(WavepacketSpec(eps=eps, n_quad=200)), x, 0.3)
    assert 0.1 * eps**2 < r < 2 * eps**2


def test_amplitude_bound(wave):
    x = np.linspace(0, 80, 4001)
    assert np.max(np.abs(wave.x_fields(0.0, x)["u"])) <= 1e-3 * (1 + 1e-12)


def test_uniform_fast_path_matches(wave, rng):
    x = np.linspace(0, 10, 300)
    perm = rng.permutation(300)
    fast = wave.evaluate(("u", "v"), x, 0.4)
    slow = wave.evaluate(("u", "v"), x[perm], 0.4)  # shuffled: no shared phase table
    assert np.allclose(fast["u"][perm], slow["u"], atol=1e-16)
    assert np.allclose(fast["v"][perm], slow["v"], atol=1e-16)


def test_grid_solves_system():
    spec = WavepacketSpec(eps=1e-3, x_max=20.0, nx=801, nt=201, n_quad=200)
    _, _, grid = wavepacket_dataset(spec)
    # residual is the quadratic defect plus discretisation error
    assert pde_residual(grid) < 5e-6


def test_picard_trivial(zero_source):
    ref, _ = picard_reference(zero_source, PicardRequest("mu3", 0.5, 0.5, 1.3 + 0.4j))
    assert np.allclose(ref[np.isfinite(ref)], np.eye(3)[np.isfinite(ref)])
