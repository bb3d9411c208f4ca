import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqscat.errors import InvalidInput, NonDecayingInput
from bqscat.fields import (SampledSource, ZeroSource, convert_scalar_to_system, fd_derivative,
                           third_derivative_from_system)
from bqscat.oracle import WavepacketSource, WavepacketSpec, wavepacket_dataset


@pytest.mark.parametrize("order, f, df", [
    (1, np.sin, np.cos),
    (2, np.sin, lambda x: -np.sin(x)),
])
def test_fd_derivative_order(order, f, df):
    errs = []
    for n in (101, 201):
        x = np.linspace(0, 2, n)
        errs.append(np.max(np.abs(fd_derivative(f(x), x[1] - x[0], order) - df(x))))
    # fourth order in the interior, at least third at the ends
    assert errs[0] / errs[1] > 7.5


@given(st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=20)
def test_fd_derivative_exact_on_quadratics(a, b):
    x = np.linspace(0, 1, 11)
    d = fd_derivative(a * x**2 + b * x, x[1] - x[0])
    assert np.allclose(d, 2 * a * x + b, atol=1e-9)


def test_fd_needs_points():
    with pytest.raises(InvalidInput):
        fd_derivative(np.zeros(5), 0.1)


def test_zero_source():
    z = ZeroSource(5.0, 2.0)
    assert z.vanishes and z.T == 2.0
    assert not np.any(z.x_fields(0.3, np.linspace(0, 5, 7))["u"])


@pytest.fixture(scope="module")
def wave_data():
    spec = WavepacketSpec(eps=1e-2, x_max=80.0, nx=2001, nt=101, n_quad=200)
    return WavepacketSource(spec), wavepacket_dataset(spec)


def test_sampled_source_matches_closed_form(wave_data):
    src, (initial, boundary, grid) = wave_data
    sampled = SampledSource(initial, boundary, grid)
    xs = np.linspace(0.1, 10, 37)
    ts = np.linspace(0.05, 0.95, 23)
    for name in ("u", "u_x", "v"):
        assert np.allclose(sampled.x_fields(0.0, xs)[name], src.x_fields(0.0, xs)[name], atol=1e-7)
        assert np.allclose(sampled.x_fields(0.5, xs)[name], src.x_fields(0.5, xs)[name], atol=1e-6)
    for name in ("u", "u_x", "u_xx", "v"):
        assert np.allclose(sampled.t_fields(ts)[name], src.t_fields(ts)[name], atol=1e-7)


def test_sampled_source_needs_grid(wave_data):
    _, (initial, boundary, _) = wave_data
    with pytest.raises(InvalidInput):
        SampledSource(initial, boundary).x_fields(0.5, [1.0])


def test_conversion_roundtrip(wave_data):
    src, (initial, boundary, _) = wave_data
    ini, bnd = convert_scalar_to_system(initial.grid_x, initial.u0, initial.u1, boundary.grid_t,
                                        boundary.ut0, boundary.ut1, boundary.ut2, boundary.ut3)
    assert np.allclose(ini.v0, initial.v0, atol=1e-8)
    assert np.allclose(bnd.vt0, boundary.vt0, atol=1e-8)
    assert np.allclose(third_derivative_from_system(bnd)[3:-3], boundary.ut3[3:-3], atol=1e-6)


def test_conversion_rejects_non_decaying():
    x = np.linspace(0, 1, 11)
    with pytest.raises(NonDecayingInput):
        convert_scalar_to_system(x, np.ones(11), np.zeros(11), x, *np.zeros((4, 11)))
