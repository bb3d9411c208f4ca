import numpy as np
import pytest

from bqscat import spectral
from bqscat.algebra import OMEGA, cofactor
from bqscat.errors import InvalidInput
from bqscat.spectral import (COEFFICIENTS, Scattering, SpectralTables, build_tables,
                             richardson, symmetry_residuals)
from bqscat.suites import circle_points, random_points


def test_zero_data_tables(zero_source, rng):
    scat = Scattering(zero_source)
    k = circle_points(rng, 12)
    coeffs = scat.coefficients(COEFFICIENTS, k)
    assert all(np.all(v == 0) for v in coeffs.values())
    mats = scat.matrices(k)
    for name in ("s", "S", "sA", "SA"):
        finite = np.isfinite(mats[name])
        assert np.array_equal(mats[name][finite], np.broadcast_to(np.eye(3), mats[name].shape)[finite])


def test_cache_reuses_points(short_scat):
    k = np.array([1.2 + 0.5j])
    a = short_scat.matrices(k)["s"]
    assert short_scat.matrices(k)["s"] is not a
    assert np.array_equal(short_scat.matrices(k)["s"], a, equal_nan=True)


@pytest.mark.parametrize("name", ["s", "S", "sA", "SA"])
def test_symmetries(short_scat, rng, name):
    k = random_points(rng, 6)
    ra, rb = symmetry_residuals(short_scat.matrices(k), short_scat.matrices(OMEGA * k),
                                short_scat.matrices(1 / k), name)
    assert ra < 1e-9 and rb < 1e-9


def test_cofactor_on_circle(short_scat, rng):
    m = short_scat.matrices(circle_points(rng, 6), full=True)
    assert np.max(np.abs(m["sA"] - cofactor(m["s"]))) < 1e-10


def test_circle_relations(short_scat, rng):
    rel = spectral.unit_circle_relations(short_scat, circle_points(rng, 6))
    assert len(rel) == 8
    assert max(np.max(v) for v in rel.values()) < 1e-9


def test_richardson_polynomial():
    q = np.array([0.1, -0.1, 0.05, -0.05]) * (1 + 0.5j)
    lim, noise = richardson(q, 2.0 + 3 * q - q**2)
    assert abs(lim - 2) < 1e-12
    # the noise estimate drops a pair, leaving a linear fit that misses q^2
    assert noise == pytest.approx(abs(q[2] * q[3]), rel=1e-6)


def test_tables_roundtrip(short_scat, rng):
    t = build_tables(short_scat, {"circle": circle_points(rng, 4)})
    back = SpectralTables.from_json(t.to_json())
    assert back.to_json() == t.to_json()
    assert t.to_csv().splitlines()[0] == "k_re,k_im,name,value_re,value_im"


@pytest.mark.parametrize("text", ["not json", '{"format": 2, "sets": {}}',
                                  '{"format": 1, "sets": {"a": {"k": [[1, 0]]}}}',
                                  '{"format": 1, "sets": {"a": {"k": [[1, 0]], "matrices": {"s": [[1, 0]]},'
                                  ' "coefficients": {}}}}'])
def test_tables_reject(text):
    with pytest.raises(InvalidInput):
        SpectralTables.from_json(text)


def test_assumptions_on_zero_data(zero_source, rng):
    info = spectral.check_assumptions(Scattering(zero_source), circle_points(rng, 5))
    assert info["no_solitons"]
    assert not info["is_generic"]


def test_global_relation_is_small(short_wave, rng):
    # truncation at x = 30 breaks compatibility only at the level of the tail
    r = spectral.global_relation_residual(Scattering(short_wave), random_points(rng, 3))
    assert np.all(r < 1e-3)
