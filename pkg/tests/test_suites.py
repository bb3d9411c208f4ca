import json

import numpy as np
import pytest

from bqscat import suites
from bqscat.algebra import OMEGA


@pytest.fixture(scope="module")
def zero_ctx():
    return suites.preset_context("zero", n_samples=8)


def test_check_and_ratio():
    s = suites.SuiteResult("x")
    suites.check(s, "a", "ref", [1e-9, 2e-9], 1e-8)
    suites.check(s, "b", "ref", [np.nan], 1.0)
    suites.ratio_check(s, "c", "ref", [16.0, 4.0, 1.0], 0.6)
    suites.ratio_check(s, "d", "ref", [3.0, 2.0, 1.0], 0.6)
    assert [i.passed for i in s.identities] == [True, False, True, False]
    assert not s.passed
    d = s.identities[0].to_dict()
    assert set(d) == {"name", "reference", "n_samples", "max_residual", "tolerance", "pass"}


def test_informational_does_not_fail():
    s = suites.SuiteResult("x")
    suites.check(s, "a", "ref", [1.0], 0.1, informational=True)
    assert s.passed


def test_sample_points(rng):
    k = suites.random_points(rng, 10)
    assert all(suites._admissible(z) for z in np.concatenate([k, OMEGA * k, 1 / k]))
    c = suites.circle_points(rng, 10)
    assert np.allclose(np.abs(c), 1)


@pytest.mark.parametrize("name", ["trivial", "identities", "endpoints", "asymptotics", "structure", "scaling"])
def test_zero_suites_pass(zero_ctx, name):
    r = suites.SUITES[name](zero_ctx)
    assert r.passed, [i.to_dict() for i in r.identities if not i.passed]


def test_zero_genericity_is_informational(zero_ctx):
    r = suites.suite_endpoints(zero_ctx)
    g = next(i for i in r.identities if i.name.startswith("generic"))
    assert g.informational and not g.passed
    assert r.notes["genericity"] == "non-generic"


def test_report_is_deterministic(zero_ctx):
    a = suites.report(zero_ctx, suites.run(zero_ctx, ["trivial", "identities"]))
    ctx2 = suites.preset_context("zero", n_samples=8)
    b = suites.report(ctx2, suites.run(ctx2, ["trivial", "identities"]))
    assert a == b
    obj = json.loads(a)
    assert obj["format"] == suites.REPORT_FORMAT and obj["pass"]


def test_unknown_suite(zero_ctx):
    with pytest.raises(KeyError):
        suites.run(zero_ctx, ["nope"])


def test_parallel_map_keeps_order(monkeypatch):
    monkeypatch.setenv("BQSCAT_THREADS", "4")
    assert suites.parallel_map(lambda v: v * v, range(10)) == [v * v for v in range(10)]
