"""Acceptance criteria, one test per criterion, with the tolerances pinned here.

Each test prints a single PASS/FAIL line (collected again in the terminal
summary).  The criteria use the shared suites so the CLI and these tests
check exactly the same quantities.
"""
import subprocess
import sys
import time

import numpy as np
import pytest

from bqscat import suites

EPS = 1e-3
EPS_GENERIC = 1e-2  # amplitude at which the data are generic at +-1
SAMPLES = 30

# pinned tolerances
TRIVIAL_TOL = 1e-12
ORACLE_TOL = 1e-8
SYMMETRY_TOL = 1e-7
DET_TOL = 1e-8
COFACTOR_TOL = 1e-8
CIRCLE_TOL = 1e-7
VSYMM_TOL = 1e-7
JUNCTION_TOL = 1e-5
ENDPOINT_TOL = 1e-3
GENERIC_MARGIN = 10.0
ASYMPTOTIC_TOL = 0.02
RATIO_WINDOW = (3.4, 4.6)
STRUCTURE_TOL = 1e-6
RESIDUE_TOL = 0.1

pytestmark = pytest.mark.acceptance


def test_tolerances_are_pinned():
    t = suites.TOLERANCES
    assert (t["trivial"], t["oracle"], t["symmetry"], t["determinant"], t["cofactor"], t["circle"],
            t["vsymm"], t["endpoint"], t["generic_margin"], t["asymptotic"], t["structure"],
            t["diagonal"], t["residue"]) == (TRIVIAL_TOL, ORACLE_TOL, SYMMETRY_TOL, DET_TOL, COFACTOR_TOL,
                                             CIRCLE_TOL, VSYMM_TOL, ENDPOINT_TOL, GENERIC_MARGIN,
                                             ASYMPTOTIC_TOL, STRUCTURE_TOL, STRUCTURE_TOL, RESIDUE_TOL)
    assert t["junction"] == JUNCTION_TOL
    lo, hi = suites.RATIO_CENTRE - suites.RATIO_HALF_WIDTH, suites.RATIO_CENTRE + suites.RATIO_HALF_WIDTH
    assert (lo, hi) == pytest.approx(RATIO_WINDOW)


@pytest.fixture(scope="module")
def wave_ctx():
    return suites.preset_context("wavepacket", eps=EPS, n_samples=SAMPLES)


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def failures(result):
    return [i for i in result.identities if not i.informational and not i.passed]


def worst(result):
    return ", ".join(f"{i.name}={i.max_residual:.2e}/{i.tolerance:.0e}" for i in result.identities
                     if not i.informational)


def test_criterion_1_trivial(criterion):
    ctx = suites.preset_context("zero", n_samples=SAMPLES)
    r, dt = timed(suites.suite_trivial, ctx)
    ok = r.passed and dt < 5.0 and all(i.tolerance == TRIVIAL_TOL for i in r.identities)
    criterion(1, "zero data give I, zero coefficients and u = 0", ok, f"{dt:.1f}s; {worst(r)}")
    assert ok


def test_criterion_2_oracle(criterion, wave_ctx):
    r, dt = timed(suites.suite_oracle, wave_ctx)
    ident = r.identities[0]
    ok = r.passed and ident.n_samples == 20 and dt < 60.0
    criterion(2, "RK against Picard at 20 random requests", ok,
              f"{dt:.1f}s; max {ident.max_residual:.2e} (tol {ORACLE_TOL:.0e})")
    assert ok


def test_criterion_3_identities(criterion, wave_ctx):
    r, dt = timed(suites.suite_identities, wave_ctx)
    enough = all(i.n_samples >= SAMPLES for i in r.identities)
    ok = r.passed and enough and dt < 300.0
    criterion(3, "symmetries, determinants, cofactor, circle relations, jump symmetry", ok,
              f"{dt:.1f}s; min samples {min(i.n_samples for i in r.identities)}; "
              f"worst {max(r.identities, key=lambda i: i.max_residual / i.tolerance).name}")
    assert ok, [i.to_dict() for i in failures(r)]


def test_criterion_4_endpoints(criterion):
    ctx = suites.preset_context("wavepacket", eps=EPS_GENERIC, n_samples=SAMPLES)
    r = suites.suite_endpoints(ctx)
    generic = r.notes["genericity"] == "generic"
    values = next(i for i in r.identities if i.name == "endpoint values")
    margin = next(i for i in r.identities if i.name.startswith("generic"))
    ok = r.passed and generic and not values.informational
    criterion(4, f"endpoint values at +-1 and genericity (eps = {EPS_GENERIC:g})", ok,
              f"max |limit - target| {values.max_residual:.2e} (tol {ENDPOINT_TOL:.0e}); "
              f"min limit/noise {margin.max_residual:.1f} (> {GENERIC_MARGIN:g})")
    assert ok


def test_criterion_5_asymptotics(criterion, wave_ctx):
    r = suites.suite_asymptotics(wave_ctx)
    main = [i for i in r.identities if not i.informational]
    ok = r.passed and len(main) == 5
    criterion(5, "leading large/small-k terms of r1, r2, R1, R2, Rt2", ok,
              f"max relative error {max(i.max_residual for i in main):.2e} (tol {ASYMPTOTIC_TOL:g})")
    assert ok


def test_criterion_6_scaling(criterion, wave_ctx):
    r, dt = timed(suites.suite_scaling, wave_ctx)
    jumps = [i for i in r.identities if i.name.startswith("jump residual")]
    bad = failures(r)
    ok = r.passed and len(jumps) >= 6 and dt < 600.0
    ratios = {i.name: [round(float(x), 2) for x in i.details["ratios"]] for i in r.identities}
    criterion(6, "O(eps^2) ratios of global relation, jump residuals and recovery errors", ok,
              f"{dt:.0f}s; {len(jumps)} pieces; failing: "
              + (", ".join(f"{i.name} ratios {ratios[i.name]}" for i in bad) or "none"))
    assert ok


def test_criterion_7_recovery(criterion, wave_ctx):
    r = suites.suite_recovery(wave_ctx)
    ident = r.identities[0]
    ok = r.passed and ident.n_samples == 10 and ident.tolerance == pytest.approx(EPS**2)
    criterion(7, "u_a and u_b agree within eps^2 at 10 random (x, t)", ok,
              f"max |u_a - u_b| {ident.max_residual:.2e} (tol {ident.tolerance:.0e})")
    assert ok


def test_criterion_8_structure(criterion, wave_ctx):
    r = suites.suite_structure(wave_ctx)
    ok = r.passed
    criterion(8, "structural zeros, diagonal pattern and residue pattern", ok, worst(r))
    assert ok


def test_criterion_9_determinism(criterion, tmp_path):
    reports = []
    for n in range(2):
        out = tmp_path / f"report{n}.json"
        cmd = [sys.executable, "-m", "bqscat.cli", "verify", "--preset", "wavepacket", "--eps", str(EPS),
               "--seed", "3", "--suite", "oracle", "--suite", "identities", "--suite", "structure",
               "--out", str(out)]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode in (0, 1), proc.stderr
        reports.append(out.read_bytes())
    ok = reports[0] == reports[1]
    criterion(9, "byte-identical reports from two runs", ok, f"{len(reports[0])} bytes")
    assert ok
