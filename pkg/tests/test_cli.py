import hashlib
import json

import pytest
from click.testing import CliRunner

from bqscat.cli import EXIT_FAIL, EXIT_INVALID, EXIT_OK, main


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)


def test_generate_zero(runner, tmp_path):
    out = tmp_path / "zero.json"
    r = run(runner, "generate", "--preset", "zero", "--out", out)
    assert r.exit_code == EXIT_OK
    assert json.loads(out.read_text())["preset"]["family"] == "zero"


def test_generate_is_hash_stable(runner, tmp_path):
    digests = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(runner, "generate", "--preset", "wavepacket", "--eps", 1e-3, "--seed", 7,
                   "--out", out).exit_code == EXIT_OK
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_generate_missing_dir(runner, tmp_path):
    r = run(runner, "generate", "--preset", "zero", "--out", tmp_path / "no" / "x.json")
    assert r.exit_code == EXIT_INVALID


def test_generate_band_violation(runner, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"preset": "wavepacket", "bogus": 1}))
    assert run(runner, "generate", "--config", cfg).exit_code == EXIT_INVALID


def test_scatter_zero(runner, tmp_path):
    out = tmp_path / "tables"
    r = run(runner, "scatter", "--preset", "zero", "--out", out)
    assert r.exit_code == EXIT_OK
    tables = json.loads((out / "tables.json").read_text())
    for rec in tables["sets"].values():
        for vals in rec["coefficients"].values():
            assert all(v == [0.0, 0.0] for v in vals)
    first = (out / "tables.csv").read_bytes()
    run(runner, "scatter", "--preset", "zero", "--out", out)
    assert (out / "tables.csv").read_bytes() == first


def test_verify_zero(runner, tmp_path):
    out = tmp_path / "report.json"
    r = run(runner, "verify", "--preset", "zero", "--out", out)
    assert r.exit_code == EXIT_OK
    rep = json.loads(out.read_text())
    ends = next(s for s in rep["suites"] if s["name"] == "endpoints")
    assert ends["notes"]["genericity"] == "non-generic"
    assert all(s["pass"] for s in rep["suites"])


def test_verify_corrupted_tables(runner, tmp_path):
    bad = tmp_path / "t.json"
    bad.write_text('{"format": 1, "sets": {"a": {"k": "oops"}}}')
    r = run(runner, "verify", "--preset", "zero", "--tables", bad, "--suite", "trivial")
    assert r.exit_code == EXIT_INVALID


def test_verify_tables_mismatch(runner, tmp_path):
    out = tmp_path / "tables"
    run(runner, "scatter", "--preset", "zero", "--out", out)
    tables = json.loads((out / "tables.json").read_text())
    rec = tables["sets"]["unit_circle"]
    rec["coefficients"]["r1"][0] = [0.5, 0.0]
    (out / "tables.json").write_text(json.dumps(tables))
    r = run(runner, "verify", "--preset", "zero", "--tables", out / "tables.json", "--suite", "trivial")
    assert r.exit_code == EXIT_FAIL


@pytest.mark.parametrize("args", [["verify"], ["verify", "--preset", "zero", "--suite", "nope"],
                                  ["verify", "--preset", "zero", "--tol-scale", "-1"]])
def test_verify_invalid(runner, args):
    assert run(runner, *args).exit_code == EXIT_INVALID


def test_jump_export_and_recover(runner, tmp_path):
    out = tmp_path / "j.csv"
    assert run(runner, "jump-export", "--preset", "zero", "--out", out).exit_code == EXIT_OK
    assert len(out.read_text().splitlines()) == 1 + 54 * 4
    r = run(runner, "recover", "--preset", "zero")
    assert r.exit_code == EXIT_OK and json.loads(r.output)["u_b"] == 0.0
