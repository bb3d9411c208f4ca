"""Command-line interface: ``bqscat generate | scatter | verify | jump-export | recover``.

Exit codes: 0 success, 1 verification failure (including assumption
violations), 2 invalid input or unusable paths, 3 internal error.
"""
import json
import os
import sys
from dataclasses import dataclass, field, fields as dc_fields

import click
import numpy as np

from . import contour, datasets, jump, rhverify, spectral, suites
from .errors import AssumptionViolation, BqscatError, InvalidInput

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    """Options shared by all commands; a JSON config file may set any of them."""
    data: str = None
    preset: str = None
    eps: float = 1e-3
    seed: int = 0
    out: str = None
    tol_scale: float = 1.0
    n_samples: int = 30
    suites: list = field(default_factory=list)
    tables: str = None
    x: float = 1.0
    t: float = None
    per_piece: int = 4

    def validate(self):
        if not self.tol_scale > 0:
            raise InvalidInput("tol_scale must be positive")
        if self.n_samples < 1 or self.per_piece < 1:
            raise InvalidInput("sample sizes must be positive")
        if self.data and self.preset:
            raise InvalidInput("give either a dataset file or a preset, not both")
        unknown = [s for s in self.suites if s not in suites.SUITES and s != "all"]
        if unknown:
            raise InvalidInput(f"unknown suites {unknown}; choose from {sorted(suites.SUITES)} or all")
        return self

    def dataset(self):
        if self.data:
            return datasets.load(self.data)
        if self.preset:
            params = {} if self.preset == "zero" else {"eps": self.eps, "seed": self.seed}
            return datasets.from_description(datasets.preset_description(self.preset, **params))
        raise InvalidInput("no dataset: pass --data FILE or --preset NAME")

    def context(self):
        return suites.Context(self.dataset(), seed=self.seed, tol_scale=self.tol_scale,
                              n_samples=self.n_samples, x=self.x, t=self.t)


def load_config(path, overrides):
    cfg = {}
    if path:
        try:
            with open(path) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"config {path}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise InvalidInput("config must be a JSON object")
        known = {f.name for f in dc_fields(RunConfig)}
        unknown = set(cfg) - known
        if unknown:
            raise InvalidInput(f"unknown config keys {sorted(unknown)}")
    cfg.update({k: v for k, v in overrides.items() if v not in (None, ())})
    if "suites" in cfg:
        cfg["suites"] = list(cfg["suites"])
    return RunConfig(**cfg).validate()


def _writable(path):
    d = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(d):
        raise InvalidInput(f"output directory {d} does not exist")
    return path


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(_writable(path), "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InvalidInput(f"cannot write {path}: {exc.strerror}") from exc


def _out_dir(path):
    if path is None:
        raise InvalidInput("this command needs --out DIR")
    if not os.path.isdir(path):
        parent = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(parent):
            raise InvalidInput(f"output directory {parent} does not exist")
        os.mkdir(path)
    return path


def _run(fn):
    """Call fn() and translate errors into the exit-code contract."""
    try:
        code = fn()
    except InvalidInput as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INVALID
    except BqscatError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        code = EXIT_FAIL
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        code = EXIT_INTERNAL
    sys.exit(code or EXIT_OK)


def common(f):
    opts = [
        click.option("--config", "config", type=str, default=None, help="JSON file with RunConfig fields."),
        click.option("--data", type=str, default=None, help="Dataset file written by 'generate'."),
        click.option("--preset", type=click.Choice(datasets.FAMILIES), default=None),
        click.option("--eps", type=float, default=None, help="Wavepacket amplitude."),
        click.option("--seed", type=int, default=None, help="Seed for the carrier phase and the sample sets."),
        click.option("--out", type=str, default=None, help="Output file or directory."),
        click.option("--tol-scale", "tol_scale", type=float, default=None,
                     help="Multiplier applied to every tolerance."),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


@click.group()
def main():
    """Spectral data, jump matrices and verification reports for initial-boundary data."""


@main.command()
@common
@click.option("--samples/--no-samples", default=False, help="Also store sampled traces.")
def generate(config, samples, **kw):
    """Write a dataset file for a preset."""
    def go():
        cfg = load_config(config, kw)
        if cfg.preset is None:
            raise InvalidInput("generate needs --preset")
        params = {} if cfg.preset == "zero" else {"eps": cfg.eps, "seed": cfg.seed}
        desc = datasets.preset_description(cfg.preset, **params)
        if samples:
            desc["samples"] = datasets.sample_traces(datasets.from_description(desc).source)
        _write(datasets.dumps(desc), cfg.out)
    _run(go)


def scatter_sets(rng, n, per_piece):
    """Named k sets for the tables: the unit circle and every contour piece."""
    sets = {"unit_circle": suites.circle_points(rng, n)}
    for p in contour.ALL_PIECES:
        sets[f"piece {p.id}"] = np.array(contour.sample_piece(p, per_piece, ray_cutoff=3.0))
    return sets


@main.command()
@common
def scatter(config, **kw):
    """Compute spectral tables (JSON, CSV) and the assumption report."""
    def go():
        cfg = load_config(config, kw)
        out = _out_dir(cfg.out)
        ctx = cfg.context()
        scat = ctx.scattering()
        tables = spectral.build_tables(scat, scatter_sets(ctx.rng(10), cfg.n_samples, cfg.per_piece))
        _write(tables.to_json() + "\n", os.path.join(out, "tables.json"))
        _write(tables.to_csv(), os.path.join(out, "tables.csv"))
        result = suites.suite_endpoints(ctx)
        _write(suites.report(ctx, [result]), os.path.join(out, "assumptions.json"))
        soliton = next(i for i in result.identities if i.name == "no vanishing denominators")
        if not soliton.passed:
            raise AssumptionViolation("a spectral denominator vanishes; see assumptions.json")
    _run(go)


def _check_tables(ctx, path):
    """Identity comparing a saved table against a fresh evaluation of the dataset."""
    try:
        with open(path) as fh:
            tables = spectral.SpectralTables.from_json(fh.read())
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from exc
    scat = ctx.scattering()
    res = []
    for rec in tables.sets.values():
        if not rec["coeffs"]:
            continue
        fresh = scat.coefficients(tuple(rec["coeffs"]), rec["k"])
        for name, v in rec["coeffs"].items():
            res.append(np.nan_to_num(np.abs(v - fresh[name]), nan=0.0))
    suite = suites.SuiteResult("tables")
    suites.check(suite, "tables match the dataset", "stored coefficients against recomputation",
                 np.concatenate(res) if res else [], 1e-10 * ctx.tol_scale)
    return suite


@main.command()
@common
@click.option("--suite", "suite_names", multiple=True,
              help=f"Suite to run (repeatable): {', '.join(suites.SUITES)} or all.")
@click.option("--tables", type=str, default=None, help="Tables from 'scatter' to check against the data.")
def verify(config, suite_names, tables, **kw):
    """Run verification suites and write a JSON report."""
    def go():
        cfg = load_config(config, dict(kw, suites=suite_names, tables=tables))
        if cfg.out:
            _writable(cfg.out)
        ctx = cfg.context()
        names = None
        if cfg.suites:
            names = list(suites.SUITES) if "all" in cfg.suites else cfg.suites
        pre = [_check_tables(ctx, cfg.tables)] if cfg.tables else []
        results = pre + suites.run(ctx, names)
        _write(suites.report(ctx, results), cfg.out)
        for r in results:
            click.echo(f"{r.name}: {'pass' if r.passed else 'FAIL'}", err=True)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    _run(go)


@main.command("jump-export")
@common
@click.option("--x", type=float, default=0.0)
@click.option("--t", type=float, default=0.0)
@click.option("--per-piece", "per_piece", type=int, default=None)
def jump_export(config, x, t, **kw):
    """Write the dressed jump matrices on every contour piece as CSV."""
    def go():
        cfg = load_config(config, kw)
        ctx = cfg.context()
        samples = {p.id: np.array(contour.sample_piece(p, cfg.per_piece, ray_cutoff=3.0))
                   for p in contour.ALL_PIECES}
        _write(jump.jump_csv(jump.JumpEvaluator(ctx.scattering()), samples, x, t), cfg.out)
    _run(go)


@main.command()
@common
@click.option("--x", type=float, default=None)
@click.option("--t", type=float, default=None)
def recover(config, **kw):
    """Recover u and v at (x, t) from the Riemann-Hilbert solution."""
    def go():
        cfg = load_config(config, kw)
        ctx = cfg.context()
        M = rhverify.SectionalM(ctx.scattering())
        rec, _ = rhverify.recover_u(M, ctx.x, ctx.t)
        v, _ = rhverify.recover_v(M, ctx.x, ctx.t)
        out = {"format": suites.REPORT_FORMAT, "x": ctx.x, "t": ctx.t,
               "u_a": rec.u_a, "u_b": rec.u_b, "v": v}
        try:
            f = ctx.source.x_fields(ctx.t, np.array([ctx.x]))
            out["u_data"], out["v_data"] = float(f["u"][0]), float(f["v"][0])
        except InvalidInput:
            pass
        _write(json.dumps(suites._jsonable(out), indent=1, sort_keys=True) + "\n", cfg.out)
    _run(go)


if __name__ == "__main__":
    main()
