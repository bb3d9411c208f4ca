"""Dataset files: closed-form presets and sampled data in one JSON schema.

Every file carries ``"format": 1``.  A *preset* file names a family and its
parameters and may also hold samples of the traces for external use::

    {"format": 1, "preset": {"family": "wavepacket", "params": {...}},
     "samples": {...}}

A *samples* file has no preset and holds the traces, optionally with a full
field grid::

    {"format": 1,
     "samples": {"initial": {"grid_x": [...], "u0": [...], "u1": [...], "v0": [...]},
                 "boundary": {"grid_t": [...], "ut0": [...], "ut1": [...],
                              "ut2": [...], "ut3": [...], "vt0": [...]},
                 "grid": {"x": [...], "t": [...], "u": [[...]], ...}}}

When both are present the preset is used, since it is exact.
"""
import json
from dataclasses import dataclass, fields

import numpy as np

from .errors import InvalidInput
from .fields import BoundaryData, FieldGrid, InitialData, SampledSource, ZeroSource
from .oracle import WavepacketSource, WavepacketSpec

FORMAT = 1
FAMILIES = ("zero", "wavepacket")
ZERO_DEFAULTS = {"T": 1.0, "x_max": 10.0}

_INITIAL = ("grid_x", "u0", "u1", "v0")
_BOUNDARY = ("grid_t", "ut0", "ut1", "ut2", "ut3", "vt0")
_GRID = ("x", "t", "u", "v", "u_x", "u_xx", "v_x")


@dataclass
class Dataset:
    """A field source together with the description it was built from."""
    source: object
    description: dict

    @property
    def family(self):
        return self.description.get("preset", {}).get("family", "samples")

    @property
    def eps(self):
        """Amplitude of a preset (0 for zero data, None for raw samples)."""
        if self.family == "zero":
            return 0.0
        if self.family == "wavepacket":
            return float(self.description["preset"]["params"]["eps"])
        return None


def wavepacket_params(eps=1e-3, seed=None, **overrides):
    """Parameters of the wavepacket preset; a seed draws the carrier phase."""
    params = WavepacketSpec().to_dict()
    params.update(overrides)
    params["eps"] = float(eps)
    if seed is not None:
        params["phase"] = float(np.random.default_rng(seed).uniform(0.0, 2 * np.pi))
    WavepacketSpec(**params)  # validates the band and the amplitude
    return params


def preset_description(family, **params):
    if family not in FAMILIES:
        raise InvalidInput(f"unknown preset {family!r}; choose from {', '.join(FAMILIES)}")
    if family == "zero":
        merged = dict(ZERO_DEFAULTS)
        merged.update({k: float(v) for k, v in params.items() if k in ZERO_DEFAULTS})
        return {"format": FORMAT, "preset": {"family": "zero", "params": merged}}
    return {"format": FORMAT, "preset": {"family": "wavepacket", "params": wavepacket_params(**params)}}


def _floats(a):
    return [float(v) for v in np.asarray(a, dtype=float).ravel()]


def sample_traces(source, nx=None, nt=None):
    """Traces of a closed-form source on uniform grids, as a samples block."""
    spec = getattr(source, "spec", None)
    nx = nx or (spec.nx if spec else 201)
    nt = nt or (spec.nt if spec else 101)
    x = np.linspace(0.0, source.x_max, nx)
    t = np.linspace(0.0, source.T, nt)
    if isinstance(source, WavepacketSource):
        f0 = source.evaluate(("u", "u_t", "v"), x, 0.0)
        fb = source.evaluate(("u", "u_x", "u_xx", "v", "v_x", "v_t"), np.zeros_like(t), t)
        ut3 = fb["v_t"] - fb["u_x"] - 2 * fb["u"] * fb["u_x"]
        initial = {"grid_x": x, "u0": f0["u"], "u1": f0["u_t"], "v0": f0["v"]}
        boundary = {"grid_t": t, "ut0": fb["u"], "ut1": fb["u_x"], "ut2": fb["u_xx"],
                    "ut3": ut3, "vt0": fb["v"]}
    else:
        zx, zt = np.zeros(nx), np.zeros(nt)
        initial = {"grid_x": x, "u0": zx, "u1": zx, "v0": zx}
        boundary = {"grid_t": t, "ut0": zt, "ut1": zt, "ut2": zt, "ut3": zt, "vt0": zt}
    return {"initial": {k: _floats(v) for k, v in initial.items()},
            "boundary": {k: _floats(v) for k, v in boundary.items()}}


def dumps(description):
    """Canonical JSON text (sorted keys, shortest round-trip floats)."""
    return json.dumps(description, sort_keys=True, separators=(",", ":")) + "\n"


def _array(block, name, where):
    if name not in block:
        raise InvalidInput(f"{where}: missing field {name!r}")
    try:
        a = np.asarray(block[name], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{where}.{name}: not a numeric array") from exc
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{where}.{name}: non-finite values")
    return a


def _source_from_samples(samples):
    if not isinstance(samples, dict) or "initial" not in samples or "boundary" not in samples:
        raise InvalidInput("samples need 'initial' and 'boundary' blocks")
    ini = {n: _array(samples["initial"], n, "initial") for n in _INITIAL}
    bnd = {n: _array(samples["boundary"], n, "boundary") for n in _BOUNDARY}
    if any(len(ini[n]) != len(ini["grid_x"]) for n in _INITIAL):
        raise InvalidInput("initial arrays differ in length")
    if any(len(bnd[n]) != len(bnd["grid_t"]) for n in _BOUNDARY):
        raise InvalidInput("boundary arrays differ in length")
    if len(ini["grid_x"]) < 7 or len(bnd["grid_t"]) < 7:
        raise InvalidInput("grids need at least 7 points")
    if ini["grid_x"][0] != 0.0 or bnd["grid_t"][0] != 0.0:
        raise InvalidInput("grids must start at 0")
    initial = InitialData(**ini)
    boundary = BoundaryData(**bnd)
    grid = None
    if samples.get("grid") is not None:
        g = {n: _array(samples["grid"], n, "grid") for n in _GRID}
        shape = (len(g["t"]), len(g["x"]))
        if any(g[n].shape != shape for n in _GRID[2:]):
            raise InvalidInput(f"grid fields must have shape {shape}")
        grid = FieldGrid(**g)
    return SampledSource(initial, boundary, grid)


def from_description(desc):
    """Build a Dataset from a parsed file; raises InvalidInput on schema errors."""
    if not isinstance(desc, dict):
        raise InvalidInput("dataset must be a JSON object")
    if desc.get("format") != FORMAT:
        raise InvalidInput(f"unsupported dataset format {desc.get('format')!r} (expected {FORMAT})")
    preset = desc.get("preset")
    if preset is not None:
        family = preset.get("family") if isinstance(preset, dict) else None
        params = preset.get("params", {}) if isinstance(preset, dict) else {}
        if family == "zero":
            return Dataset(ZeroSource(params.get("x_max", ZERO_DEFAULTS["x_max"]),
                                      params.get("T", ZERO_DEFAULTS["T"])), desc)
        if family == "wavepacket":
            known = {f.name for f in fields(WavepacketSpec)}
            unknown = set(params) - known
            if unknown:
                raise InvalidInput(f"unknown wavepacket parameters: {sorted(unknown)}")
            try:
                spec = WavepacketSpec(**params)
            except TypeError as exc:
                raise InvalidInput(str(exc)) from exc
            return Dataset(WavepacketSource(spec), desc)
        raise InvalidInput(f"unknown preset family {family!r}")
    if "samples" in desc:
        return Dataset(_source_from_samples(desc["samples"]), desc)
    raise InvalidInput("dataset has neither a preset nor samples")


def load(path):
    try:
        with open(path) as fh:
            desc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from exc
    return from_description(desc)


def save(desc, path):
    with open(path, "w") as fh:
        fh.write(dumps(desc))
