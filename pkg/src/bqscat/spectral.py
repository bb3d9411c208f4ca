"""Spectral functions, reflection coefficients and the checks built on them."""
import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import contour
from .algebra import MAT_A, MAT_B, OMEGA, cofactor, conj, conj_exp, det, inverse
from .errors import AssumptionViolation, CoefficientUnavailable, InvalidInput
from .evolve import Eigensolver, SolverSettings
from .lax import distance_to_qhat, z_values

DENOMINATOR_TOL = 1e-10
APPROACH_DISTANCES = (1e-1, 5e-2, 2.5e-2)
SMALL = ("r1", "rt1", "r2", "rt2", "rh2", "rc2")
BIG = ("R1", "R2", "Rt2")
COEFFICIENTS = SMALL + BIG


def _key(k):
    return (round(k.real, 12), round(k.imag, 12))


class Scattering:
    """Spectral functions of one dataset with a per-k cache.

    s and sA hold only the columns inside their boundedness domains (NaN
    elsewhere).  S and SA are entire; their columns are computed wherever
    they are bounded on x = 0 or grow only moderately along the t-leg.
    """

    def __init__(self, source, settings=None):
        self.source = source
        self.solver = Eigensolver(source, settings or SolverSettings())
        self._cache = {}
        self._full_cache = {}

    def matrices(self, k, full=False):
        """s, S, sA, SA at the points k.

        With ``full`` the columns of s and sA outside their domains are
        integrated as well.  They are finite because the data are treated as
        vanishing beyond x_max, but they may be exponentially large.
        """
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        cache = self._full_cache if full else self._cache
        cols = "all" if full else None
        missing = []
        seen = set()
        for kk in k:
            key = _key(kk)
            if key not in cache and key not in seen:
                missing.append(kk)
                seen.add(key)
        if missing:
            km = np.array(missing)
            sol = self.solver
            s = sol.solve("mu3", 0.0, 0.0, km, columns=cols).m
            sA = sol.solve("mu3A", 0.0, 0.0, km, columns=cols).m
            S = sol.solve("mu1", 0.0, 0.0, km, columns="x0").m
            SA = sol.solve("mu1A", 0.0, 0.0, km, columns="x0").m
            for i, kk in enumerate(km):
                cache[_key(kk)] = (s[i], S[i], sA[i], SA[i])
        rows = [cache[_key(kk)] for kk in k]
        names = ("s", "S", "sA", "SA")
        return {n: np.array([r[j] for r in rows]) for j, n in enumerate(names)}

    def coefficients(self, names, k, check=True):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        mats = self.matrices(k)
        return {n: coefficient_values(n, mats, check) for n in names}

    def coefficient(self, name, k, check=True):
        return self.coefficients((name,), k, check)[name]


def products(mats):
    """The combinations ``S^{-1} s`` and ``S^T sA``.

    ``S^{-1}`` is taken as ``(SA)^T``: the adjoint boundary eigenfunction is
    the inverse transpose of S, and its columns stay bounded exactly where
    the entries of the products are needed, while the cofactors of S would
    mix in exponentially large columns at large |k|.
    """
    SA_T = np.swapaxes(mats["SA"], -1, -2)
    return SA_T @ mats["s"], np.swapaxes(mats["S"], -1, -2) @ mats["sA"]


def _ratio(num, den, name, check):
    den = np.asarray(den)
    if np.any(np.isnan(num)) or np.any(np.isnan(den)):
        raise CoefficientUnavailable(f"{name}: required column outside its domain")
    if check and np.any(np.abs(den) < DENOMINATOR_TOL):
        raise AssumptionViolation(f"{name}: denominator below {DENOMINATOR_TOL}")
    return num / den


def coefficient_parts(name, mats):
    """Numerator and denominator of a reflection coefficient (1-based entries)."""
    s, S, sA, SA = mats["s"], mats["S"], mats["sA"], mats["SA"]
    Ss, Ts = products(mats)

    def e(m, i, j):
        return m[..., i - 1, j - 1]

    if name == "r1":
        return e(s, 1, 2), e(s, 1, 1)
    if name == "rt1":
        return e(Ss, 1, 2), e(Ss, 1, 1)
    if name == "r2":
        return e(sA, 1, 2), e(sA, 1, 1)
    if name == "rt2":
        return e(Ts, 1, 2), e(Ts, 1, 1)
    if name == "rh2":
        return (e(sA, 1, 2) * e(SA, 3, 3) - e(sA, 3, 2) * e(SA, 1, 3),
                e(sA, 1, 1) * e(SA, 3, 3) - e(sA, 3, 1) * e(SA, 1, 3))
    if name == "rc2":
        return (e(sA, 1, 2) * e(SA, 2, 2) - e(sA, 2, 2) * e(SA, 1, 2),
                e(sA, 1, 1) * e(SA, 2, 2) - e(sA, 2, 1) * e(SA, 1, 2))
    if name == "R1":
        return (e(sA, 2, 3) * e(SA, 3, 1) - e(sA, 3, 3) * e(SA, 2, 1),
                e(s, 1, 1) * e(Ss, 1, 1))
    if name == "R2":
        return (e(SA, 1, 2) * e(s, 3, 3),
                e(sA, 1, 1) * (e(sA, 1, 1) * e(SA, 2, 2) - e(sA, 2, 1) * e(SA, 1, 2)))
    if name == "Rt2":
        return (e(S, 2, 1) * e(Ss, 3, 3),
                e(Ts, 1, 1) * (e(sA, 1, 1) * e(SA, 3, 3) - e(sA, 3, 1) * e(SA, 1, 3)))
    raise KeyError(name)


def coefficient_values(name, mats, check=True):
    num, den = coefficient_parts(name, mats)
    return _ratio(num, den, name, check)


# -- domains of definition ---------------------------------------------------

def _angle(k):
    return np.rad2deg(np.angle(k)) % 360


def _in_sector(k, a0, a1, outside, tol=1e-9):
    r, a = abs(k), _angle(k)
    if abs(r - 1) < tol:
        return True
    if outside != (r > 1):
        return False
    return (a0 - 1e-7 <= a <= a1 + 1e-7)


def coefficient_domain(name, k, tol=1e-9):
    """True when k lies in the stated domain of definition of the coefficient."""
    if distance_to_qhat(k) == 0:
        return False
    r, a = abs(k), _angle(k)
    on_circle = abs(r - 1) < tol
    if name in ("r1", "rt1"):
        return on_circle or _on_ray(k, 90, r < 1) or _on_ray(k, 270, r > 1)
    if name in ("r2", "rt2", "rh2", "rc2"):
        return on_circle or _on_ray(k, 90, r > 1) or _on_ray(k, 270, r < 1)
    if name == "R1":
        return _in_sector(k, 270, 330, True) or _in_sector(k, 90, 150, False)
    if name in ("R2", "Rt2"):
        return _in_sector(k, 90, 150, True) or _in_sector(k, 270, 330, False)
    raise KeyError(name)


def _on_ray(k, deg, cond, tol=1e-9):
    return bool(cond) and abs(k - abs(k) * np.exp(1j * np.deg2rad(deg))) < tol * max(1, abs(k))


# -- tables --------------------------------------------------------------------

@dataclass
class SpectralTables:
    """Named sample sets with their spectral matrices and coefficients."""
    sets: dict = field(default_factory=dict)

    def add(self, name, k, mats, coeffs):
        self.sets[name] = {"k": np.asarray(k), "mats": mats, "coeffs": coeffs}

    def to_json(self):
        def cplx(a):
            a = np.asarray(a)
            return [[None if not np.isfinite(v) else float(v.real),
                     None if not np.isfinite(v) else float(v.imag)] for v in a.ravel()]

        out = {"format": 1, "sets": {}}
        for name in sorted(self.sets):
            rec = self.sets[name]
            out["sets"][name] = {
                "k": cplx(rec["k"]),
                "matrices": {m: cplx(rec["mats"][m]) for m in sorted(rec["mats"])},
                "coefficients": {c: cplx(v) for c, v in sorted(rec["coeffs"].items())},
            }
        return json.dumps(out, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        """Parse the output of :meth:`to_json`; raises InvalidInput on schema errors."""
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"tables are not valid JSON ({exc})") from exc
        if not isinstance(obj, dict) or obj.get("format") != 1 or not isinstance(obj.get("sets"), dict):
            raise InvalidInput("tables need 'format': 1 and a 'sets' object")

        def arr(a, where, n=None):
            try:
                v = np.array([np.nan if p[0] is None else complex(p[0], p[1]) for p in a])
            except (TypeError, ValueError, IndexError) as exc:
                raise InvalidInput(f"{where}: expected a list of [re, im] pairs") from exc
            if n is not None and v.size != n:
                raise InvalidInput(f"{where}: expected {n} values, found {v.size}")
            return v

        tables = cls()
        for name, rec in obj["sets"].items():
            if not isinstance(rec, dict) or not {"k", "matrices", "coefficients"} <= set(rec):
                raise InvalidInput(f"set {name!r}: needs k, matrices and coefficients")
            k = arr(rec["k"], f"{name}.k")
            mats = {m: arr(v, f"{name}.{m}", 9 * len(k)).reshape(len(k), 3, 3)
                    for m, v in rec["matrices"].items()}
            unknown = set(rec["coefficients"]) - set(COEFFICIENTS)
            if unknown:
                raise InvalidInput(f"set {name!r}: unknown coefficients {sorted(unknown)}")
            coeffs = {c: arr(v, f"{name}.{c}", len(k)) for c, v in rec["coefficients"].items()}
            tables.add(name, k, mats, coeffs)
        return tables

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k_re", "k_im", "name", "value_re", "value_im"])
        for name in sorted(self.sets):
            rec = self.sets[name]
            for c in sorted(rec["coeffs"]):
                for kk, v in zip(rec["k"], rec["coeffs"][c]):
                    w.writerow([f"{kk.real:.15e}", f"{kk.imag:.15e}", c,
                                f"{v.real:.15e}", f"{v.imag:.15e}"])
        return buf.getvalue()


def spectral_functions(scat, k):
    """s, S, sA, SA at the points k (dict of arrays)."""
    return scat.matrices(k)


def reflection_small(scat, k, check=True):
    return scat.coefficients(SMALL, k, check)


def reflection_big(scat, k, check=True):
    return scat.coefficients(BIG, k, check)


def build_tables(scat, sample_sets):
    """Evaluate every coefficient defined on each named set of k values."""
    tables = SpectralTables()
    for name, ks in sample_sets.items():
        ks = np.asarray(ks, dtype=complex)
        mats = scat.matrices(ks)
        coeffs = {}
        for c in COEFFICIENTS:
            if all(coefficient_domain(c, kk) for kk in ks):
                coeffs[c] = coefficient_values(c, mats)
        tables.add(name, ks, mats, coeffs)
    return tables


# -- symmetry and algebraic identities ------------------------------------------

def symmetry_residuals(mats_k, mats_wk, mats_ik, name):
    """Residuals of ``X(k) = A X(wk) A^{-1}`` and ``X(k) = B X(1/k) B``.

    Entries that are NaN on either side (columns outside the domain) are
    ignored.
    """
    a = mats_k[name]
    ra = np.abs(a - conj(MAT_A, mats_wk[name]))
    rb = np.abs(a - conj(MAT_B, mats_ik[name]))
    return float(np.nanmax(ra)) if np.isfinite(ra).any() else 0.0, \
        float(np.nanmax(rb)) if np.isfinite(rb).any() else 0.0


def cofactor_residual(mats):
    """``max |sA - cofactor(s)|`` (meaningful where all columns exist)."""
    return float(np.max(np.abs(mats["sA"] - cofactor(mats["s"]))))


ROTATIONS = {
    "k": lambda k: k, "wk": lambda k: OMEGA * k, "w2k": lambda k: OMEGA**2 * k,
    "ik": lambda k: 1 / k, "iwk": lambda k: 1 / (OMEGA * k), "iw2k": lambda k: 1 / (OMEGA**2 * k),
}


def unit_circle_relations(scat, k):
    """Residuals of the eight relations between reflection coefficients on the circle.

    Returns a dict name -> array of absolute residuals at the points k.
    """
    k = np.asarray(k, dtype=complex)
    c = {}
    for tag, f in ROTATIONS.items():
        c[tag] = scat.coefficients(COEFFICIENTS, f(k))
    g = lambda n, tag: c[tag][n]  # noqa: E731
    res = {}
    res["r1r2"] = g("r1", "iwk") + g("r2", "wk") + g("r1", "w2k") * g("r2", "ik")
    res["rt1rt2"] = g("rt1", "iwk") + g("rt2", "wk") + g("rt1", "w2k") * g("rt2", "ik")
    res["hat_zero"] = g("r2", "k") - g("rh2", "k") + g("r1", "wk") * (g("r2", "iw2k") - g("rc2", "iw2k"))
    res["check_zero"] = g("rt2", "k") - g("rc2", "k") + g("rt1", "wk") * (g("rt2", "iw2k") - g("rh2", "iw2k"))
    res["R1"] = g("R1", "k") - (g("r1", "k") - g("rt1", "k"))
    res["R2"] = g("R2", "k") - (g("r2", "k") - g("rc2", "k"))
    res["Rt2"] = g("Rt2", "k") - (g("rt2", "k") - g("rh2", "k"))
    # rewritten forms, as cleared-denominator residuals
    rew = [
        g("r2", "k") * (1 - g("r1", "wk") * g("r1", "iwk")) - (g("r1", "wk") * g("r1", "w2k") - g("r1", "ik")),
        g("r1", "k") * (1 - g("r2", "wk") * g("r2", "iwk")) - (g("r2", "wk") * g("r2", "w2k") - g("r2", "ik")),
        g("rt2", "k") * (1 - g("rt1", "wk") * g("rt1", "iwk")) - (g("rt1", "wk") * g("rt1", "w2k") - g("rt1", "ik")),
        g("rt1", "k") * (1 - g("rt2", "wk") * g("rt2", "iwk")) - (g("rt2", "wk") * g("rt2", "w2k") - g("rt2", "ik")),
        g("rh2", "k") * (1 - g("r1", "wk") * g("rt1", "iwk")) - (g("r1", "wk") * g("rt1", "w2k") - g("r1", "ik")),
        g("rc2", "k") * (1 - g("rt1", "wk") * g("r1", "iwk")) - (g("rt1", "wk") * g("r1", "w2k") - g("rt1", "ik")),
    ]
    res["rewritten"] = np.max(np.abs(np.array(rew)), axis=0)
    return {n: np.abs(v) for n, v in res.items()}


def global_relation_residual(scat, k, adjoint=False):
    """``max |(S^{-1}s)(k) - e^{-T Z^} mu3(0,T,k)|`` over the computed columns.

    The adjoint version compares ``(S^T sA)(k)`` with ``e^{T Z^} mu3A(0,T,k)``.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    T = scat.source.T
    mats = scat.matrices(k)
    Ss, Ts = products(mats)
    z = z_values(k)
    if adjoint:
        m3 = scat.solver.solve("mu3A", 0.0, T, k).m
        rhs = conj_exp(T * z, m3)
        lhs = Ts
    else:
        m3 = scat.solver.solve("mu3", 0.0, T, k).m
        rhs = conj_exp(-T * z, m3)
        lhs = Ss
    r = np.abs(lhs - rhs)
    return np.nanmax(r.reshape(len(k), -1), axis=1)


# -- limits at k = +-1 ------------------------------------------------------------

def _approach_points(kstar, distances):
    """Points on the unit circle at chord distances from kstar, on both sides.

    Ordered from the farthest to the closest pair.
    """
    theta = 2 * np.arcsin(np.asarray(distances) / 2)
    return (kstar * np.exp(1j * np.outer(theta, (1, -1)))).ravel()


def richardson(q, values):
    """Polynomial extrapolation to q = 0 from samples at complex offsets q.

    Returns the limit from the full interpolant and a noise estimate given by
    the change when the farthest pair of samples is dropped.
    """
    q = np.asarray(q)
    values = np.asarray(values)
    full = np.linalg.solve(np.vander(q, len(q), increasing=True), values)[0]
    m = len(q) - 2
    reduced = np.linalg.solve(np.vander(q[2:], m, increasing=True), values[2:])[0]
    return full, abs(full - reduced)


def regularised_limit(scat, parts, kstar, orders, distances=APPROACH_DISTANCES):
    """Limit at kstar of a quotient num/den of pole-type functions.

    ``parts(mats)`` returns (num, den); ``orders`` gives their pole orders
    (p_num, p_den).  Each of ``(k - kstar)^p f`` is extrapolated to the
    endpoint separately and the quotient of the limits is returned along
    with a noise estimate.
    """
    k = _approach_points(kstar, distances)
    mats = scat.matrices(k)
    num, den = parts(mats)
    q = k - kstar
    pn, pd = orders
    ln, en = richardson(q, q**pn * num)
    ld, ed = richardson(q, q**pd * den)
    lim = ln / ld
    # abs(lim) * (en / |ln| + ed / |ld|), written to stay finite when ln = 0
    return complex(lim), float((en + abs(lim) * ed) / abs(ld))


# Assumption on generic behaviour at +-1: (label, pole order, function of mats)
def _E(m, i, j):
    return m[..., i - 1, j - 1]


def _generic_list():
    def sA_comb(a, b, c, d):
        # sA_a SA_b - sA_c SA_d, entries given as (i, j) pairs
        return lambda m: _E(m["sA"], *a) * _E(m["SA"], *b) - _E(m["sA"], *c) * _E(m["SA"], *d)

    def Ss(i, j):
        return lambda m: _E(products(m)[0], i, j)

    def Ts(i, j):
        return lambda m: _E(products(m)[1], i, j)

    ent = lambda name, i, j: (lambda m: _E(m[name], i, j))  # noqa: E731
    return [
        ("s11", 1, ent("s", 1, 1)), ("s13", 1, ent("s", 1, 3)),
        ("s31", 0, ent("s", 3, 1)), ("s33", 0, ent("s", 3, 3)),
        ("(S^-1 s)11", 1, Ss(1, 1)), ("(S^-1 s)13", 1, Ss(1, 3)),
        ("(S^-1 s)31", 0, Ss(3, 1)), ("(S^-1 s)33", 0, Ss(3, 3)),
        ("sA11", 1, ent("sA", 1, 1)), ("sA31", 1, ent("sA", 3, 1)),
        ("sA13", 0, ent("sA", 1, 3)), ("sA33", 0, ent("sA", 3, 3)),
        ("(S^T sA)11", 1, Ts(1, 1)), ("(S^T sA)31", 1, Ts(3, 1)),
        ("(S^T sA)13", 0, Ts(1, 3)), ("(S^T sA)33", 0, Ts(3, 3)),
        ("sA11 SA33 - sA31 SA13", 1, sA_comb((1, 1), (3, 3), (3, 1), (1, 3))),
        ("sA11 SA22 - sA21 SA12", 1, sA_comb((1, 1), (2, 2), (2, 1), (1, 2))),
        ("sA31 SA22 - sA21 SA32", 2, sA_comb((3, 1), (2, 2), (2, 1), (3, 2))),
        ("sA33 SA22 - sA23 SA32", 1, sA_comb((3, 3), (2, 2), (2, 3), (3, 2))),
        ("sA31 SA11 - sA11 SA31", 2, sA_comb((3, 1), (1, 1), (1, 1), (3, 1))),
        ("sA33 SA11 - sA13 SA31", 1, sA_comb((3, 3), (1, 1), (1, 3), (3, 1))),
        ("sA23 SA11 - sA13 SA21", 0, sA_comb((2, 3), (1, 1), (1, 3), (2, 1))),
        ("sA22 SA11 - sA12 SA21", 1, sA_comb((2, 2), (1, 1), (1, 2), (2, 1))),
        ("sA23 SA33 - sA33 SA23", 0, sA_comb((2, 3), (3, 3), (3, 3), (2, 3))),
        ("sA22 SA33 - sA32 SA23", 1, sA_comb((2, 2), (3, 3), (3, 2), (2, 3))),
    ]


GENERIC_COMBINATIONS = _generic_list()


def pole_order_limits(scat, kstar, distances=APPROACH_DISTANCES):
    """Extrapolated ``lim (k - kstar)^p f`` for every generic-behaviour combination.

    Returns a list of (label, order, limit, noise).
    """
    k = _approach_points(kstar, distances)
    mats = scat.matrices(k)
    q = k - kstar
    out = []
    for label, p, f in GENERIC_COMBINATIONS:
        lim, noise = richardson(q, q**p * f(mats))
        out.append((label, p, complex(lim), float(noise)))
    return out


def check_assumptions(scat, sample_k, distances=APPROACH_DISTANCES):
    """Report on the no-soliton denominators and the generic behaviour at +-1.

    The denominators are evaluated on the supplied sample points wherever
    their columns exist.  Returns a dict that the reporting layer turns into
    report entries.
    """
    sample_k = np.asarray(sample_k, dtype=complex)
    mats = scat.matrices(sample_k)
    Ss, Ts = products(mats)
    dens = {
        "s11": _E(mats["s"], 1, 1), "(S^-1 s)11": _E(Ss, 1, 1),
        "sA11": _E(mats["sA"], 1, 1), "(S^T sA)11": _E(Ts, 1, 1),
        "sA11 SA33 - sA31 SA13": _E(mats["sA"], 1, 1) * _E(mats["SA"], 3, 3)
        - _E(mats["sA"], 3, 1) * _E(mats["SA"], 1, 3),
    }
    minima = {n: float(np.nanmin(np.abs(v))) if np.isfinite(v).any() else float("nan")
              for n, v in dens.items()}
    generic = {}
    for kstar in (1.0, -1.0):
        generic[kstar] = pole_order_limits(scat, kstar, distances)
    is_generic = all(abs(lim) > 10 * noise and abs(lim) > 1e-12
                     for rows in generic.values() for (_, _, lim, noise) in rows)
    no_solitons = all(not np.isfinite(v) or v > DENOMINATOR_TOL for v in minima.values())
    return {"min_denominators": minima, "generic": generic,
            "is_generic": is_generic, "no_solitons": no_solitons}
