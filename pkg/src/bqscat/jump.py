"""The jump matrix on every contour piece, its dressing and its cross-checks.

The 54 undressed matrices live in :mod:`bqscat.vtable` as expression
strings over the reflection coefficients.  Each string is parsed once into
a Python AST and interpreted by a small evaluator that knows only the
operators ``+ - * /``, numeric constants, and calls ``name(arg)`` where
``arg`` is one of ``k, 1/k, w*k, w2*k, 1/(w*k), 1/(w2*k)``.

An argument is stored as a pair (a, s) meaning ``k -> w^a k^s``, so nested
helper calls such as ``h(w*k)`` compose exactly.
"""
import ast
import csv
import io
from functools import lru_cache

import numpy as np

from . import contour
from .algebra import MAT_A, MAT_B, OMEGA, conj, conj_exp, det, inverse
from .errors import AssumptionViolation, CoefficientUnavailable, OnBoundary
from .lax import l_values, z_values
from .spectral import COEFFICIENTS, coefficient_domain, products
from .vtable import VTILDE

ARGUMENTS = {
    "k": (0, 1), "1/k": (0, -1), "w*k": (1, 1), "w2*k": (2, 1),
    "1/(w*k)": (2, -1), "1/(w2*k)": (1, -1),
}

HELPERS = {
    "h": "-R1(w2*k)*r2(1/k)",
    "g": "-r2(k)*(R1(1/(w*k)) + R1(w2*k)*rt2(1/k))",
    "ht": "R1(w2*k)*rt2(1/k)",
    "gt": "rt2(k)*(R1(1/(w*k)) + R1(w2*k)*r2(1/k))",
    "f1": "1 + r1(1/(w2*k))*r2(1/(w2*k)) + r1(k)*r2(k)",
    "f2": "1 + rt1(1/(w2*k))*rt2(1/(w2*k)) + rt1(k)*rt2(k)",
    "f3": "1 + rt1(1/(w2*k))*rc2(1/(w2*k)) - rh2(k)*(r2(1/k) + rt1(1/(w2*k))*r2(w*k))",
    "f4": "1 + r1(1/(w2*k))*rh2(1/(w2*k)) - rc2(k)*(rt2(1/k) + r1(1/(w2*k))*rt2(w*k))",
}

# The alternative displayed forms of f1 and f2, used as consistency checks.
ALTERNATIVES = {
    "f1": (
        "1 + r1(1/(w2*k))*r2(1/(w2*k)) - r2(k)*(r2(1/k) + r1(1/(w2*k))*r2(w*k))",
        "1 + r1(1/(w2*k))*r2(1/(w2*k)) - r2(k)*(rh2(1/k) + r1(1/(w2*k))*rc2(w*k))",
    ),
    "f2": (
        "1 + rt1(1/(w2*k))*rt2(1/(w2*k)) - rt2(k)*(rt2(1/k) + rt1(1/(w2*k))*rt2(w*k))",
        "1 + rt1(1/(w2*k))*rt2(1/(w2*k)) - rt2(k)*(rc2(1/k) + rt1(1/(w2*k))*rh2(w*k))",
    ),
}


def compose(context, arg):
    """Argument ``arg`` of a call evaluated at the point ``context(k)``.

    With context (a1, s1) and arg (a2, s2) the result is
    ``w^a2 (w^a1 k^s1)^s2 = w^(a2 + s2 a1) k^(s1 s2)``.
    """
    a1, s1 = context
    a2, s2 = arg
    return ((a2 + s2 * a1) % 3, s1 * s2)


def apply_argument(tr, k):
    a, s = tr
    return OMEGA**a * np.asarray(k, dtype=complex) ** s


@lru_cache(maxsize=None)
def parse(expr):
    return ast.parse(expr, mode="eval").body


def _argument(node):
    key = ast.unparse(node).replace(" ", "")
    if key not in ARGUMENTS:
        raise ValueError(f"unsupported argument {key!r}")
    return ARGUMENTS[key]


def requirements(expr, tr=(0, 1), out=None):
    """Set of (coefficient, argument) pairs an expression needs."""
    out = set() if out is None else out
    for node in ast.walk(parse(expr)):
        if isinstance(node, ast.Call):
            name = node.func.id
            sub = compose(tr, _argument(node.args[0]))
            if name in HELPERS:
                requirements(HELPERS[name], sub, out)
            elif name in COEFFICIENTS:
                out.add((name, sub))
            else:
                raise ValueError(f"unknown function {name!r}")
    return out


def evaluate(expr, values, tr=(0, 1)):
    """Interpret an expression; ``values[(name, arg)]`` holds coefficient arrays."""

    def ev(node, tr):
        if isinstance(node, ast.Constant):
            return node.value
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand, tr)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left, tr), ev(node.right, tr)
            op = type(node.op)
            if op is ast.Add:
                return a + b
            if op is ast.Sub:
                return a - b
            if op is ast.Mult:
                return a * b
            if op is ast.Div:
                return a / b
        if isinstance(node, ast.Call):
            name = node.func.id
            sub = compose(tr, _argument(node.args[0]))
            if name in HELPERS:
                return ev(parse(HELPERS[name]), sub)
            return values[(name, sub)]
        raise ValueError(f"unsupported expression node {ast.dump(node)}")

    return ev(parse(expr), tr)


def piece_requirements(pid):
    req = set()
    for row in VTILDE[pid]:
        for entry in row:
            requirements(entry, out=req)
    return req


class JumpEvaluator:
    """Evaluates the undressed and dressed jump matrices from a Scattering object."""

    def __init__(self, scat):
        self.scat = scat

    def coefficient_values(self, req, k):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        by_arg = {}
        for name, tr in req:
            by_arg.setdefault(tr, set()).add(name)
        values = {}
        for tr, names in sorted(by_arg.items()):
            vals = self.scat.coefficients(sorted(names), apply_argument(tr, k))
            for name in names:
                values[(name, tr)] = vals[name]
        return values

    def helpers(self, k):
        """f1..f4, g, h, gt, ht at k (dict of arrays)."""
        req = set()
        for e in HELPERS.values():
            requirements(e, out=req)
        values = self.coefficient_values(req, k)
        return {n: np.asarray(evaluate(e, values)) * np.ones(len(np.atleast_1d(k)))
                for n, e in HELPERS.items()}

    def helper_forms(self, name, k):
        """All displayed forms of f1 or f2, stacked (n_forms, n)."""
        exprs = (HELPERS[name],) + ALTERNATIVES[name]
        req = set()
        for e in exprs:
            requirements(e, out=req)
        values = self.coefficient_values(req, k)
        return np.array([evaluate(e, values) for e in exprs])

    def vtilde(self, pid, k):
        """Undressed jump matrices on piece ``pid`` at the points k, shape (n, 3, 3)."""
        if pid not in VTILDE:
            raise ValueError(f"unknown piece {pid!r}")
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        values = self.coefficient_values(piece_requirements(pid), k)
        out = np.empty((len(k), 3, 3), dtype=complex)
        for i, row in enumerate(VTILDE[pid]):
            for j, entry in enumerate(row):
                out[:, i, j] = evaluate(entry, values)
        return out

    def v_dressed(self, x, t, pid, k):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        d = x * l_values(k) + t * z_values(k)
        return conj_exp(d, self.vtilde(pid, k))

    def check_vsymm(self, x, t, pid, k):
        """Residuals of ``v(k) = A v(wk) A^-1`` and ``v(k) = B v(1/k)^-1 B``."""
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        v = self.v_dressed(x, t, pid, k)
        p = contour.piece(pid)
        p_rot = rotated_piece(p)
        p_inv = inverted_piece(p)
        va = self.v_dressed(x, t, p_rot.id, OMEGA * k)
        vb = self.v_dressed(x, t, p_inv.id, 1 / k)
        ra = np.max(np.abs(v - conj(MAT_A, va)), axis=(1, 2))
        rb = np.max(np.abs(v - conj(MAT_B, inverse(vb))), axis=(1, 2))
        return ra, rb


def rotated_piece(p):
    """Piece containing ``w k`` for k on p."""
    return contour.ContourPiece((p.n + 5) % 18 + 1, p.kind)


def inverted_piece(p):
    """Piece containing ``1/k`` for k on p."""
    if p.kind == "arc":
        return contour.ContourPiece((10 - p.n - 1) % 18 + 1, "arc")
    kind = "ray" if p.kind == "segment" else "segment"
    return contour.ContourPiece((11 - p.n - 1) % 18 + 1, kind)


def domain_audit(pids, n_per_piece=8):
    """Count coefficient requests that fall outside their domain of definition.

    Returns a list of (piece, coefficient, argument, k) violations.
    """
    bad = []
    for pid in pids:
        p = contour.piece(pid)
        ks = contour.sample_piece(p, n_per_piece)
        for name, tr in sorted(piece_requirements(pid)):
            for kk in ks:
                kp = complex(apply_argument(tr, kk))
                if not coefficient_domain(name, kp, tol=1e-7):
                    bad.append((pid, name, tr, kk))
    return bad


def junction_product(evaluator, n, delta, x=0.0, t=0.0):
    """Cyclic product of the jumps met on a small loop around ``e^{i RAY_DEG[n-1]}``.

    The loop of radius ``delta`` crosses the ray n'', the segment n' and the
    arcs n and n-1.  Walking counterclockwise, a crossing from the - to the +
    side contributes v and the opposite crossing contributes v^-1, so that
    M returns to itself when the product is I.
    """
    p = np.exp(1j * np.deg2rad(contour.RAY_DEG[n - 1]))
    prev = (n - 2) % 18 + 1
    crossings = [
        (contour.ContourPiece(n, "ray"), p * (1 + delta)),
        (contour.ContourPiece(n, "segment"), p * (1 - delta)),
        (contour.ContourPiece(n, "arc"), p * np.exp(1j * delta)),
        (contour.ContourPiece(prev, "arc"), p * np.exp(-1j * delta)),
    ]
    items = []
    for pc, q in crossings:
        phi = np.angle(q - p) % (2 * np.pi)
        walk = 1j * np.exp(1j * phi)
        v = evaluator.v_dressed(x, t, pc.id, q)
        into_plus = np.real(walk * np.conj(1j * pc.tangent(q))) > 0
        items.append((phi, v if into_plus else inverse(v)))
    prod = np.eye(3, dtype=complex)
    for _, m in sorted(items, key=lambda it: it[0]):
        prod = prod @ m
    return prod


def junction_residual(evaluator, n, x=0.0, t=0.0, delta=1e-4):
    """Distance of the cyclic product from I, extrapolated linearly to delta = 0."""
    p1 = junction_product(evaluator, n, delta, x, t)
    p2 = junction_product(evaluator, n, delta / 2, x, t)
    return float(np.max(np.abs(2 * p2 - p1 - np.eye(3))))


def det_residual(vt):
    return np.abs(det(vt) - 1.0)


# -- T matrices ---------------------------------------------------------------

def _E(m, i, j):
    return m[..., i - 1, j - 1]


def _q(num, den):
    if np.any(np.abs(den) < 1e-10):
        raise AssumptionViolation("vanishing denominator in a T matrix")
    return num / den


def t_base(n, mats):
    """T_n for n = 7..12 from spectral matrices (batched)."""
    s, sA, SA = mats["s"], mats["sA"], mats["SA"]
    Ss, Ts = products(mats)
    shape = s.shape[:-2]
    T = np.zeros(shape + (3, 3), dtype=complex)
    T[..., 0, 0] = T[..., 1, 1] = T[..., 2, 2] = 1
    comb_den = _E(sA, 3, 3) * _E(SA, 2, 2) - _E(sA, 2, 3) * _E(SA, 3, 2)
    c13_9 = lambda: _q(_E(sA, 3, 1) * _E(SA, 2, 2) - _E(sA, 2, 1) * _E(SA, 3, 2), comb_den)  # noqa: E731
    c23_9 = lambda: _q(_E(sA, 3, 2) * _E(SA, 2, 2) - _E(sA, 2, 2) * _E(SA, 3, 2), comb_den)  # noqa: E731
    if n in (7, 8):
        T[..., 0, 2] = _q(_E(Ts, 3, 1), _E(Ts, 3, 3))
        T[..., 1, 2] = _q(_E(Ts, 3, 2), _E(Ts, 3, 3))
        T[..., 1, 0] = -_q(_E(s, 2, 1), _E(s, 2, 2)) if n == 7 else -_q(_E(Ss, 2, 1), _E(Ss, 2, 2))
    elif n == 9:
        T[..., 0, 2], T[..., 1, 2] = c13_9(), c23_9()
        T[..., 1, 0] = -_q(_E(Ss, 2, 1), _E(Ss, 2, 2))
    elif n == 10:
        T[..., 0, 1] = -_q(_E(s, 1, 2), _E(s, 1, 1))
        T[..., 0, 2], T[..., 1, 2] = c13_9(), c23_9()
    elif n in (11, 12):
        T[..., 0, 1] = -_q(_E(s, 1, 2), _E(s, 1, 1)) if n == 11 else -_q(_E(Ss, 1, 2), _E(Ss, 1, 1))
        T[..., 0, 2] = _q(_E(sA, 3, 1), _E(sA, 3, 3))
        T[..., 1, 2] = _q(_E(sA, 3, 2), _E(sA, 3, 3))
    else:
        raise ValueError("base T matrices exist for n = 7..12")
    if np.any(np.isnan(T)):
        raise CoefficientUnavailable(f"T_{n}: required column outside its domain")
    return T


def _mat_power(m, p):
    out = np.eye(3)
    for _ in range(p % 3):
        out = out @ m
    return out


def t_map(region):
    """Group element taking a region into D7..D12.

    Returns (a, inv, base_n) such that ``T(k) = A^a B^inv T(k') B^inv A^-a``
    with ``k' = w^a k`` (then inverted when inv).
    """
    fam, n = region.family, region.n
    if fam == "E":
        # 1/k maps E_n into D_m with the reflected angle
        inv_n = _inverted_region_index(n)
        a, _, base = t_map(contour.RegionId("D", inv_n))
        return a, 1, base
    for a in range(3):
        m = (n - 1 + 6 * a) % 18 + 1
        if 7 <= m <= 12:
            return a, 0, m
    raise AssertionError


def _inverted_region_index(n):
    # wedge between rays n and n+1 reflects to the wedge between rays 11-n and 10-n
    return (10 - n - 1) % 18 + 1


class TMatrices:
    """T_n(k) in every region from the six base matrices and the symmetries."""

    def __init__(self, scat, full=True):
        self.scat = scat
        self.full = full

    def base(self, n, k):
        return t_base(n, self.scat.matrices(k, full=self.full))

    def in_region(self, region, k):
        """T for k in the closure of the given region (region, not k, decides)."""
        if isinstance(region, str):
            region = contour.region(region)
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        if region.family == "D":
            a, _, base = t_map(region)
            tb = self.base(base, OMEGA**a * k)
            Aa = _mat_power(MAT_A, a)
            return Aa @ tb @ np.linalg.inv(Aa)
        inv_n = _inverted_region_index(region.n)
        td = self.in_region(contour.RegionId("D", inv_n), 1 / k)
        return MAT_B @ td @ MAT_B

    def __call__(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        out = np.empty((len(k), 3, 3), dtype=complex)
        for i, kk in enumerate(k):
            out[i] = self.in_region(contour.classify(complex(kk)), kk)[0]
        return out


# -- export ----------------------------------------------------------------

def jump_csv(evaluator, samples, x=0.0, t=0.0):
    """CSV rows (piece, k_re, k_im, v11_re, v11_im, ..., v33_im)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["piece", "k_re", "k_im"]
    for i in range(1, 4):
        for j in range(1, 4):
            head += [f"v{i}{j}_re", f"v{i}{j}_im"]
    w.writerow(head)
    for pid, ks in samples.items():
        v = evaluator.v_dressed(x, t, pid, ks)
        for kk, m in zip(np.atleast_1d(ks), v):
            row = [pid, f"{kk.real:.15e}", f"{kk.imag:.15e}"]
            for z in m.ravel():
                row += [f"{z.real:.15e}", f"{z.imag:.15e}"]
            w.writerow(row)
    return buf.getvalue()


__all__ = ["JumpEvaluator", "TMatrices", "domain_audit", "jump_csv", "OnBoundary"]
