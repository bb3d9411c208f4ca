"""Eigenfunctions of the Lax pair by fourth-order Runge-Kutta integration.

Each column of an eigenfunction obeys a linear ODE of its own,

    y' = (D - d_n) y + C(s) y,

along the x-direction (D = L(k), C = U) or the t-direction (D = Z(k),
C = V), with D -> -D and C -> -C^T for the adjoint problems.  Columns of
many spectral points are stacked into one batch and stepped together; the
coefficient matrices are linear combinations of a few fixed matrices
``P^{-1} E P`` with scalar field weights, which keeps each RK stage cheap.

Paths.  mu3 integrates in x from x_max down to x at fixed t.  mu1 runs in t
from T down to t at x = 0 and then in x from 0 to x.  mu2 runs in t from 0
up to t at x = 0 and then in x from 0 to x.
"""
import os
from dataclasses import dataclass, field

import numpy as np

from . import contour
from .algebra import det
from .errors import DomainViolation, StepFailure
from .fields import U_UNITS, V_UNITS, conjugated_units, u_coefficients, v_coefficients
from .lax import l_values, z_values

EIGENFUNCTIONS = ("mu1", "mu2", "mu3", "mu1A", "mu3A")

# In the "x0" column mode a column outside its domain is still integrated
# when the exponential growth along the t-leg stays below exp(GROWTH_LIMIT).
GROWTH_LIMIT = 40.0


@dataclass(frozen=True)
class SolverSettings:
    """Step-size policy.

    The number of steps on a leg of length L is the largest of
    ``min_steps``, ``L / h_max`` and ``L * spread / lam_h`` where spread is
    the largest exponent difference |d_i - d_n| in the batch.
    """
    min_steps: int = 200
    h_max: float = 0.04
    lam_h: float = 0.04
    det_tol: float = 1e-9
    max_halvings: int = 6
    check_steps: bool = False
    exclusion_radius: float = 0.05


@dataclass
class EigenfunctionValue:
    """Eigenfunction matrices for a batch of spectral points.

    m: (n, 3, 3) with NaN in columns that were not computed;
    valid: (n, 3) boundedness flags of the computed columns;
    error: (n, 3) Richardson estimate of the step error (NaN if not checked).
    """
    m: np.ndarray
    valid: np.ndarray
    error: np.ndarray

    def __getitem__(self, i):
        return EigenfunctionValue(self.m[i], self.valid[i], self.error[i])


def _steps(span, spread, settings):
    n = max(settings.min_steps,
            int(np.ceil(abs(span) / settings.h_max)),
            int(np.ceil(abs(span) * spread / settings.lam_h)))
    return n


STEP_BLOCK = 4096


def _chain(P):
    """Ordered product ``P[-1] @ ... @ P[0]`` by pairwise reduction."""
    while P.shape[0] > 1:
        if P.shape[0] % 2:
            tail = P[-1:]
            P = np.concatenate([P[1:-1:2] @ P[0:-1:2], tail])
        else:
            P = P[1::2] @ P[0::2]
    return P[0]


def rk4_leg(G, coef, shift, y0, s0, s1, n):
    """Classical RK4 for ``y' = shift * y + sum_b coef_b(s) G_b y``.

    G: (nb, m, 3, 3) per-item matrices; coef: callable returning the nb
    scalar weights on a node array, or the (nb, 2n + 1) array of weights
    itself; shift: (m, 3); y0: (m, 3).

    The equation is linear, so one RK4 step is multiplication by a 3x3
    matrix built from the coefficient at the three stage nodes.  The step
    matrices of a block of steps are formed at once and multiplied together
    by pairwise reduction, which gives the same scheme as stepping one at a
    time.
    """
    h = (s1 - s0) / n
    if callable(coef):
        w = np.asarray(coef(s0 + 0.5 * h * np.arange(2 * n + 1)))  # (nb, 2n+1)
    else:
        w = np.asarray(coef)
    G = np.asarray(G, dtype=complex)
    y = np.array(y0, dtype=complex)
    if y.shape[0] == 0:
        return y
    D = np.zeros(G.shape[1:], dtype=complex)
    idx = np.arange(3)
    D[:, idx, idx] = shift
    eye = np.eye(3)
    for a in range(0, n, STEP_BLOCK):
        b = min(n, a + STEP_BLOCK)
        nodes = w[:, 2 * a:2 * b + 1]                     # (nb, 2m + 1)
        A = D + np.einsum("bj,bmik->jmik", nodes, G)      # (2m + 1, items, 3, 3)
        A0, A1, A2 = A[0:-1:2], A[1::2], A[2::2]
        K1 = A0
        K2 = A1 @ (eye + 0.5 * h * K1)
        K3 = A1 @ (eye + 0.5 * h * K2)
        K4 = A2 @ (eye + h * K3)
        P = eye + (h / 6.0) * (K1 + 2 * K2 + 2 * K3 + K4)
        y = np.einsum("mij,mj->mi", _chain(P), y)
    if not np.all(np.isfinite(y)):
        raise StepFailure("non-finite value during RK4 integration")
    return y


class Eigensolver:
    """RK4 solver bound to a field source."""

    def __init__(self, source, settings=None):
        self.source = source
        self.settings = settings or SolverSettings()
        self._weights = {}

    # -- helpers -----------------------------------------------------------
    def _x_coef(self, t):
        src = self.source

        def coef(xs):
            return u_coefficients(src.x_fields(t, xs))
        return coef

    def _t_coef(self):
        src = self.source

        def coef(ts):
            return v_coefficients(src.t_fields(ts))
        return coef

    def _leg_weights(self, kind, coef, t_fixed, s0, s1, n):
        """Field weights on the RK stage nodes of a leg, cached per leg."""
        key = (kind, float(t_fixed) if kind == "x" else 0.0, float(s0), float(s1), int(n))
        w = self._weights.get(key)
        if w is None:
            h = (s1 - s0) / n
            w = np.asarray(coef(s0 + 0.5 * h * np.arange(2 * n + 1)))
            if len(self._weights) > 256:
                self._weights.clear()
            self._weights[key] = w
        return w

    def _leg(self, kind, k_items, cols, y0, s0, s1, adjoint, t_fixed=0.0):
        """Integrate item columns along one leg, grouping items by step count."""
        if s0 == s1:
            return np.array(y0, dtype=complex), np.zeros(len(k_items))
        d = l_values(k_items) if kind == "x" else z_values(k_items)
        sgn = -1.0 if adjoint else 1.0
        shift = sgn * (d - d[np.arange(len(k_items)), cols][:, None])
        units = U_UNITS if kind == "x" else V_UNITS
        coef = self._x_coef(t_fixed) if kind == "x" else self._t_coef()
        spread = np.max(np.abs(shift), axis=1)
        out = np.empty_like(np.asarray(y0, dtype=complex))
        err = np.full(len(k_items), np.nan)
        # bucket by the power of two of the required step count
        need = np.array([_steps(s1 - s0, sp, self.settings) for sp in spread])
        buckets = np.ceil(np.log2(need / self.settings.min_steps)).astype(int)
        buckets = np.maximum(buckets, 0)
        # every bucket's nodes are a subset of those of the finest one
        top = int(buckets.max()) + (1 if self.settings.check_steps else 0)
        w_top = self._leg_weights(kind, coef, t_fixed, s0, s1,
                                  self.settings.min_steps * 2**top)
        for b in np.unique(buckets):
            idx = np.nonzero(buckets == b)[0]
            n = int(self.settings.min_steps * 2**b)
            G = conjugated_units(k_items[idx], units, self.settings.exclusion_radius)
            if adjoint:
                G = -np.swapaxes(G, -1, -2)
            w = w_top[:, ::2 ** (top - b)]
            y = rk4_leg(G, w, shift[idx], np.asarray(y0)[idx], s0, s1, n)
            if self.settings.check_steps:
                w2 = w_top[:, ::2 ** (top - b - 1)]
                y2 = rk4_leg(G, w2, shift[idx], np.asarray(y0)[idx], s0, s1, 2 * n)
                err[idx] = np.max(np.abs(y2 - y), axis=1) / 15.0
                y = y2
            out[idx] = y
        return out, err

    def _expand(self, k, columns, which):
        """Flatten (point, column) requests; columns None means in-domain ones."""
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        items, cols = [], []
        valid = np.zeros((len(k), 3), dtype=bool)
        T = getattr(self.source, "T", 0.0)
        for i, kk in enumerate(k):
            zr = z_values(complex(kk)).real
            for c in range(3):
                ok = contour.in_domain(which, c + 1, complex(kk))
                valid[i, c] = ok
                if columns is None:
                    want = ok
                elif columns == "x0":
                    want = (contour.in_domain(which, c + 1, complex(kk), at_x_zero=True)
                            or T * np.max(np.abs(zr - zr[c])) < GROWTH_LIMIT)
                elif columns == "all":
                    want = True
                else:
                    want = (c + 1) in columns
                if want:
                    items.append(i)
                    cols.append(c)
        return k, np.array(items, dtype=int), np.array(cols, dtype=int), valid

    def _assemble(self, n, items, cols, y, err, valid):
        m = np.full((n, 3, 3), np.nan, dtype=complex)
        e = np.full((n, 3), np.nan)
        if len(items):
            m[items, :, cols] = y
            e[items, cols] = err
        return EigenfunctionValue(m, valid, e)

    # -- public API ----------------------------------------------------------
    def solve(self, which, x, t, k, columns=None, strict=False):
        """Eigenfunction ``which`` at (x, t) for an array of k.

        columns: None (all in-domain columns), "all", "x0" (columns bounded on
        the boundary x = 0 plus any whose t-growth is moderate), or an
        iterable of column numbers 1..3.  With ``strict`` an explicitly requested column outside
        its domain raises DomainViolation.
        """
        if which not in EIGENFUNCTIONS:
            raise ValueError(f"unknown eigenfunction {which!r}")
        k, items, cols, valid = self._expand(k, columns, which)
        if strict and len(items) and not np.all(valid[items, cols]):
            raise DomainViolation(f"{which} column requested outside its domain")
        y = np.zeros((len(items), 3), dtype=complex)
        y[np.arange(len(items)), cols] = 1.0
        ki = k[items]
        adj = which.endswith("A")
        err = np.zeros(len(items))
        src = self.source
        if getattr(src, "vanishes", False):
            # with vanishing fields every column stays at its initial value
            return self._assemble(len(k), items, cols, y, err, valid)
        if len(items):
            if which.startswith("mu3"):
                y, err = self._leg("x", ki, cols, y, src.x_max, x, adj, t)
            elif which.startswith("mu1"):
                y, e1 = self._leg("t", ki, cols, y, src.T, t, adj)
                y, e2 = self._leg("x", ki, cols, y, 0.0, x, adj, t)
                err = np.nansum([e1, e2], axis=0)
            else:
                y, e1 = self._leg("t", ki, cols, y, 0.0, t, adj)
                y, e2 = self._leg("x", ki, cols, y, 0.0, x, adj, t)
                err = np.nansum([e1, e2], axis=0)
        out = self._assemble(len(k), items, cols, y, err, valid)
        if which in ("mu1", "mu2") and np.all(np.isfinite(out.m)):
            drift = np.abs(det(out.m) - 1.0)
            if np.any(drift[np.isfinite(drift)] > 1e3 * self.settings.det_tol):
                raise StepFailure(f"determinant drift {np.nanmax(drift):.2e}")
        return out


# -- public wrappers ------------------------------------------------------

def _solver(source, settings):
    return Eigensolver(source, settings)


def solve_mu3(source, k, x, t=0.0, settings=None, columns=None):
    return _solver(source, settings).solve("mu3", x, t, k, columns)


def solve_mu1_boundary(source, k, t, settings=None, columns=None):
    return _solver(source, settings).solve("mu1", 0.0, t, k, columns)


def solve_adjoint(which, source, k, x=0.0, t=0.0, settings=None, columns=None):
    if which not in ("mu1A", "mu3A"):
        raise ValueError("which must be 'mu1A' or 'mu3A'")
    return _solver(source, settings).solve(which, x, t, k, columns)


def solve_mu_general(j, source, x, t, k, settings=None, columns=None):
    return _solver(source, settings).solve(f"mu{j}", x, t, k, columns)


def thread_count():
    """Worker cap from BQSCAT_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("BQSCAT_THREADS", "1")))
    except ValueError:
        return 1
