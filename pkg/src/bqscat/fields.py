"""Initial data, boundary data and the Lax-pair coefficient matrices.

A *field source* is any object exposing ``x_max``, ``T`` and two sampling
methods:

``x_fields(t, xs)``
    dict with arrays ``u``, ``u_x``, ``v`` along the line ``t = const``;
``t_fields(ts)``
    dict with arrays ``u``, ``u_x``, ``u_xx``, ``v``, ``v_x`` along ``x = 0``.

The eigenfunction solvers only talk to sources, so sampled data, full
solution grids and closed-form oracles are interchangeable.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline, RectBivariateSpline

from .errors import InvalidInput, NonDecayingInput
from .lax import EXCLUSION_RADIUS, SQRT3, vandermonde_batch

DECAY_TOL = 1e-10


def fd_derivative(y, h, order=1):
    """Fourth-order finite differences on a uniform grid.

    Centred five-point stencils in the interior and one-sided six-point
    stencils at the two ends on each side.
    """
    y = np.asarray(y, dtype=float)
    if y.size < 7:
        raise InvalidInput("need at least 7 samples for fourth-order differences")
    d = np.empty_like(y)
    if order == 1:
        d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)
        fwd = np.array([-25, 48, -36, 16, -3]) / 12.0
        d[0] = fwd @ y[:5] / h
        d[1] = np.array([-3, -10, 18, -6, 1]) / 12.0 @ y[:5] / h
        d[-1] = -fwd @ y[-1:-6:-1] / h
        d[-2] = -np.array([-3, -10, 18, -6, 1]) / 12.0 @ y[-1:-6:-1] / h
    elif order == 2:
        d[2:-2] = (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (12 * h * h)
        one = np.array([45, -154, 214, -156, 61, -10]) / 12.0
        two = np.array([10, -15, -4, 14, -6, 1]) / 12.0
        d[0] = one @ y[:6] / h**2
        d[1] = two @ y[:6] / h**2
        d[-1] = one @ y[-1:-7:-1] / h**2
        d[-2] = two @ y[-1:-7:-1] / h**2
    else:
        raise ValueError("order must be 1 or 2")
    return d


def _uniform_step(grid):
    grid = np.asarray(grid, dtype=float)
    h = np.diff(grid)
    if np.any(h <= 0):
        raise InvalidInput("grid must be strictly increasing")
    if np.max(np.abs(h - h[0])) > 1e-9 * max(1.0, abs(h[0])):
        return None
    return float(h[0])


def _derivative(grid, y, order=1):
    h = _uniform_step(grid)
    if h is not None and len(grid) >= 7:
        return fd_derivative(y, h, order)
    return CubicSpline(grid, y)(grid, order)


@dataclass(frozen=True)
class InitialData:
    grid_x: np.ndarray
    u0: np.ndarray
    u1: np.ndarray
    v0: np.ndarray
    u0_x: np.ndarray = None
    u0_xx: np.ndarray = None

    def __post_init__(self):
        for name in ("u0_x", "u0_xx"):
            if getattr(self, name) is None:
                order = 1 if name == "u0_x" else 2
                object.__setattr__(self, name, _derivative(self.grid_x, self.u0, order))

    @property
    def x_max(self):
        return float(self.grid_x[-1])


@dataclass(frozen=True)
class BoundaryData:
    grid_t: np.ndarray
    ut0: np.ndarray
    ut1: np.ndarray
    ut2: np.ndarray
    ut3: np.ndarray
    vt0: np.ndarray
    vx0: np.ndarray = None  # v_x(0, t) = u_t(0, t)

    def __post_init__(self):
        if self.vx0 is None:
            object.__setattr__(self, "vx0", _derivative(self.grid_t, self.ut0))

    @property
    def T(self):
        return float(self.grid_t[-1])


@dataclass(frozen=True)
class FieldGrid:
    """Full solution on a tensor grid (used for oracle data)."""
    x: np.ndarray
    t: np.ndarray
    u: np.ndarray  # shape (len(t), len(x))
    v: np.ndarray
    u_x: np.ndarray
    u_xx: np.ndarray
    v_x: np.ndarray

    def traces(self):
        """Initial and boundary traces as (InitialData, BoundaryData).

        ``u_t = v_x`` gives u1, and ``ut3`` follows from the compatibility
        relation ``ut3 = vt0' - ut1 - 2 ut0 ut1`` because u_xxx is not stored.
        """
        initial = InitialData(self.x, self.u[0], self.v_x[0], self.v[0], self.u_x[0], self.u_xx[0])
        vt0 = self.v[:, 0]
        ut0, ut1 = self.u[:, 0], self.u_x[:, 0]
        ut3 = _derivative(self.t, vt0) - ut1 - 2 * ut0 * ut1
        boundary = BoundaryData(self.t, ut0, ut1, self.u_xx[:, 0], ut3, vt0, self.v_x[:, 0])
        return initial, boundary


def check_decay(data, tol=DECAY_TOL):
    if abs(data.u0[-1]) >= tol or abs(data.u1[-1]) >= tol:
        raise NonDecayingInput(
            f"|u0|, |u1| at x_max = {data.x_max} exceed decay tolerance {tol}")


def convert_scalar_to_system(grid_x, u0, u1, grid_t, ut0, ut1, ut2, ut3, decay_tol=DECAY_TOL):
    """Build system data (u, v) from data of the scalar equation.

    ``v0(x) = -int_x^{x_max} u1`` and
    ``vt0(t) = v0(0) + int_0^t (ut1 + 2 ut0 ut1 + ut3)``.
    """
    grid_x = np.asarray(grid_x, dtype=float)
    u0, u1 = np.asarray(u0, dtype=float), np.asarray(u1, dtype=float)
    if abs(u0[-1]) >= decay_tol or abs(u1[-1]) >= decay_tol:
        raise NonDecayingInput("initial data do not decay at the end of the grid")
    F = cumulative_simpson(u1, x=grid_x, initial=0.0)
    v0 = F - F[-1]  # int_{x_max}^{x} u1
    grid_t = np.asarray(grid_t, dtype=float)
    ut0, ut1, ut2, ut3 = (np.asarray(a, dtype=float) for a in (ut0, ut1, ut2, ut3))
    rate = ut1 + 2 * ut0 * ut1 + ut3
    vt0 = v0[0] + cumulative_simpson(rate, x=grid_t, initial=0.0)
    initial = InitialData(grid_x, u0, u1, v0)
    boundary = BoundaryData(grid_t, ut0, ut1, ut2, ut3, vt0)
    return initial, boundary


def third_derivative_from_system(boundary):
    """``ut3 = vt0' - ut1 - 2 ut0 ut1``, the inverse of the conversion above."""
    dv = _derivative(boundary.grid_t, boundary.vt0)
    return dv - boundary.ut1 - 2 * boundary.ut0 * boundary.ut1


class SampledSource:
    """Field source backed by sampled data and cubic splines.

    Rows of a FieldGrid, when given, supply the x-profiles at t > 0;
    without it only ``t = 0`` is available along x.
    """

    def __init__(self, initial, boundary, grid=None):
        self.initial, self.boundary, self.grid = initial, boundary, grid
        self.x_max, self.T = initial.x_max, boundary.T
        gx = initial.grid_x
        self._x0 = {"u": CubicSpline(gx, initial.u0), "u_x": CubicSpline(gx, initial.u0_x),
                    "v": CubicSpline(gx, initial.v0)}
        gt = boundary.grid_t
        self._t = {"u": CubicSpline(gt, boundary.ut0), "u_x": CubicSpline(gt, boundary.ut1),
                   "u_xx": CubicSpline(gt, boundary.ut2), "v": CubicSpline(gt, boundary.vt0),
                   "v_x": CubicSpline(gt, boundary.vx0)}
        if grid is not None:
            kx = min(3, len(grid.x) - 1)
            kt = min(3, len(grid.t) - 1)
            self._xt = {name: RectBivariateSpline(grid.t, grid.x, getattr(grid, name), kx=kt, ky=kx)
                        for name in ("u", "u_x", "v")}

    def x_fields(self, t, xs):
        xs = np.asarray(xs, dtype=float)
        inside = xs <= self.x_max
        if t == 0.0 or self.grid is None:
            if t != 0.0:
                raise InvalidInput("x-profiles at t > 0 need a full field grid")
            out = {n: np.where(inside, s(np.minimum(xs, self.x_max)), 0.0) for n, s in self._x0.items()}
        else:
            out = {n: np.where(inside, s(t, np.minimum(xs, self.x_max), grid=False), 0.0)
                   for n, s in self._xt.items()}
        return out

    def t_fields(self, ts):
        ts = np.asarray(ts, dtype=float)
        return {n: s(ts) for n, s in self._t.items()}


class ZeroSource:
    """Identically vanishing fields; eigenfunctions are exactly the identity."""

    vanishes = True

    def __init__(self, x_max=10.0, T=1.0):
        self.x_max, self.T = float(x_max), float(T)

    def x_fields(self, t, xs):
        z = np.zeros_like(np.asarray(xs, dtype=float))
        return {"u": z, "u_x": z, "v": z}

    def t_fields(self, ts):
        z = np.zeros_like(np.asarray(ts, dtype=float))
        return {"u": z, "u_x": z, "u_xx": z, "v": z, "v_x": z}


def _unit(i, j):
    e = np.zeros((3, 3), dtype=complex)
    e[i, j] = 1.0
    return e


# N_U = a E31 + b E32 with a = -u_x/4 - i v/(4 sqrt3), b = -u/2
U_UNITS = (_unit(2, 0), _unit(2, 1))
# N_V = c0 (E22 + E33 - 2 E11) + c1 E21 + c2 E31 + c3 E32
V_UNITS = (_unit(1, 1) + _unit(2, 2) - 2 * _unit(0, 0), _unit(1, 0), _unit(2, 0), _unit(2, 1))


def u_coefficients(f):
    """Scalar weights of U_UNITS for the field dict f (arrays broadcast)."""
    return (-np.asarray(f["u_x"]) / 4 - 1j * np.asarray(f["v"]) / (4 * SQRT3),
            -np.asarray(f["u"]) / 2 + 0j)


def v_coefficients(f):
    u, ux, uxx, v, vx = (np.asarray(f[n]) for n in ("u", "u_x", "u_xx", "v", "v_x"))
    return (1j * u / (2 * SQRT3),
            -1j * ux / (4 * SQRT3) - v / 4,
            -1j * uxx / (4 * SQRT3) - vx / 4,
            1j * ux / (4 * SQRT3) - v / 4)


def conjugated_units(k, units, radius=EXCLUSION_RADIUS):
    """``P(k)^{-1} E P(k)`` for each unit matrix E; shape (len(units), n, 3, 3)."""
    P, Pinv = vandermonde_batch(np.atleast_1d(k), radius)
    return np.stack([Pinv @ e @ P for e in units])


def U_matrix(f, p):
    """The x-part coefficient at one point; ``f`` holds scalars u, u_x, v."""
    a, b = u_coefficients(f)
    G = conjugated_units(p.k, U_UNITS)[:, 0]
    return a * G[0] + b * G[1]


def V_matrix(f, p):
    """The t-part coefficient at one point; ``f`` holds u, u_x, u_xx, v, v_x."""
    c = v_coefficients(f)
    G = conjugated_units(p.k, V_UNITS)[:, 0]
    return sum(ci * Gi for ci, Gi in zip(c, G))
