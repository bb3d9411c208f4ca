"""Manufactured data and independent reference computations.

The wavepacket family solves the linearised equation exactly, so every
identity that needs a genuine solution of the nonlinear system is violated
only at second order in the amplitude.
"""
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BandViolation, NonConvergence
from .fields import BoundaryData, FieldGrid, InitialData, ZeroSource, fd_derivative
from .lax import l_values, z_values

# Multipliers of exp(i(kx - Wt)) for each field, as functions of (kappa, W).
_MULT = {
    "u": lambda k, w: np.ones_like(k) + 0j,
    "u_x": lambda k, w: 1j * k,
    "u_xx": lambda k, w: -k**2 + 0j,
    "u_xxx": lambda k, w: -1j * k**3,
    "u_t": lambda k, w: -1j * w,
    "u_tt": lambda k, w: -w**2 + 0j,
    "u_xxxx": lambda k, w: k**4 + 0j,
    "v": lambda k, w: -w / k + 0j,
    "v_x": lambda k, w: -1j * w,
    "v_t": lambda k, w: 1j * w**2 / k,
}


@dataclass(frozen=True)
class WavepacketSpec:
    eps: float = 1e-3
    kappa_bar: float = 0.5
    half_width: float = 0.45
    sigma: float = 0.08
    phase: float = 0.0
    x_max: float = 80.0
    T: float = 1.0
    nx: int = 8001
    nt: int = 401
    n_quad: int = 400

    def __post_init__(self):
        lo, hi = self.kappa_bar - self.half_width, self.kappa_bar + self.half_width
        if not (0.0 < lo < hi < 1.0):
            raise BandViolation(f"band ({lo}, {hi}) must lie strictly inside (0, 1)")
        if self.eps < 0 or self.x_max <= 0 or self.T <= 0:
            raise BandViolation("amplitude, x_max and T must be positive")

    def to_dict(self):
        return asdict(self)


def dispersion(kappa):
    """Linear frequency ``W = kappa sqrt(1 - kappa^2)``."""
    return kappa * np.sqrt(1.0 - kappa**2)


def _uniform_steps(x, t):
    """(dx, dt) when both coordinate arrays are arithmetic progressions."""
    if x.size < 64:
        return None
    dx, dt = (x[-1] - x[0]) / (x.size - 1), (t[-1] - t[0]) / (t.size - 1)
    j = np.arange(x.size)
    scale = max(np.max(np.abs(x)), np.max(np.abs(t)), 1.0)
    if np.max(np.abs(x - x[0] - j * dx)) > 1e-13 * scale:
        return None
    if np.max(np.abs(t - t[0] - j * dt)) > 1e-13 * scale:
        return None
    return dx, dt


class WavepacketSource:
    """Closed-form field source for a band-limited linear wavepacket.

    ``u = eps Re sum_q A_q exp(i(kappa_q x - W_q t + phase))`` with
    Gauss-Legendre nodes on the band and a Gaussian envelope tapered by a
    smooth bump so that the spectrum is compactly supported.  The amplitudes
    are normalised by the envelope integral, so ``|u| <= eps``.
    """

    block = 2048

    def __init__(self, spec):
        self.spec = spec
        self.x_max, self.T = spec.x_max, spec.T
        lo = spec.kappa_bar - spec.half_width
        hi = spec.kappa_bar + spec.half_width
        xg, wg = np.polynomial.legendre.leggauss(spec.n_quad)
        kappa = 0.5 * (hi - lo) * xg + 0.5 * (hi + lo)
        y = (kappa - spec.kappa_bar) / spec.half_width
        env = np.exp(-(kappa - spec.kappa_bar) ** 2 / (2 * spec.sigma**2)) * np.exp(1 - 1 / (1 - y**2))
        weights = wg * env
        self.kappa = kappa
        self.omega = dispersion(kappa)
        self.amp = spec.eps * weights / np.sum(weights) * np.exp(1j * spec.phase)

    def evaluate(self, names, x, t):
        """Dict of real field arrays at broadcast points (x, t)."""
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        shape = x.shape
        xf, tf = x.ravel(), t.ravel()
        out = {n: np.empty(xf.size) for n in names}
        mult = {n: self.amp * _MULT[n](self.kappa, self.omega) for n in names}
        steps = _uniform_steps(xf, tf)
        if steps is not None:
            # on an arithmetic progression the phase factors of a block are
            # the factors of its first point times one shared table
            j = np.arange(self.block)
            table = np.exp(1j * np.outer(j, steps[0] * self.kappa - steps[1] * self.omega))
        for a in range(0, xf.size, self.block):
            sl = slice(a, a + self.block)
            if steps is None:
                e = np.exp(1j * (np.outer(xf[sl], self.kappa) - np.outer(tf[sl], self.omega)))
            else:
                first = np.exp(1j * (xf[a] * self.kappa - tf[a] * self.omega))
                e = table[:len(xf[sl])] * first
            for n in names:
                out[n][sl] = (e @ mult[n]).real
        return {n: v.reshape(shape) for n, v in out.items()}

    def x_fields(self, t, xs):
        return self.evaluate(("u", "u_x", "v"), xs, t)

    def t_fields(self, ts):
        ts = np.asarray(ts, dtype=float)
        return self.evaluate(("u", "u_x", "u_xx", "v", "v_x"), np.zeros_like(ts), ts)


def wavepacket_dataset(spec):
    """Sampled initial data, boundary data and full grid of a wavepacket.

    The boundary trace ``ut3`` is defined through the compatibility relation
    ``ut3 = vt0' - ut1 - 2 ut0 ut1`` with the exact ``vt0'``, so the traces
    are consistent with the system form by construction.
    """
    src = WavepacketSource(spec)
    x = np.linspace(0.0, spec.x_max, spec.nx)
    t = np.linspace(0.0, spec.T, spec.nt)
    f0 = src.evaluate(("u", "u_t", "v", "u_x", "u_xx"), x, 0.0)
    initial = InitialData(x, f0["u"], f0["u_t"], f0["v"], f0["u_x"], f0["u_xx"])
    fb = src.evaluate(("u", "u_x", "u_xx", "v", "v_x", "v_t"), np.zeros_like(t), t)
    ut3 = fb["v_t"] - fb["u_x"] - 2 * fb["u"] * fb["u_x"]
    boundary = BoundaryData(t, fb["u"], fb["u_x"], fb["u_xx"], ut3, fb["v"], fb["v_x"])
    X, Tm = np.meshgrid(x, t)
    g = src.evaluate(("u", "v", "u_x", "u_xx", "v_x"), X, Tm)
    grid = FieldGrid(x, t, g["u"], g["v"], g["u_x"], g["u_xx"], g["v_x"])
    return initial, boundary, grid


def zero_dataset(T=1.0, x_max=10.0, nx=201, nt=101):
    x = np.linspace(0.0, x_max, nx)
    t = np.linspace(0.0, T, nt)
    zx, zt, zg = np.zeros(nx), np.zeros(nt), np.zeros((nt, nx))
    initial = InitialData(x, zx, zx, zx, zx, zx)
    boundary = BoundaryData(t, zt, zt, zt, zt, zt, zt)
    grid = FieldGrid(x, t, zg, zg, zg, zg, zg)
    return initial, boundary, grid


def zero_source(T=1.0, x_max=10.0):
    return ZeroSource(x_max, T)


def pde_residual(grid, margin=3):
    """Max residual of ``u_t = v_x`` and ``v_t = u_x + (u^2)_x + u_xxx``.

    Time derivatives and u_xxx come from fourth-order differences of the
    stored grids; the first and last ``margin`` rows/columns are dropped.
    """
    ht = grid.t[1] - grid.t[0]
    hx = grid.x[1] - grid.x[0]
    u_t = np.apply_along_axis(fd_derivative, 0, grid.u, ht)
    v_t = np.apply_along_axis(fd_derivative, 0, grid.v, ht)
    u_xxx = np.apply_along_axis(fd_derivative, 1, grid.u_xx, hx)
    r1 = u_t - grid.v_x
    r2 = v_t - grid.u_x - 2 * grid.u * grid.u_x - u_xxx
    sl = (slice(margin, -margin), slice(margin, -margin))
    return float(max(np.max(np.abs(r1[sl])), np.max(np.abs(r2[sl]))))


def linear_residual(src, x, t):
    """Residual of ``u_tt - u_xx - u_xxxx`` from the closed-form derivatives."""
    f = src.evaluate(("u_tt", "u_xx", "u_xxxx"), x, t)
    return np.max(np.abs(f["u_tt"] - f["u_xx"] - f["u_xxxx"]))


def nonlinear_residual(src, x, t):
    """Residual of the full equation ``u_tt - u_xx - (u^2)_xx - u_xxxx``."""
    f = src.evaluate(("u", "u_x", "u_xx", "u_tt", "u_xxxx"), x, t)
    uu_xx = 2 * f["u_x"] ** 2 + 2 * f["u"] * f["u_xx"]
    return np.max(np.abs(f["u_tt"] - f["u_xx"] - uu_xx - f["u_xxxx"]))


# ---------------------------------------------------------------------------
# Picard reference solver

@dataclass(frozen=True)
class PicardRequest:
    """One eigenfunction evaluation for the reference solver.

    which: "mu1", "mu2", "mu3", "mu1A" or "mu3A"; (x, t) the evaluation point.
    The boundary eigenfunctions are the cases x = 0 of mu1 and mu1A.
    """
    which: str
    x: float
    t: float
    k: complex


def _coefficients(source, leg, s, k):
    """Direct P^{-1} N P evaluation on the nodes s (independent of fields.py)."""
    l = l_values(k)
    P = np.array([np.ones(3), l, l**2])
    Pinv = np.linalg.inv(P)
    r3 = np.sqrt(3.0)
    n = len(s)
    N = np.zeros((n, 3, 3), dtype=complex)
    if leg[0] == "x":
        f = source.x_fields(leg[1], s)
        N[:, 2, 0] = -f["u_x"] / 4 - 1j * f["v"] / (4 * r3)
        N[:, 2, 1] = -f["u"] / 2
    else:
        f = source.t_fields(s)
        u, ux, uxx, v, vx = f["u"], f["u_x"], f["u_xx"], f["v"], f["v_x"]
        N[:, 0, 0] = -1j * u / r3
        N[:, 1, 0] = -1j * ux / (4 * r3) - v / 4
        N[:, 1, 1] = 1j * u / (2 * r3)
        N[:, 2, 0] = -1j * uxx / (4 * r3) - vx / 4
        N[:, 2, 1] = 1j * ux / (4 * r3) - v / 4
        N[:, 2, 2] = 1j * u / (2 * r3)
    return np.einsum("ij,njk,kl->nil", Pinv, N, P)


def _volterra_leg(C, d, y0, s0, s1, n_int, tol, max_iter):
    """Fixed-point solve of ``y(s) = e^{(s-s0)D} y0 + int_{s0}^{s} e^{(s-s')D} C y ds'``.

    ``D = diag(d)`` acts column-wise: ``d`` has shape (3, 3) with d[:, n] the
    exponent differences for column n.  Quadrature is composite Simpson on
    n_int (even) intervals; the first interval of the odd chain uses the
    three-point rule ``h (5 g0 + 8 g1 - g2) / 12``.
    """
    h = (s1 - s0) / n_int
    s = s0 + h * np.arange(n_int + 1)
    E1, E2 = np.exp(h * d), np.exp(2 * h * d)
    hom = np.exp((s - s0)[:, None, None] * d[None]) * y0[None]
    y = hom.copy()
    for it in range(max_iter):
        f = np.einsum("nij,njc->nic", C, y)
        I = np.zeros_like(y)
        I[1] = h * (5 * E1 * f[0] + 8 * f[1] - f[2] / E1) / 12
        for a in range(2, n_int + 1):
            I[a] = E2 * I[a - 2] + h / 3 * (E2 * f[a - 2] + 4 * E1 * f[a - 1] + f[a])
        new = hom + I
        delta = np.max(np.abs(new - y))
        y = new
        if delta < tol:
            return y[-1], it + 1
    raise NonConvergence(f"Picard iteration stalled at change {delta:.3e}")


def _leg_steps(span, spread, h_max=0.025, lam_h=0.02):
    n = int(np.ceil(abs(span) * max(spread, 1e-300) / lam_h))
    n = max(n, int(np.ceil(abs(span) / h_max)), 8)
    return n + (n % 2)


def picard_reference(source, request, tol=1e-12, max_iter=200, refine=1):
    """Eigenfunction value by direct Picard iteration of the Volterra equations.

    Returns the full 3x3 matrix; only columns inside their boundedness
    domain are meaningful.  ``refine`` multiplies the number of quadrature
    intervals.
    """
    from .algebra import identity

    k = complex(request.k)
    l, z = l_values(k), z_values(k)
    adj = request.which.endswith("A")
    sgn = -1.0 if adj else 1.0
    dl = sgn * (l[:, None] - l[None, :])
    dz = sgn * (z[:, None] - z[None, :])

    def leg(kind, s0, s1, y0, tval=None):
        n = refine * _leg_steps(s1 - s0, np.max(np.abs(dl if kind == "x" else dz)))
        s = s0 + (s1 - s0) / n * np.arange(n + 1)
        C = _coefficients(source, ("x", tval) if kind == "x" else ("t",), s, k)
        if adj:
            C = -np.swapaxes(C, 1, 2)
        return _volterra_leg(C, dl if kind == "x" else dz, y0, s0, s1, n, tol, max_iter)

    I3 = identity()
    x, t = request.x, request.t
    base = request.which.rstrip("A")
    iters = 0
    if base == "mu3":
        y, iters = leg("x", source.x_max, x, I3, t)
    elif base == "mu1":
        y, it1 = leg("t", source.T, t, I3)
        iters += it1
        if x != 0:
            y, it2 = leg("x", 0.0, x, y, t)
            iters += it2
    elif base == "mu2":
        y = I3
        if t != 0:
            y, it1 = leg("t", 0.0, t, y)
            iters += it1
        if x != 0:
            y, it2 = leg("x", 0.0, x, y, t)
            iters += it2
    else:
        raise ValueError(f"unsupported request {request.which}")
    return y, iters
