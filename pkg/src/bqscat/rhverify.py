"""The sectionally analytic function M, its jump and its large-k behaviour.

M is assembled in six base sectors from the eigenfunctions and the spectral
functions, and carried to the other thirty sectors with the symmetries

    M(k) = A M(w k) A^-1 = B M(1/k) B.

The map into a base sector is chosen with the smallest rotation count and
the inversion applied last.
"""
from dataclasses import dataclass

import numpy as np

from . import contour
from .algebra import EXPONENT_CAP, MAT_A, MAT_B, OMEGA, conj
from .errors import AssumptionViolation, FitUnstable, OverflowRisk
from .lax import SQRT3, l_values, z_values
from .spectral import products, regularised_limit

BASE_REGIONS = ("D13", "D14", "D15", "E4", "E5", "E6")
FIT_WINDOW = (24.0, 120.0)
FIT_POINTS = 16
FIT_DEGREE = 6
JUMP_OFFSETS = (4e-3, 3e-3, 2e-3, 1e-3)
RESIDUE_FRACTIONS = (0.1, 0.075, 0.05, 0.025)
DERIVATIVE_STEP = 0.05
# residue scales below this are rounding noise: M has no pole at k = 1
RESIDUE_FLOOR = 1e-12
# absolute noise level of fitted large-k coefficients (identity data give ~1e-12)
COEFFICIENT_FLOOR = 1e-6

# the column of the base value that feeds column j of A^a X A^-a (1-based)
_PERM_A = {1: 3, 2: 1, 3: 2}


def _perm_power(a):
    perm = {j: j for j in (1, 2, 3)}
    for _ in range(a):
        perm = {j: _PERM_A[perm[j]] for j in perm}
    return perm


def group_element(k):
    """(a, inv, base region, k') with k' = w^a k, inverted when inv is set."""
    for inv in (0, 1):
        for a in range(3):
            kp = OMEGA**a * k
            if inv:
                kp = 1 / kp
            reg = contour.classify(kp)
            if str(reg) in BASE_REGIONS:
                return a, inv, str(reg), kp
    raise AssertionError("no base region reached")


def _mat_power(m, p):
    out = np.eye(3)
    for _ in range(p):
        out = out @ m
    return out


def _exp(z):
    z = np.asarray(z)
    if np.any(np.abs(z.real) > EXPONENT_CAP):
        raise OverflowRisk("phase exponent exceeds cap")
    return np.exp(z)


def _den(d, what):
    if np.any(np.abs(d) < 1e-10):
        raise AssumptionViolation(f"vanishing denominator in {what}")
    return d


class SectionalM:
    """Evaluator of M(x, t, k) built on a Scattering object."""

    def __init__(self, scat):
        self.scat = scat
        self.solver = scat.solver

    # -- base sectors --------------------------------------------------------
    def base(self, name, x, t, k, columns=(1, 2, 3)):
        """M_n on one of the six base sectors at points k of that sector."""
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        out = np.full((len(k), 3, 3), np.nan, dtype=complex)
        columns = set(columns)
        mats = self.scat.matrices(k)
        s, S, sA, SA = mats["s"], mats["S"], mats["sA"], mats["SA"]
        Ss, Ts = products(mats)
        e = lambda m, i, j: m[:, i - 1, j - 1]  # noqa: E731
        L, Z = l_values(k), z_values(k)

        def theta(i, j):
            return (L[:, i - 1] - L[:, j - 1]) * x + (Z[:, i - 1] - Z[:, j - 1]) * t

        need2 = set()
        if 2 in columns:
            if name == "D15":
                need2 |= {1, 2}
            elif name in ("E4", "E5"):
                need2 |= {2}
            elif name == "E6":
                need2 |= {2, 3}
        if 3 in columns:
            need2 |= {2, 3} if name in ("D13", "E5", "E6") else {1, 2, 3}
        mu2 = self.solver.solve("mu2", x, t, k, columns=sorted(need2)).m if need2 else None
        if 1 in columns:
            out[:, :, 0] = self.solver.solve("mu3", x, t, k, columns=[1]).m[:, :, 0]
        if 2 in columns:
            if name in ("D13", "D14"):
                mu1 = self.solver.solve("mu1", x, t, k, columns=[2]).m
                out[:, :, 1] = mu1[:, :, 1] / _den(e(Ts, 2, 2), "M col 2")[:, None]
            elif name == "D15":
                d = _den(e(sA, 1, 2) * e(SA, 2, 1) - e(sA, 2, 2) * e(SA, 1, 1), "M15")
                out[:, :, 1] = (mu2[:, :, 0] * (e(SA, 2, 1) * _exp(theta(1, 2)) / d)[:, None]
                                - mu2[:, :, 1] * (e(SA, 1, 1) / d)[:, None])
            elif name in ("E4", "E5"):
                out[:, :, 1] = mu2[:, :, 1] / _den(e(sA, 2, 2), "M col 2")[:, None]
            else:
                d = _den(e(sA, 2, 2) * e(SA, 3, 3) - e(sA, 3, 2) * e(SA, 2, 3), "M24")
                out[:, :, 1] = (mu2[:, :, 1] * (e(SA, 3, 3) / d)[:, None]
                                - mu2[:, :, 2] * (e(SA, 2, 3) * _exp(theta(3, 2)) / d)[:, None])
        if 3 in columns:
            if name in ("D13", "E5", "E6"):
                d = _den(e(s, 1, 1), "M col 3")
                out[:, :, 2] = (mu2[:, :, 1] * (-e(sA, 3, 2) * _exp(theta(2, 3)) / d)[:, None]
                                + mu2[:, :, 2] * (e(sA, 2, 2) / d)[:, None])
            else:
                d = _den(e(Ss, 1, 1), "M col 3")
                c1 = (e(sA, 3, 2) * e(SA, 2, 1) - e(sA, 2, 2) * e(SA, 3, 1)) * _exp(theta(1, 3)) / d
                c2 = (e(sA, 1, 2) * e(SA, 3, 1) - e(sA, 3, 2) * e(SA, 1, 1)) * _exp(theta(2, 3)) / d
                c3 = (e(sA, 2, 2) * e(SA, 1, 1) - e(sA, 1, 2) * e(SA, 2, 1)) / d
                out[:, :, 2] = (mu2[:, :, 0] * c1[:, None] + mu2[:, :, 1] * c2[:, None]
                                + mu2[:, :, 2] * c3[:, None])
        return out

    # -- general k -----------------------------------------------------------
    def __call__(self, x, t, k, columns=(1, 2, 3)):
        """M(x, t, k) for points k off the contour; NaN in unrequested columns."""
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        out = np.full((len(k), 3, 3), np.nan, dtype=complex)
        # one base evaluation per sector, shared by all group elements
        swap = {1: 2, 2: 1, 3: 3}
        plans = []
        by_base = {}
        for i, kk in enumerate(k):
            a, inv, name, kp = group_element(complex(kk))
            perm = _perm_power(a)
            cols = {swap[perm[j]] if inv else perm[j] for j in columns}
            plans.append((a, inv))
            entry = by_base.setdefault(name, ([], [], set()))
            entry[0].append(i)
            entry[1].append(kp)
            entry[2].update(cols)
        for name in sorted(by_base):
            idx, kp, cols = by_base[name]
            mb = self.base(name, x, t, np.array(kp), sorted(cols))
            for row, i in enumerate(idx):
                a, inv = plans[i]
                m = mb[row]
                if inv:
                    m = conj(MAT_B, m)
                out[i] = conj(_mat_power(MAT_A, a), m)
        for j in (1, 2, 3):
            if j not in columns:
                out[:, :, j - 1] = np.nan
        return out

    # -- jump ------------------------------------------------------------------
    def jump_differences(self, x, t, pid, k, offsets, jump_eval):
        """``M(k+) - M(k-) v(k)`` for each normal offset, shape (n_h, n, 3, 3)."""
        p = contour.piece(pid)
        k = np.atleast_1d(np.asarray(k, dtype=complex))
        pts = [contour.normal_offsets(k, h, p) for h in offsets]
        allk = np.concatenate([np.concatenate([kp, km]) for kp, km in pts])
        m = self(x, t, allk).reshape(len(offsets), 2, len(k), 3, 3)
        v = jump_eval.v_dressed(x, t, pid, k)
        return m[:, 0] - m[:, 1] @ v[None]

    def jump_residual(self, x, t, pid, k, jump_eval, offsets=JUMP_OFFSETS):
        """Per-point residual with the difference extrapolated to h = 0.

        Returns (extrapolated residual, residual at the smallest offset).
        """
        hs = np.asarray(offsets, dtype=float)
        diffs = self.jump_differences(x, t, pid, k, hs, jump_eval)
        V = np.vander(hs, len(hs), increasing=True)
        coef = np.linalg.solve(V, diffs.reshape(len(hs), -1))
        d0 = coef[0].reshape(diffs.shape[1:])
        return np.max(np.abs(d0), axis=(1, 2)), np.max(np.abs(diffs[-1]), axis=(1, 2))

    # -- large-k fits ----------------------------------------------------------
    def expansion(self, x, t, angle_deg, columns=(1, 2, 3), window=FIT_WINDOW,
                  n_points=FIT_POINTS, degree=FIT_DEGREE):
        """Least-squares coefficients of M along a ray in powers of 1/k.

        Returns an array (degree + 1, 3, 3): index p multiplies k^-p.
        """
        r = np.geomspace(window[0], window[1], n_points)
        k = r * np.exp(1j * np.deg2rad(angle_deg))
        m = self(x, t, k, columns)
        return fit_inverse_powers(k, m, degree)


def fit_inverse_powers(k, values, degree):
    """Least squares fit ``values ~ sum_p c_p k^-p`` (p = 0..degree)."""
    k = np.asarray(k)
    basis = np.stack([k ** -p for p in range(degree + 1)], axis=1)
    flat = values.reshape(len(k), -1)
    finite = np.all(np.isfinite(flat), axis=0)
    coef = np.full((degree + 1, flat.shape[1]), np.nan, dtype=complex)
    if finite.any():
        # column scaling keeps the normal equations well conditioned
        scale = np.max(np.abs(basis), axis=0)
        sol, *_ = np.linalg.lstsq(basis / scale, flat[:, finite], rcond=None)
        coef[:, finite] = sol / scale[:, None]
        cond = np.linalg.cond(basis / scale)
        if cond > 1e12:
            raise FitUnstable(f"fit condition number {cond:.1e}")
    return coef.reshape((degree + 1,) + values.shape[1:])


# -- recovery -----------------------------------------------------------------

# Column j of M is built from mu3 alone on one ray: column 1 at 0 degrees,
# column 2 at 240 degrees and column 3 at 120 degrees.  mu3 is normalised at
# x_max where the data vanish, so these columns have clean expansions in 1/k;
# the other eigenfunctions carry boundary layers that decay only slowly in k.
CLEAN_RAYS = {1: 0.0, 2: 240.0, 3: 120.0}
RAY_M33 = CLEAN_RAYS[3]
RAY_M32 = CLEAN_RAYS[2]


@dataclass
class Recovery:
    u_a: float
    u_b: float

    def to_dict(self):
        return {"u_a": self.u_a, "u_b": self.u_b}


def m1_33(Mfun, x, t, **fit):
    c = Mfun.expansion(x, t, RAY_M33, columns=(3,), **fit)
    return c[1, 2, 2]


def recover_u(Mfun, x, t, dx=DERIVATIVE_STEP, **fit):
    """Two recoveries of u(x, t) from the large-k behaviour of M."""
    if x - 2 * dx < 0:
        raise ValueError("x too close to the boundary for the centred derivative")
    vals = [m1_33(Mfun, x + j * dx, t, **fit) for j in (-2, -1, 1, 2)]
    dm = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * dx)
    u_a = -1j * SQRT3 * dm
    c = Mfun.expansion(x, t, RAY_M32, columns=(2,), **fit)
    u_b = (1 - OMEGA) / 2 * c[2, 2, 1]
    return Recovery(float(u_a.real), float(u_b.real)), (complex(u_a), complex(u_b))


def recover_v(Mfun, x, t, dt=DERIVATIVE_STEP, **fit):
    """v(x, t) from the t-derivative of the 1/k coefficient of M33."""
    T = Mfun.scat.source.T
    if t - 2 * dt < 0 or t + 2 * dt > T:
        ts = [t, t + dt, t + 2 * dt, t + 3 * dt, t + 4 * dt] if t - 2 * dt < 0 else \
            [t - 4 * dt, t - 3 * dt, t - 2 * dt, t - dt, t]
        vals = [m1_33(Mfun, x, tt, **fit) for tt in ts]
        w = np.array([-25, 48, -36, 16, -3]) / 12.0 if t - 2 * dt < 0 else \
            np.array([3, -16, 36, -48, 25]) / 12.0
        dm = np.dot(w, vals) / dt
    else:
        vals = [m1_33(Mfun, x, t + j * dt, **fit) for j in (-2, -1, 1, 2)]
        dm = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * dt)
    return float((-1j * SQRT3 * dm).real), complex(-1j * SQRT3 * dm)


# -- structure -----------------------------------------------------------------

def asymptotic_coefficients(Mfun, x, t, **fit):
    """Coefficients of 1/k and 1/k^2 in the expansion of M.

    Each column is fitted on the ray where it is built from mu3.  Returns
    (M1, M2, coefficients per column).
    """
    per_column = {j: Mfun.expansion(x, t, ray, columns=(j,), **fit)
                  for j, ray in CLEAN_RAYS.items()}
    m1 = np.empty((3, 3), dtype=complex)
    m2 = np.empty((3, 3), dtype=complex)
    for j, c in per_column.items():
        m1[:, j - 1], m2[:, j - 1] = c[1, :, j - 1], c[2, :, j - 1]
    return m1, m2, per_column


def structure_residuals(Mfun, x, t, **fit):
    """Relative residuals of the structural zeros and of the diagonal pattern."""
    m1, m2, _ = asymptotic_coefficients(Mfun, x, t, **fit)
    # relative to the coefficient size, floored so vanishing data give zeros
    n1 = max(np.max(np.abs(m1)), COEFFICIENT_FLOOR)
    n2 = max(np.max(np.abs(m2)), COEFFICIENT_FLOOR)
    res = {
        "M1_12": float(abs(m1[0, 1]) / n1),
        "M1_13": float(abs(m1[0, 2]) / n1),
        "M2_12+M2_21": float(abs(m2[0, 1] + m2[1, 0]) / n2),
    }
    target = m1[2, 2] * np.diag([OMEGA**2, OMEGA, 1.0])
    res["M1_diagonal_pattern"] = float(np.max(np.abs(m1 - target)) / n1)
    return res, m1, m2


def residue_scale(scat):
    """Size of the residues at k = 1 of the two denominators used in D14.

    M has a pole at k = 1 only once |k - 1| is small against these residues,
    which are proportional to the data amplitude.
    """
    lims = []
    for f in (lambda m: products(m)[1][:, 1, 1], lambda m: products(m)[0][:, 0, 0]):
        lim, _ = regularised_limit(scat, lambda m, f=f: (f(m), np.ones(len(m["s"]))), 1.0, (1, 0))
        lims.append(abs(lim))
    return min(lims)


def residue_matrix(Mfun, x, t, distances=None):
    """Extrapolated ``lim (k - 1) M(k)`` as k -> 1 along the real axis in D14.

    By default the approach distances are fractions RESIDUE_FRACTIONS of the
    residue scale of the denominators.
    """
    if distances is None:
        scale = residue_scale(Mfun.scat)
        if not scale > RESIDUE_FLOOR:
            return np.zeros((3, 3), dtype=complex)
        distances = tuple(f * scale for f in RESIDUE_FRACTIONS)
    d = np.asarray(distances)
    k = 1 + d
    m = Mfun(x, t, k)
    vals = (d[:, None, None] * m).reshape(len(d), -1)
    V = np.vander(d, len(d), increasing=True)
    return np.linalg.solve(V, vals)[0].reshape(3, 3)


def residue_pattern_residual(R):
    """Distance of R from the pattern rows (a, 0, b), (-a, 0, -b), (0, 0, 0)."""
    a = (R[0, 0] - R[1, 0]) / 2
    b = (R[0, 2] - R[1, 2]) / 2
    P = np.array([[a, 0, b], [-a, 0, -b], [0, 0, 0]])
    nrm = np.linalg.norm(R)
    return float(np.linalg.norm(R - P) / nrm) if nrm else 0.0, P
