"""Geometry of the jump contour and of the sectors it bounds.

The contour consists of eighteen unit-circle arcs ``n``, eighteen segments
``n'`` inside the disk and eighteen half-lines ``n''`` outside it, n = 1..18.
Segment ``n'`` and half-line ``n''`` lie on the same ray; arc ``n`` runs from
that ray to the ray of piece ``n + 1``.  Sector ``D_n`` is the part of the
wedge between those two rays outside the unit circle and ``E_n`` the part
inside it.
"""
import json
import re
from dataclasses import dataclass

import numpy as np

from .errors import EmptyPiece, OnBoundary
from .lax import EXCLUSION_RADIUS, KAPPA, distance_to_qhat, l_values, z_values

RAY_DEG = (90, 105, 135, 150, 165, 195, 210, 225, 255, 270, 285, 315, 330, 345, 15, 30, 45, 75)

# Arc orientation read off the figure: +1 counterclockwise, -1 clockwise.
ARC_ORIENTATION = (1, 1, 1, -1, -1, -1) * 3

ORDERING_TOL = 1e-12
JUNCTIONS = np.concatenate([np.exp(1j * np.deg2rad(RAY_DEG)), [0.0]])

# Orderings (ascending real parts) of (l_1, l_2, l_3) and (z_1, z_2, z_3).
_D_ORDER = {
    1: ("321", "132"), 2: ("321", "123"), 3: ("321", "213"), 4: ("231", "213"),
    5: ("231", "231"), 6: ("231", "321"), 7: ("213", "321"), 8: ("213", "312"),
    9: ("213", "132"), 10: ("123", "132"), 11: ("123", "123"), 12: ("123", "213"),
    13: ("132", "213"), 14: ("132", "231"), 15: ("132", "321"), 16: ("312", "321"),
    17: ("312", "312"), 18: ("312", "132"),
}
_E_ORDER = {
    1: ("123", "231"), 2: ("123", "321"), 3: ("123", "312"), 4: ("132", "312"),
    5: ("132", "132"), 6: ("132", "123"), 7: ("312", "123"), 8: ("312", "213"),
    9: ("312", "231"), 10: ("321", "231"), 11: ("321", "321"), 12: ("321", "312"),
    13: ("231", "312"), 14: ("231", "132"), 15: ("231", "123"), 16: ("213", "123"),
    17: ("213", "213"), 18: ("213", "231"),
}
_LOOKUP = {v: ("D", n) for n, v in _D_ORDER.items()}
_LOOKUP.update({v: ("E", n) for n, v in _E_ORDER.items()})


@dataclass(frozen=True)
class RegionId:
    family: str  # "D" or "E"
    n: int

    @property
    def f_index(self):
        """Index in the combined numbering F_1..F_36 (E_n is F_{n+18})."""
        return self.n if self.family == "D" else self.n + 18

    def __str__(self):
        return f"{self.family}{self.n}"


def region(name):
    m = re.fullmatch(r"([DE])(\d+)", name)
    return RegionId(m.group(1), int(m.group(2)))


def _order(values):
    return "".join(str(i + 1) for i in np.argsort(values.real, kind="stable"))


def _min_gap(values):
    r = np.sort(values.real)
    return np.min(np.diff(r))


def classify(k, tol=ORDERING_TOL):
    """Region containing k, decided by the orderings of Re l_j and Re z_j."""
    l, z = l_values(k), z_values(k)
    if _min_gap(l) < tol or _min_gap(z) < tol:
        raise OnBoundary(f"k = {k} lies on a region boundary")
    family, n = _LOOKUP[(_order(l), _order(z))]
    return RegionId(family, n)


def region_angles(reg):
    """Angular interval (degrees, start and span) of a region's wedge."""
    a0 = RAY_DEG[reg.n - 1]
    span = (RAY_DEG[reg.n % 18] - a0) % 360
    return a0, span


# which: (sign on Re l condition, sign on Re z condition)
# +1 means the column index must carry the minimal real part, -1 the maximal,
# 0 means no condition.
_DOMAIN_RULES = {
    "mu3": (+1, 0), "s": (+1, 0),
    "mu3A": (-1, 0), "sA": (-1, 0),
    "mu1": (-1, +1), "S": (0, +1),
    "mu1A": (+1, -1), "SA": (0, -1),
    "mu2": (-1, -1), "mu2A": (+1, +1),
}


def _extremal(values, n, sign, tol):
    re = values.real
    if sign > 0:
        return bool(np.all(re[n] <= re + tol))
    return bool(np.all(re[n] >= re - tol))


def in_domain(fn_tag, column, k, at_x_zero=False, tol=1e-9):
    """True when column ``column`` (1..3) of ``fn_tag`` is bounded at k.

    Closures are included: points where two real parts agree within ``tol``
    count as inside, which puts the unit circle in every domain.  With
    ``at_x_zero`` only the t-condition is imposed (the enlarged domains of the
    boundary eigenfunctions).
    """
    lsign, zsign = _DOMAIN_RULES[fn_tag]
    if at_x_zero and fn_tag in ("mu1", "mu2", "mu1A", "mu2A"):
        lsign = 0
    n = column - 1
    scale = tol * max(1.0, abs(k) ** 2, abs(k) ** -2)
    ok = True
    if lsign:
        ok &= _extremal(l_values(k), n, lsign, scale)
    if zsign:
        ok &= _extremal(z_values(k), n, zsign, scale)
    return ok


@dataclass(frozen=True)
class ContourPiece:
    n: int
    kind: str  # "arc", "segment" or "ray"

    @property
    def id(self):
        return {"arc": f"{self.n}", "segment": f"{self.n}'", "ray": f"{self.n}''"}[self.kind]

    @property
    def angle(self):
        """Ray angle (degrees) for segments and half-lines, start angle for arcs."""
        return RAY_DEG[self.n - 1]

    @property
    def span(self):
        if self.kind != "arc":
            return 0.0
        return (RAY_DEG[self.n % 18] - RAY_DEG[self.n - 1]) % 360

    @property
    def orientation(self):
        """+1/-1 for counterclockwise/clockwise arcs; straight pieces point outward."""
        return ARC_ORIENTATION[self.n - 1] if self.kind == "arc" else 1

    def point(self, s):
        """Point at parameter s: radius for straight pieces, angle fraction for arcs."""
        s = np.asarray(s, dtype=float)
        if self.kind == "arc":
            return np.exp(1j * np.deg2rad(self.angle + self.span * s))
        return s * np.exp(1j * np.deg2rad(self.angle))

    def tangent(self, k):
        """Unit tangent in the direction of the orientation."""
        if self.kind == "arc":
            return self.orientation * 1j * k / abs(k)
        return np.exp(1j * np.deg2rad(self.angle))

    def to_dict(self):
        return {"id": self.id, "kind": self.kind, "angle_deg": self.angle,
                "span_deg": self.span, "orientation": self.orientation,
                "radius": [0, 1] if self.kind == "segment" else ([1, None] if self.kind == "ray" else 1)}


def piece(pid):
    """Parse ``"3"``, ``"3'"`` or ``"3''"`` into a ContourPiece."""
    m = re.fullmatch(r"(\d+)('{0,2})", pid.strip())
    if not m or not 1 <= int(m.group(1)) <= 18:
        raise ValueError(f"unknown contour piece {pid!r}")
    kind = {"": "arc", "'": "segment", "''": "ray"}[m.group(2)]
    return ContourPiece(int(m.group(1)), kind)


ALL_PIECES = tuple(ContourPiece(n, kind) for kind in ("arc", "segment", "ray") for n in range(1, 19))


def sample_piece(p, n, ray_cutoff=6.0, radius=EXCLUSION_RADIUS, exclude=()):
    """n points strictly inside piece ``p`` avoiding the exclusion disks.

    The disks have the given radius and sit at the sixth roots of unity, at
    the origin, at the contour junctions and at any extra ``exclude`` points.
    Points are spread evenly over the admissible part of the parameter range.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p.kind == "arc":
        s = np.linspace(0.0, 1.0, 20001)[1:-1]
    elif p.kind == "segment":
        s = np.linspace(0.0, 1.0, 20001)[1:-1]
    else:
        s = np.linspace(1.0, ray_cutoff, 20001)[1:-1]
    k = p.point(s)
    centres = np.concatenate([KAPPA, JUNCTIONS, np.asarray(exclude, dtype=complex)])
    ok = np.min(np.abs(k[:, None] - centres[None, :]), axis=1) > radius
    ok &= distance_to_qhat(k) > radius
    allowed = s[ok]
    if allowed.size < n:
        raise EmptyPiece(f"exclusions consume piece {p.id}")
    idx = np.floor((np.arange(n) + 0.5) * allowed.size / n).astype(int)
    return list(p.point(allowed[idx]))


def normal_offsets(k, h, p):
    """Points at distance h on the + (left) and - (right) side of piece p at k."""
    nrm = 1j * p.tangent(k)
    return k + h * nrm, k - h * nrm


def locate(k, tol=1e-9):
    """Contour piece containing k, or None when k is off the contour."""
    r, ang = abs(k), np.rad2deg(np.angle(k)) % 360
    for n, a in enumerate(RAY_DEG, start=1):
        if abs((ang - a + 180) % 360 - 180) * np.pi / 180 * r < tol:
            if r < 1 - tol:
                return ContourPiece(n, "segment")
            if r > 1 + tol:
                return ContourPiece(n, "ray")
            return None
    if abs(r - 1) < tol:
        for n in range(1, 19):
            a0, span = RAY_DEG[n - 1], ContourPiece(n, "arc").span
            if 0 < (ang - a0) % 360 < span:
                return ContourPiece(n, "arc")
    return None


def geometry_json(indent=2):
    data = {"format": 1, "pieces": [p.to_dict() for p in ALL_PIECES],
            "junctions": [[float(z.real), float(z.imag)] for z in JUNCTIONS],
            "exclusion_radius": EXCLUSION_RADIUS}
    return json.dumps(data, indent=indent)
