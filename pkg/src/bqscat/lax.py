"""Spectral symbols of the Lax pair.

Indices j = 1, 2, 3 of the mathematical notation are stored zero-based:
position ``j - 1`` of every length-3 axis holds the quantity attached to
``omega**j``.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import OMEGA
from .errors import NearSingularPoint, ZeroArgument

SQRT3 = np.sqrt(3.0)
OMEGA_POWERS = OMEGA ** np.arange(1, 4)
# sixth roots of unity kappa_j = exp(i pi (j-1)/3)
KAPPA = np.exp(1j * np.pi * np.arange(6) / 3)
EXCLUSION_RADIUS = 0.05


def l_values(k):
    """``l_j(k) = i (w^j k + (w^j k)^{-1}) / (2 sqrt 3)``, shape ``k.shape + (3,)``."""
    q = np.asarray(k, dtype=complex)[..., None] * OMEGA_POWERS
    return 1j * (q + 1.0 / q) / (2 * SQRT3)


def z_values(k):
    """``z_j(k) = i ((w^j k)^2 + (w^j k)^{-2}) / (4 sqrt 3)``."""
    q = np.asarray(k, dtype=complex)[..., None] * OMEGA_POWERS
    return 1j * (q**2 + q**-2) / (4 * SQRT3)


def lam(k):
    k = np.asarray(k, dtype=complex)
    return (k**3 + k**-3) / 2


def distance_to_qhat(k):
    """Distance from k to the set of sixth roots of unity and the origin."""
    k = np.asarray(k, dtype=complex)
    d = np.min(np.abs(k[..., None] - KAPPA), axis=-1)
    return np.minimum(d, np.abs(k))


@dataclass(frozen=True)
class SpectralPoint:
    k: complex
    l: np.ndarray
    z: np.ndarray
    lam: complex


def make_point(k):
    k = complex(k)
    if k == 0:
        raise ZeroArgument("k = 0 is not an admissible spectral parameter")
    return SpectralPoint(k=k, l=l_values(k), z=z_values(k), lam=complex(lam(k)))


def phase(i, j, x, t, p):
    """``theta_ij = (l_i - l_j) x + (z_i - z_j) t`` with one-based i, j."""
    return (p.l[i - 1] - p.l[j - 1]) * x + (p.z[i - 1] - p.z[j - 1]) * t


def exponent(x, t, k):
    """Diagonal exponent ``x L(k) + t Z(k)`` as an array of shape ``(..., 3)``."""
    return x * l_values(k) + t * z_values(k)


def vandermonde_batch(k, radius=EXCLUSION_RADIUS):
    """P(k) and its inverse for an array of k.

    P has rows ``(1, 1, 1)``, ``(l_1, l_2, l_3)`` and ``(l_1^2, l_2^2, l_3^2)``.
    The inverse is the closed-form Vandermonde inverse.
    """
    k = np.asarray(k, dtype=complex)
    if np.any(distance_to_qhat(k) < radius):
        raise NearSingularPoint("k within the exclusion radius of a sixth root of unity or 0")
    l = l_values(k)
    P = np.stack([np.ones_like(l), l, l**2], axis=-2)
    Pinv = np.empty_like(P)
    for j in range(3):
        a, b = l[..., (j + 1) % 3], l[..., (j + 2) % 3]
        den = (l[..., j] - a) * (l[..., j] - b)
        # row j of P^{-1} holds the coefficients of the Lagrange basis polynomial
        Pinv[..., j, 0] = a * b / den
        Pinv[..., j, 1] = -(a + b) / den
        Pinv[..., j, 2] = 1.0 / den
    return P, Pinv


def vandermonde(p, radius=EXCLUSION_RADIUS):
    P, Pinv = vandermonde_batch(np.array([p.k]), radius)
    return P[0], Pinv[0]
