"""Closed-form 3x3 complex linear algebra.

Every function accepts arrays of shape ``(..., 3, 3)`` and broadcasts over the
leading axes, so a batch of matrices (one per spectral point) is handled in a
single call.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import OverflowRisk, SingularMatrix

OMEGA = np.exp(2j * np.pi / 3)

# Cyclic permutation and the 1<->2 swap used by the symmetry relations.
MAT_A = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
MAT_B = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)

SINGULAR_RTOL = 1e-13
EXPONENT_CAP = 700.0


@dataclass(frozen=True)
class StructuralConstants:
    omega: complex = complex(OMEGA)
    matA: np.ndarray = field(default_factory=lambda: MAT_A.copy())
    matB: np.ndarray = field(default_factory=lambda: MAT_B.copy())


def identity(shape=()):
    """Identity matrices broadcast to ``shape + (3, 3)``."""
    return np.broadcast_to(np.eye(3, dtype=complex), tuple(shape) + (3, 3)).copy()


def matmul(a, b):
    return np.matmul(a, b)


def det(a):
    a = np.asarray(a)
    return (a[..., 0, 0] * (a[..., 1, 1] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 1])
            - a[..., 0, 1] * (a[..., 1, 0] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 0])
            + a[..., 0, 2] * (a[..., 1, 0] * a[..., 2, 1] - a[..., 1, 1] * a[..., 2, 0]))


def cofactor(a):
    """Matrix of signed 2x2 minors, so ``cofactor(a) = det(a) * inv(a).T``."""
    a = np.asarray(a, dtype=complex)
    c = np.empty_like(a)
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        for j in range(3):
            j1, j2 = (j + 1) % 3, (j + 2) % 3
            # cyclic index choice makes the sign come out automatically
            c[..., i, j] = a[..., i1, j1] * a[..., i2, j2] - a[..., i1, j2] * a[..., i2, j1]
    return c


def inverse(a, rtol=SINGULAR_RTOL):
    """Inverse through the adjugate.

    Raises SingularMatrix when ``|det a| <= rtol * ||a||`` for any matrix in
    the batch (Frobenius norm).
    """
    a = np.asarray(a, dtype=complex)
    d = det(a)
    scale = np.linalg.norm(a, axis=(-2, -1))
    if np.any(~(np.abs(d) > rtol * scale)):
        raise SingularMatrix("determinant below singular threshold")
    return np.swapaxes(cofactor(a), -1, -2) / d[..., None, None]


def conj_exp(d, a, cap=EXPONENT_CAP, check=True):
    """Return ``e^{D} a e^{-D}`` for the diagonal ``D = diag(d)``.

    ``d`` has shape ``(..., 3)``; entry (i, j) of the result is
    ``exp(d_i - d_j) * a_ij``.  With ``check`` set, an exponent whose real
    part exceeds ``cap`` in absolute value raises OverflowRisk.
    """
    d = np.asarray(d, dtype=complex)
    diff = d[..., :, None] - d[..., None, :]
    if check and np.any(np.abs(diff.real) > cap):
        raise OverflowRisk(f"exponent real part exceeds cap {cap}")
    return np.exp(diff) * np.asarray(a)


def conj(m, a):
    """Similarity transform ``m a m^{-1}`` for a permutation matrix ``m``.

    Implemented by index permutation, so NaN entries of ``a`` stay in place
    instead of spreading through a matrix product.
    """
    p = np.argmax(np.asarray(m), axis=1)
    a = np.asarray(a)
    return a[..., p[:, None], p[None, :]]
