"""Dense real/complex primitives shared by the learning machines and the oracle.

Complex amplitude ``a_k`` of a state vector lives in real slots ``(2k, 2k+1)``
as ``(Re a_k, Im a_k)``. Every transform stage relies on that packing.
"""
from __future__ import annotations

import numpy as np

UNIT_TOL = 1e-9
UNITARY_TOL = 1e-12
DEGENERATE_NORM = 1e-12


class DegenerateVectorError(ValueError):
    """Raised when a vector is too short to be normalized."""


class NotUnitaryError(ValueError):
    """Raised when a matrix expected to be unitary is not."""


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0.0, atol=tol))


def is_orthogonal(m: np.ndarray, tol: float = 1e-10) -> bool:
    return is_unitary(np.asarray(m, dtype=float), tol)


def realify(u: np.ndarray, *, check: bool = True) -> np.ndarray:
    """Return the real orthogonal matrix equivalent to the complex unitary ``u``.

    Each entry ``a + ib`` becomes the block ``[[a, -b], [b, a]]``, so the result
    acts on vectors packed by :func:`realify_vector`.
    """
    u = np.asarray(u, dtype=complex)
    if check and not is_unitary(u):
        raise NotUnitaryError(f"matrix of shape {u.shape} is not unitary within {UNITARY_TOL}")
    n = u.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[0::2, 0::2] = u.real
    out[0::2, 1::2] = -u.imag
    out[1::2, 0::2] = u.imag
    out[1::2, 1::2] = u.real
    return out


def realify_vector(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    out = np.empty(2 * a.size)
    out[0::2] = a.real
    out[1::2] = a.imag
    return out


def complexify_vector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v[0::2] + 1j * v[1::2]


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if not norm > DEGENERATE_NORM:
        raise DegenerateVectorError(f"cannot normalize vector of norm {norm:.3g}")
    return v / norm


def pair_weights(x: np.ndarray) -> np.ndarray:
    """Squared norms of the consecutive pairs ``(x[2k], x[2k+1])``."""
    x = np.asarray(x, dtype=float)
    return x[0::2] ** 2 + x[1::2] ** 2
