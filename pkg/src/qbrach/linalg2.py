"""Closed-form complex 2x2 linear algebra.

Matrices are ``complex128`` arrays of shape ``(..., 2, 2)`` and state vectors
arrays of shape ``(..., 2)``. Leading dimensions broadcast, so a whole time grid
of propagators can be built in one call.

Every traceless 2x2 matrix ``N = v . sigma`` squares to ``(v . v) I``, which
gives the exponential in closed form::

    exp(mu0 I + N) = exp(mu0) (cosh(phi) I + sinh(phi)/phi N),   phi**2 = v . v

Both ``cosh`` and ``sinh(phi)/phi`` are even in ``phi``, so the square-root
branch never matters here.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ExceptionalPoint, SingularMatrix

# |phi|**2 below this is treated as an exceptional (nilpotent) point
EP_TOL_SQ = 1e-24
# sinh(phi)/phi switches to its Taylor series below this |phi|
SERIES_CUTOFF = 1e-4
SINGULAR_DET = 1e-14

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


class PauliDecomposition(NamedTuple):
    """``M = mu0 I + mu[0] sigma_x + mu[1] sigma_y + mu[2] sigma_z``."""

    mu0: np.ndarray
    mu: np.ndarray

    def recompose(self) -> np.ndarray:
        mu0 = np.asarray(self.mu0)[..., None, None]
        return mu0 * IDENTITY + np.einsum("...k,kij->...ij", self.mu, PAULI)


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape[-2:] != (2, 2):
        raise ValueError(f"expected trailing shape (2, 2), got {m.shape}")
    return m


def pauli_decompose(m) -> PauliDecomposition:
    m = as_matrix(m)
    a, b = m[..., 0, 0], m[..., 0, 1]
    c, d = m[..., 1, 0], m[..., 1, 1]
    mu0 = (a + d) / 2
    mu = np.stack([(b + c) / 2, 1j * (b - c) / 2, (a - d) / 2], axis=-1)
    return PauliDecomposition(mu0, mu)


def _sinhc(phi: np.ndarray) -> np.ndarray:
    small = np.abs(phi) < SERIES_CUTOFF
    if not small.any():
        return np.sinh(phi) / phi
    safe = np.where(small, 1.0, phi)
    p2 = phi * phi
    series = 1 + p2 / 6 + p2 * p2 / 120
    return np.where(small, series, np.sinh(safe) / safe)


def exp_matrix(m) -> np.ndarray:
    """Matrix exponential of one or many 2x2 matrices.

    At an exceptional point (``phi == 0`` to within ``EP_TOL_SQ``) the
    traceless part is nilpotent and the result is ``exp(mu0) (I + N)``.
    """
    m = as_matrix(m)
    mu0 = (m[..., 0, 0] + m[..., 1, 1]) / 2
    n = m - mu0[..., None, None] * IDENTITY
    # v . v = -det(N) for traceless N
    phi_sq = n[..., 0, 0] ** 2 + n[..., 0, 1] * n[..., 1, 0]
    phi = np.sqrt(phi_sq)
    nilpotent = np.abs(phi_sq) <= EP_TOL_SQ
    cosh = np.where(nilpotent, 1.0, np.cosh(phi))
    sinhc = np.where(nilpotent, 1.0, _sinhc(phi))
    out = cosh[..., None, None] * IDENTITY + sinhc[..., None, None] * n
    return np.exp(mu0)[..., None, None] * out


class ExpLine:
    """``exp(t M) = c0(t) I + c1(t) N`` along a line of times, ``N = M - mu0 I``.

    Same kernel as :func:`exp_matrix`, but the decomposition of ``M`` is done
    once, so each sample costs a few scalar operations.
    """

    def __init__(self, m):
        m = as_matrix(m)
        if m.ndim != 2:
            raise ValueError("ExpLine takes a single matrix")
        self.mu0 = complex((m[0, 0] + m[1, 1]) / 2)
        self.n = m - self.mu0 * IDENTITY
        self.phi = np.sqrt(complex(self.n[0, 0] ** 2 + self.n[0, 1] * self.n[1, 0]))

    def __call__(self, t) -> tuple[np.ndarray, np.ndarray]:
        t = np.asarray(t, dtype=float)
        phi_t = t * self.phi
        scale = np.exp(t * self.mu0)
        nilpotent = np.abs(phi_t * phi_t) <= EP_TOL_SQ
        if not nilpotent.any():
            return scale * np.cosh(phi_t), scale * t * _sinhc(phi_t)
        c0 = scale * np.where(nilpotent, 1.0, np.cosh(phi_t))
        c1 = scale * t * np.where(nilpotent, 1.0, _sinhc(phi_t))
        return c0, c1


def adjoint(m) -> np.ndarray:
    return np.conj(np.swapaxes(as_matrix(m), -1, -2))


def det(m) -> np.ndarray:
    m = as_matrix(m)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def inverse(m) -> np.ndarray:
    m = as_matrix(m)
    d = det(m)
    if np.any(np.abs(d) <= SINGULAR_DET):
        raise SingularMatrix(f"|det| = {np.min(np.abs(d)):.3e} <= {SINGULAR_DET}")
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out / d[..., None, None]


def apply(m, v) -> np.ndarray:
    return np.einsum("...ij,...j->...i", as_matrix(m), np.asarray(v, dtype=np.complex128))


def std_inner(u, v) -> np.ndarray:
    """Standard inner product ``<u|v>``; conjugates the first argument."""
    return np.sum(np.conj(u) * v, axis=-1)


def norm(v) -> np.ndarray:
    return np.sqrt(np.real(std_inner(v, v)))


def inf_norm(m) -> float:
    """Max absolute row sum."""
    return float(np.max(np.sum(np.abs(as_matrix(m)), axis=-1)))


def hermiticity_residual(m) -> float:
    m = as_matrix(m)
    return inf_norm(m - adjoint(m))


def _eigvec(m: np.ndarray, val: complex) -> np.ndarray:
    # two candidate null vectors of (M - val I); keep the better conditioned one
    c1 = np.array([m[0, 1], val - m[0, 0]])
    c2 = np.array([val - m[1, 1], m[1, 0]])
    v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    return v / np.linalg.norm(v)


def eigen2(m) -> tuple[complex, complex, np.ndarray, np.ndarray]:
    """Eigenvalues and unit eigenvectors of a single 2x2 matrix.

    "plus" is the eigenvalue with the larger real part (ties: larger imaginary
    part). A scalar matrix returns the canonical basis.

    Raises:
        ExceptionalPoint: the discriminant vanishes but the matrix is not scalar.
    """
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise ValueError("eigen2 takes a single 2x2 matrix")
    mu0 = complex((m[0, 0] + m[1, 1]) / 2)
    n = m - mu0 * IDENTITY
    phi_sq = complex(n[0, 0] ** 2 + n[0, 1] * n[1, 0])
    if abs(phi_sq) <= EP_TOL_SQ:
        if np.max(np.abs(n)) <= np.sqrt(EP_TOL_SQ):
            return mu0, mu0, IDENTITY[:, 0].copy(), IDENTITY[:, 1].copy()
        raise ExceptionalPoint(f"discriminant |phi|^2 = {abs(phi_sq):.3e}")
    phi = complex(np.sqrt(phi_sq))
    a, b = mu0 + phi, mu0 - phi
    if (b.real, b.imag) > (a.real, a.imag):
        a, b = b, a
    return a, b, _eigvec(m, a), _eigvec(m, b)
