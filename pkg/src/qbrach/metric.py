"""Metric operators built from a (possibly complex) angle ``alpha``.

The family used throughout is::

    eta(alpha) = 1/sqrt(cos alpha) * [[ sin(alpha/2), -i cos(alpha/2)],
                                      [ i cos(alpha/2),  sin(alpha/2)]]

which is Hermitian exactly when ``alpha`` is real, has determinant -1, and
``eta(0)`` is sigma_y.

Inner products are taken as ``<psi_f|O psi_i>_eta = <eta psi_f|eta O psi_i>``,
i.e. with metric ``eta^dagger eta``. For Hermitian eta this is the familiar
``<psi_f|eta^2 O psi_i>``; for complex alpha it is the form that keeps the
eigenstates biorthonormal and that the complex-frequency amplitudes are
written in.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from . import linalg2 as la
from .errors import DegenerateMetric

# library-wide residual tolerance (infinity norm)
RESIDUAL_TOL = 1e-12
DEGENERATE_COS = 1e-12


def eta_matrix(alpha: complex) -> np.ndarray:
    a = complex(alpha)
    pref = 1 / cmath.sqrt(cmath.cos(a))
    s, c = cmath.sin(a / 2), cmath.cos(a / 2)
    return pref * np.array([[s, -1j * c], [1j * c, s]], dtype=np.complex128)


@dataclass(frozen=True)
class MetricOperator:
    alpha: complex
    matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def hermitian(self) -> bool:
        # real alpha with cos(alpha) < 0 makes the prefactor imaginary
        a = complex(self.alpha)
        return a.imag == 0 and np.cos(a.real) > 0

    @property
    def inv(self) -> np.ndarray:
        return la.inverse(self.matrix)

    @property
    def squared(self) -> np.ndarray:
        return self.matrix @ self.matrix


def eta_from_alpha(alpha: complex) -> MetricOperator:
    a = complex(alpha)
    if not (np.isfinite(a.real) and np.isfinite(a.imag)):
        raise ValueError(f"alpha must be finite, got {alpha!r}")
    if abs(cmath.cos(a)) <= DEGENERATE_COS:
        raise DegenerateMetric(f"cos(alpha) = {cmath.cos(a):.3e} vanishes at alpha = {a}")
    m = eta_matrix(a)
    m.setflags(write=False)
    return MetricOperator(alpha=a, matrix=m)


def eta_inner(eta: MetricOperator, psi_f, op, psi_i):
    """``<eta psi_f | eta O psi_i>``; ``op`` may carry leading (time) axes."""
    left = la.apply(eta.matrix, psi_f)
    right = la.apply(eta.matrix, la.apply(op, psi_i))
    return la.std_inner(left, right)


def eta_norm(eta: MetricOperator, psi) -> float:
    return float(la.norm(la.apply(eta.matrix, psi)))


def eta_inv_norm(eta: MetricOperator, psi) -> float:
    return float(la.norm(la.apply(eta.inv, psi)))


def similarity_transform(eta: MetricOperator, m) -> np.ndarray:
    return eta.matrix @ la.as_matrix(m) @ eta.inv


def pseudo_hermiticity_check(eta: MetricOperator, m) -> float:
    """``|| H^dagger - eta^2 H eta^-2 ||_inf``; zero certifies pseudo-Hermiticity."""
    m = la.as_matrix(m)
    e2 = eta.squared
    return la.inf_norm(la.adjoint(m) - e2 @ m @ la.inverse(e2))
