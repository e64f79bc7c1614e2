"""The three 2x2 Hamiltonian families and their eigenstates.

All models share one attribute surface so solvers can treat them uniformly:

``H``      the non-Hermitian Hamiltonian driving the evolution
``h``      its similarity counterpart ``eta H eta^-1``
``eta``    the metric operator (:class:`~qbrach.metric.MetricOperator`)
``omega``  transition frequency ``eps_plus - eps_minus``
``alpha``  metric angle
``decay_width``  Gamma (0 unless the model is dissipative with real omega)

Construction validates the parameter domain; everything else is derived lazily
and cached, so a model is immutable once built.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

import numpy as np

from . import linalg2 as la
from .errors import (
    AhatSingular,
    BrokenPtSymmetry,
    ComplexFrequency,
    DegenerateMetric,
    NegativeDecayWidth,
    ParameterError,
)
from .metric import MetricOperator, eta_from_alpha

AHAT_DENOM_TOL = 1e-12
_SQRT2 = math.sqrt(2.0)


def phi_state(sign: int) -> np.ndarray:
    """Normalised eigenstates of the Hermitian counterpart, ``sign`` = +1 or -1."""
    phase = cmath.exp(1j * math.pi / 4 * (1 + sign))
    return phase / _SQRT2 * np.array([1, -sign], dtype=np.complex128)


def Phi_state(alpha: complex, sign: int) -> np.ndarray:
    """Eigenstates of the non-Hermitian Hamiltonian at metric angle ``alpha``."""
    a = complex(alpha)
    phase = cmath.exp(1j * math.pi / 4 * (1 - sign))
    pref = phase / cmath.sqrt(2 * cmath.cos(a))
    return pref * np.array(
        [-cmath.exp(sign * 1j * a / 2), -sign * cmath.exp(-sign * 1j * a / 2)],
        dtype=np.complex128,
    )


def pt_hamiltonian(r, s, theta) -> np.ndarray:
    return np.array(
        [[r * cmath.exp(1j * theta), s], [s, r * cmath.exp(-1j * theta)]], dtype=np.complex128
    )


def dissipative_real_hamiltonian(E, eps, r, s, theta, lam) -> np.ndarray:
    """The dissipative Hamiltonian; ``lam`` may be complex (used for the PT limit)."""
    return np.diag([E + eps, E - eps]).astype(np.complex128) - 1j * lam * pt_hamiltonian(r, s, theta)


def dissipative_complex_hamiltonian(E, eps, lam, phi) -> np.ndarray:
    c, s = cmath.cos(phi), cmath.sin(phi)
    coupling = np.array([[2 * c * c, cmath.sin(2 * phi)], [cmath.sin(2 * phi), 2 * s * s]])
    return np.diag([E + eps, E - eps]).astype(np.complex128) - 0.5j * lam * coupling


def _check_finite(**kw):
    for k, v in kw.items():
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ParameterError(f"{k} must be finite, got {v!r}")


@dataclass(frozen=True)
class PtModel:
    """PT-symmetric pair ``H = [[r e^{i theta}, s], [s, r e^{-i theta}]]`` and its Hermitian ``h``.

    Requires ``s > 0`` and the unbroken regime ``s^2 >= r^2 sin^2 theta``.
    """

    r: float
    s: float
    theta: float

    def __post_init__(self):
        _check_finite(r=self.r, s=self.s, theta=self.theta)
        if self.s <= 0:
            # s < 0 flips the sign of h's off-diagonal and swaps the eigenstate labels
            raise ParameterError(f"s must be positive, got {self.s}")
        gap = self.s**2 - (self.r * math.sin(self.theta)) ** 2
        if gap < 0:
            raise BrokenPtSymmetry(
                f"s^2 = {self.s**2:.6g} < r^2 sin^2(theta) = {self.s**2 - gap:.6g}"
            )
        if abs(math.cos(self.alpha)) <= 1e-12:
            raise DegenerateMetric("exceptional point: s^2 = r^2 sin^2(theta)")

    @property
    def alpha(self) -> float:
        return math.asin(max(-1.0, min(1.0, self.r / self.s * math.sin(self.theta))))

    @property
    def omega(self) -> float:
        return 2 * math.sqrt(max(0.0, self.s**2 - (self.r * math.sin(self.theta)) ** 2))

    @property
    def eps_plus(self) -> float:
        return self.r * math.cos(self.theta) + self.omega / 2

    @property
    def eps_minus(self) -> float:
        return self.r * math.cos(self.theta) - self.omega / 2

    decay_width = 0.0

    @cached_property
    def H(self) -> np.ndarray:
        return pt_hamiltonian(self.r, self.s, self.theta)

    @cached_property
    def h(self) -> np.ndarray:
        d, w = self.r * math.cos(self.theta), self.omega
        return np.array([[d, -w / 2], [-w / 2, d]], dtype=np.complex128)

    @cached_property
    def eta(self) -> MetricOperator:
        return eta_from_alpha(self.alpha)

    @classmethod
    def from_alpha_omega(cls, alpha: float, omega: float, theta: float = -math.pi / 2) -> "PtModel":
        """Pick ``(r, s)`` so the model has the requested ``alpha`` and ``omega``."""
        if not -math.pi / 2 < alpha < math.pi / 2:
            raise ParameterError(f"alpha must lie in (-pi/2, pi/2), got {alpha}")
        if math.sin(theta) == 0 and alpha != 0:
            raise ParameterError("theta with sin(theta) = 0 only admits alpha = 0")
        s = omega / (2 * math.cos(alpha))
        r = s * math.sin(alpha) / math.sin(theta) if alpha != 0 else 0.0
        return cls(r=r, s=s, theta=theta)


@dataclass(frozen=True)
class DissipativeRealModel:
    """Dissipative Hamiltonian with real transition frequency.

    ``H = diag(E+eps, E-eps) - i lam [[r e^{i theta}, s], [s, r e^{-i theta}]]``
    with all parameters real. Both eigenvalues share the imaginary part
    ``-Gamma/2`` where ``Gamma = 2 r lam cos(theta)``.
    """

    E: float
    eps: float
    r: float
    s: float
    theta: float
    lam: float

    def __post_init__(self):
        _check_finite(E=self.E, eps=self.eps, r=self.r, s=self.s, theta=self.theta, lam=self.lam)
        if self.s <= 0:
            raise ParameterError(f"s must be positive, got {self.s}")
        if not -math.pi / 2 <= self.theta <= math.pi / 2:
            raise ParameterError(f"theta must lie in [-pi/2, pi/2], got {self.theta}")
        shifted = self.eps + self.r * self.lam * math.sin(self.theta)
        if shifted**2 < (self.lam * self.s) ** 2:
            raise ComplexFrequency(
                f"(eps + r lam sin theta)^2 = {shifted**2:.6g} < (lam s)^2 = {(self.lam * self.s) ** 2:.6g}"
            )
        if shifted <= 0:
            # the metric-angle parameterisation needs a positive shifted splitting
            raise ParameterError(f"eps + r lam sin(theta) must be positive, got {shifted:.6g}")
        if self.decay_width < 0:
            raise NegativeDecayWidth(f"Gamma = 2 r lam cos(theta) = {self.decay_width:.6g} < 0")
        if abs(math.cos(self.alpha)) <= 1e-12:
            raise DegenerateMetric("exceptional point: omega vanishes")

    @property
    def shifted_splitting(self) -> float:
        return self.eps + self.r * self.lam * math.sin(self.theta)

    @property
    def omega(self) -> float:
        return 2 * math.sqrt(max(0.0, self.shifted_splitting**2 - (self.lam * self.s) ** 2))

    @property
    def alpha(self) -> float:
        return math.asin(max(-1.0, min(1.0, self.s * self.lam / self.shifted_splitting)))

    @property
    def decay_width(self) -> float:
        return 2 * self.r * self.lam * math.cos(self.theta)

    @property
    def eps_plus(self) -> complex:
        return complex(self.E + self.omega / 2, -self.decay_width / 2)

    @property
    def eps_minus(self) -> complex:
        return complex(self.E - self.omega / 2, -self.decay_width / 2)

    @cached_property
    def H(self) -> np.ndarray:
        return dissipative_real_hamiltonian(self.E, self.eps, self.r, self.s, self.theta, self.lam)

    @cached_property
    def h(self) -> np.ndarray:
        return np.diag([self.eps_minus, self.eps_plus]).astype(np.complex128)

    @cached_property
    def eta(self) -> MetricOperator:
        return eta_from_alpha(self.alpha)


@dataclass(frozen=True)
class DissipativeComplexModel:
    """Dissipative Hamiltonian with complex transition frequency.

    ``H = diag(E+eps, E-eps) - (i lam / 2) [[2 cos^2 phi, sin 2phi], [sin 2phi, 2 sin^2 phi]]``
    with ``E, eps`` real and ``lam, phi`` complex. ``omega`` uses the principal
    square root and ``alpha = i Log(ratio)`` the principal logarithm.
    The metric angle is only computed on demand: it diverges when
    ``lam sin(2 phi)`` vanishes.
    """

    E: float
    eps: float
    lam: complex
    phi: complex

    def __post_init__(self):
        _check_finite(E=self.E, eps=self.eps, lam=self.lam, phi=self.phi)
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "phi", complex(self.phi))
        if abs(self._ahat_denominator) <= AHAT_DENOM_TOL:
            raise AhatSingular(f"|2 eps + omega - i lam cos 2phi| = {abs(self._ahat_denominator):.3e}")

    @property
    def omega(self) -> complex:
        eps, lam, phi = self.eps, self.lam, self.phi
        return cmath.sqrt(4 * eps**2 - lam**2 - 4j * eps * lam * cmath.cos(2 * phi))

    @property
    def _ahat_denominator(self) -> complex:
        return 2 * self.eps + self.omega - 1j * self.lam * cmath.cos(2 * self.phi)

    @property
    def ahat_ratio(self) -> complex:
        """The ratio ``exp(-i alpha)`` is defined by."""
        return -1j * self.lam * cmath.sin(2 * self.phi) / self._ahat_denominator

    @cached_property
    def alpha(self) -> complex:
        ratio = self.ahat_ratio
        if abs(ratio) <= AHAT_DENOM_TOL:
            raise AhatSingular("lam sin(2 phi) vanishes; the metric angle diverges")
        return 1j * cmath.log(ratio)

    @property
    def eps_plus(self) -> complex:
        return self.E + self.omega / 2 - 0.5j * self.lam

    @property
    def eps_minus(self) -> complex:
        return self.E - self.omega / 2 - 0.5j * self.lam

    decay_width = 0.0

    @cached_property
    def H(self) -> np.ndarray:
        return dissipative_complex_hamiltonian(self.E, self.eps, self.lam, self.phi)

    @cached_property
    def h(self) -> np.ndarray:
        d, w = self.E - 0.5j * self.lam, self.omega
        return np.array([[d, -w / 2], [-w / 2, d]], dtype=np.complex128)

    @cached_property
    def eta(self) -> MetricOperator:
        return eta_from_alpha(self.alpha)


Model = Union[PtModel, DissipativeRealModel, DissipativeComplexModel]


def pt_model(r, s, theta) -> PtModel:
    return PtModel(r=float(r), s=float(s), theta=float(theta))


def dissipative_real_model(E, eps, r, s, theta, lam) -> DissipativeRealModel:
    return DissipativeRealModel(*(float(x) for x in (E, eps, r, s, theta, lam)))


def dissipative_complex_model(E, eps, lam, phi) -> DissipativeComplexModel:
    return DissipativeComplexModel(float(E), float(eps), complex(lam), complex(phi))


def lambda_from_omega(eps: float, phi: complex, omega: complex) -> tuple[complex, complex]:
    """Both couplings ``lam`` that give transition frequency ``omega``.

    Roots of ``lam^2 + 4 i eps lam cos 2phi + omega^2 - 4 eps^2 = 0``; the first
    uses ``+sqrt`` (principal branch).
    """
    centre = -2j * eps * cmath.cos(2 * phi)
    d = cmath.sqrt(4 * eps**2 * cmath.sin(2 * phi) ** 2 - omega**2)
    return centre + d, centre - d


def effective_frequency(model: Model) -> float:
    """The real frequency that sets the oscillation period of amplitudes."""
    w = model.omega
    return abs(w.real) if isinstance(w, complex) else abs(w)


def calibration_decay(model: Model) -> float:
    """Right-hand-side factor ``exp(-Gamma pi / (2 omega))`` for the real-frequency dissipative family."""
    if isinstance(model, DissipativeRealModel):
        return math.exp(-model.decay_width * math.pi / (2 * model.omega))
    return 1.0


class Eigenstates(NamedTuple):
    Phi_plus: np.ndarray
    Phi_minus: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray


def eigenstates(model: Model) -> Eigenstates:
    """Right eigenvectors of ``H`` (``Phi``) and of ``h`` (``phi = eta Phi``)."""
    if isinstance(model, DissipativeRealModel):
        a = model.alpha
        Pm, Pp = Phi_state(a, -1), Phi_state(a, +1)
        Phi_plus = (Pm + 1j * Pp) / _SQRT2
        Phi_minus = (Pm - 1j * Pp) / _SQRT2
        e = model.eta.matrix
        return Eigenstates(Phi_plus, Phi_minus, e @ Phi_plus, e @ Phi_minus)
    a = model.alpha
    return Eigenstates(Phi_state(a, +1), Phi_state(a, -1), phi_state(+1), phi_state(-1))


def superposition_states(model: Model, kind: str = "phi") -> tuple[np.ndarray, np.ndarray]:
    """Initial and final states ``(|-> -+ i|+>)/sqrt2`` built from ``phi`` or ``Phi`` eigenstates.

    Returns ``(psi_i, psi_f)``.
    """
    st = eigenstates(model)
    if kind == "phi":
        minus, plus = st.phi_minus, st.phi_plus
    elif kind == "Phi":
        minus, plus = st.Phi_minus, st.Phi_plus
    else:
        raise ValueError(f"kind must be 'phi' or 'Phi', got {kind!r}")
    return (minus - 1j * plus) / _SQRT2, (minus + 1j * plus) / _SQRT2
