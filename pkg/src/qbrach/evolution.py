"""Time-evolution operators: exact propagators, step switching, first-order DuHamel."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg2 as la
from .errors import ParameterError
from .metric import RESIDUAL_TOL
from .quadrature import adaptive_simpson


def propagator(generator, t) -> np.ndarray:
    """``exp(-i t M)``; ``t`` may be an array, giving shape ``t.shape + (2, 2)``."""
    m = la.as_matrix(generator)
    t = np.asarray(t, dtype=float)
    return la.exp_matrix(-1j * t[..., None, None] * m)


def evolve(generator, t, psi) -> np.ndarray:
    return la.apply(propagator(generator, t), psi)


class EvolutionKind(str, Enum):
    hermitian_u = "hermitian_u"
    non_hermitian_U = "non_hermitian_U"
    perturbative = "perturbative"


@dataclass(frozen=True)
class EvolutionSpec:
    generator: np.ndarray
    kind: EvolutionKind = EvolutionKind.non_hermitian_U
    g: float = 0.0
    h1: Callable[[float], np.ndarray] | None = None

    def __post_init__(self):
        kind = EvolutionKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is not EvolutionKind.non_hermitian_U:
            res = la.hermiticity_residual(self.generator)
            if res > RESIDUAL_TOL:
                raise ParameterError(f"{kind.value} needs a Hermitian generator (residual {res:.2e})")
        if kind is EvolutionKind.perturbative and self.h1 is None:
            raise ParameterError("perturbative evolution needs h1")

    def operator(self, t: float) -> np.ndarray:
        if self.kind is EvolutionKind.perturbative:
            return duhamel_first_order(self.generator, self.h1, self.g, t)
        return propagator(self.generator, t)


def duhamel_first_order(
    h,
    h1: Callable[[float], np.ndarray],
    g: float,
    t: float,
    tol: float = 1e-10,
    max_intervals: int = 2**16,
) -> np.ndarray:
    """First-order DuHamel propagator for ``H(t) = h + g h1(t)``::

        U(t, 0) = exp(-i h t) - i g  int_0^t  exp(-i h (t - s)) h1(s) exp(-i h s) ds

    ``h1`` must be safe to call from several threads at once (no shared state).

    Raises:
        ParameterError: ``t < 0`` or ``h`` not Hermitian.
        QuadratureFailure: the integral did not converge within ``max_intervals``.
    """
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    h = la.as_matrix(h)
    res = la.hermiticity_residual(h)
    if res > RESIDUAL_TOL:
        raise ParameterError(f"unperturbed h must be Hermitian (residual {res:.2e})")
    u0 = propagator(h, t)
    if g == 0 or t == 0:
        return u0

    def integrand(s: float) -> np.ndarray:
        return propagator(h, t - s) @ la.as_matrix(h1(s)) @ propagator(h, s)

    return u0 - 1j * g * adaptive_simpson(integrand, 0.0, t, tol=tol, max_intervals=max_intervals)


@dataclass(frozen=True)
class StepScenario:
    """``H`` acts during ``[0, tau]``, then the base ``h`` takes over."""

    h: np.ndarray
    H: np.ndarray
    tau: float

    def __post_init__(self):
        if self.tau < 0:
            raise ParameterError(f"tau must be non-negative, got {self.tau}")


def step_evolution(scenario: StepScenario, t: float) -> np.ndarray:
    if t < 0:
        raise ParameterError(f"t must be non-negative, got {t}")
    if t <= scenario.tau:
        return propagator(scenario.H, t)
    return propagator(scenario.h, t - scenario.tau) @ propagator(scenario.H, scenario.tau)
