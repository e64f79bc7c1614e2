"""Built-in parameter sets for the two residual-curve figures.

Each set is a dissipative complex-frequency model at a fixed target frequency.
The couplings are given to two decimals, which shifts the recomputed
frequency away from the target by a few 1e-3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brachistochrone import PassageTimeResult, default_t_max, passage_time_numeric, trans_problem, trans_residual
from .errors import NoRoot
from .models import DissipativeComplexModel, dissipative_complex_model


@dataclass(frozen=True)
class CurveSet:
    label: str
    E: float
    eps: float
    lam: complex
    phi: complex
    omega_target: complex

    def model(self) -> DissipativeComplexModel:
        return dissipative_complex_model(self.E, self.eps, self.lam, self.phi)


_W1 = 4.87 - 3.31j
_W2 = 6.99 - 0.46j

FIGURES = {
    1: (
        CurveSet("phi=0.2", 2.0, 2.5, 3.5 + 0j, 0.2, _W1),
        CurveSet("phi=0.3", 2.0, 2.5, 3.73 + 0.2j, 0.3, _W1),
        CurveSet("phi=0.35", 2.0, 2.5, 3.87 + 0.34j, 0.35, _W1),
        CurveSet("phi=0.4", 2.0, 2.5, 4.02 + 0.52j, 0.4, _W1),
    ),
    2: (
        CurveSet("eps=9.0", 2.0, 9.0, 1.85 - 14.84j, 0.2, _W2),
        CurveSet("eps=9.5", 2.0, 9.5, 2.72 - 16.32j, 0.2, _W2),
        CurveSet("eps=9.9", 2.0, 9.9, 3.41 - 17.29j, 0.2, _W2),
        CurveSet("eps=11.0", 2.0, 11.0, 5.01 - 19.62j, 0.2, _W2),
    ),
}


@dataclass
class Curve:
    curve_set: CurveSet
    omega: complex
    t: np.ndarray
    residual: np.ndarray
    root: PassageTimeResult | None
    no_root: NoRoot | None

    @property
    def omega_error(self) -> tuple[float, float]:
        d = self.omega - self.curve_set.omega_target
        return abs(d.real), abs(d.imag)


def figure_curves(fig_id: int, t_max: float | None = None, grid_n: int = 4096,
                  n_samples: int = 401, sets: tuple[CurveSet, ...] | None = None) -> list[Curve]:
    """Residual samples and first root for every set of a figure.

    ``sets`` replaces the built-in parameter sets. A set without a root carries
    its ``NoRoot`` instead of aborting the rest.
    """
    if fig_id not in FIGURES:
        raise ValueError(f"figure id must be 1 or 2, got {fig_id}")
    curves = []
    for cs in sets or FIGURES[fig_id]:
        model = cs.model()
        tm = default_t_max(model) if t_max is None else t_max
        t = np.linspace(0, tm, n_samples)[1:]
        root, err = None, None
        try:
            root = passage_time_numeric(trans_problem(model), tm, grid_n)
        except NoRoot as e:
            err = e
        curves.append(Curve(cs, model.omega, t, trans_residual(model, t), root, err))
    return curves
