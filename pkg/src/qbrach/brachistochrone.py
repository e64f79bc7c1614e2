"""Passage-time problems and their solvers.

A problem pairs a model with a *formulation*: which states sit in the bra and
ket, which inner product and norms are used, and what the normalised amplitude
is compared against. ``amplitude`` evaluates the left-hand side either through
matrix exponentials or through the closed forms in :mod:`qbrach.closed_forms`.

Level conventions: every formulation compares a magnitude except ``TRANS``,
which compares the squared magnitude. For the real-frequency dissipative
family the right-hand side is ``level * exp(-Gamma pi / (2 omega))``.
For the complex-frequency family the default level is the calibrated value
``beta_check`` (squared convention), i.e. the benchmark transition probability
at ``t = pi / omega_r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import closed_forms as cf
from . import linalg2 as la
from .errors import NoClosedForm, ParameterError
from .metric import eta_inv_norm, eta_norm
from .models import (
    DissipativeComplexModel,
    DissipativeRealModel,
    Model,
    PtModel,
    calibration_decay,
    effective_frequency,
    superposition_states,
)
from .rootfind import first_root, maximize

DEFAULT_GRID_N = 4096
MIN_GRID_N = 64


class Formulation(str, Enum):
    QB = "QB_eq_qb"
    BC2 = "BC2"
    BC = "BC"
    DF = "DF"
    DF2 = "DF2"
    QBNH = "QBNH"
    GH = "GH"
    TRANS = "TRANS"


class Recipe(NamedTuple):
    bra: str  # "phi" or "Phi" superposition
    ket: str
    metric: bool  # eta inner product (else standard)
    bra_norm: str  # "eta" or "eta_inv"
    squared: bool
    family: type | None  # restricts the model family


_ANY = None
RECIPES = {
    Formulation.QB: Recipe("Phi", "Phi", True, "eta", False, _ANY),
    Formulation.BC2: Recipe("phi", "phi", True, "eta", False, _ANY),
    Formulation.BC: Recipe("phi", "phi", False, "eta_inv", False, _ANY),
    Formulation.DF: Recipe("Phi", "phi", True, "eta", False, _ANY),
    Formulation.DF2: Recipe("phi", "Phi", True, "eta", False, _ANY),
    Formulation.QBNH: Recipe("Phi", "Phi", True, "eta", False, DissipativeRealModel),
    Formulation.GH: Recipe("phi", "phi", True, "eta", False, DissipativeRealModel),
    Formulation.TRANS: Recipe("phi", "phi", True, "eta", True, DissipativeComplexModel),
}

# (psi_i, psi_f, formulation) per row
TABLE1 = [("Phi_i", "Phi_f", Formulation.QB), ("phi_i", "phi_f", Formulation.BC2),
          ("phi_i", "Phi_f", Formulation.DF), ("Phi_i", "phi_f", Formulation.DF2)]
TABLE2 = [("Phi_i", "Phi_f", Formulation.QBNH), ("phi_i", "phi_f", Formulation.GH),
          ("phi_i", "Phi_f", Formulation.DF), ("Phi_i", "phi_f", Formulation.DF2)]


def beta_check(model: DissipativeComplexModel) -> float:
    """Benchmark transition probability at ``t = pi / omega_r``.

    ``1/2 exp(-lam_r pi/w_r) [cosh(pi w_i / w_r) + 1]``
    """
    w = model.omega
    if w.real == 0:
        raise ParameterError("omega_r vanishes")
    return 0.5 * math.exp(-model.lam.real * math.pi / w.real) * (math.cosh(math.pi * w.imag / w.real) + 1)


def trans_residual(model: DissipativeComplexModel, t) -> np.ndarray:
    """Right minus left side of the transcendental passage-time equation."""
    if model.omega.real == 0:
        raise ParameterError("omega_r vanishes")
    return cf.trans_rhs(model, t) - cf.trans_lhs(model, t)


@dataclass(frozen=True)
class BrachistochroneProblem:
    model: Model
    formulation: Formulation
    level: float | None = None

    def __post_init__(self):
        form = Formulation(self.formulation)
        object.__setattr__(self, "formulation", form)
        recipe = RECIPES[form]
        if recipe.family is not None and not isinstance(self.model, recipe.family):
            raise ParameterError(f"{form.value} needs a {recipe.family.__name__}")
        level = self.level
        if level is None:
            if isinstance(self.model, DissipativeComplexModel):
                level = beta_check(self.model)
                level = level if recipe.squared else math.sqrt(level)
            else:
                level = 1.0
        level = float(level)
        # the calibrated level of the complex family is not bounded by one
        upper = math.inf if isinstance(self.model, DissipativeComplexModel) else 1.0
        if not 0 <= level <= upper:
            raise ParameterError(f"level must lie in [0, {upper}], got {level}")
        object.__setattr__(self, "level", level)

    @property
    def recipe(self) -> Recipe:
        return RECIPES[self.formulation]

    @property
    def rhs(self) -> float:
        return self.level * calibration_decay(self.model)


@dataclass(frozen=True)
class PassageTimeResult:
    tau: float
    method: str  # "analytic" or "numeric"
    residual: float
    bracket: tuple[float, float] | None = None
    formula: str = ""


def _states(problem: BrachistochroneProblem):
    model, rec = problem.model, problem.recipe
    pairs = {kind: superposition_states(model, kind) for kind in {rec.bra, rec.ket}}
    bra = pairs[rec.bra][1]
    ket = pairs[rec.ket][0]
    eta = model.eta
    bra_n = eta_norm(eta, bra) if rec.bra_norm == "eta" else eta_inv_norm(eta, bra)
    norm = bra_n * eta_norm(eta, ket)
    if rec.metric:
        e = eta.matrix
        w = la.adjoint(e) @ (e @ bra)
    else:
        w = bra
    return w, ket, norm


def _element_and_rate_fn(problem: BrachistochroneProblem):
    w, ket, norm = _states(problem)
    gen = -1j * problem.model.H
    # exp(-itH) = c0 I + c1 N; fold the fixed bra and ket in up front
    line = la.ExpLine(gen)
    n = line.n
    wk, wnk = np.vdot(w, ket), np.vdot(w, n @ ket)
    wgk, wgnk = np.vdot(w, gen @ ket), np.vdot(w, gen @ n @ ket)

    def element_and_rate(t: np.ndarray):
        c0, c1 = line(t)
        return c0 * wk + c1 * wnk, c0 * wgk + c1 * wgnk

    return element_and_rate, norm


def matrix_element(problem: BrachistochroneProblem, t) -> np.ndarray:
    """The (unnormalised) complex matrix element of the formulation."""
    return _element_and_rate_fn(problem)[0](np.asarray(t, dtype=float))[0]


def _lhs_fd(problem: BrachistochroneProblem):
    element_and_rate, norm = _element_and_rate_fn(problem)
    squared = problem.recipe.squared

    def fd(t):
        a, da = element_and_rate(np.asarray(t, dtype=float))
        mag = np.abs(a)
        cross = np.real(np.conj(a) * da)
        if squared:
            return mag**2 / norm**2, 2 * cross / norm**2
        safe = np.where(mag > 0, mag, 1.0)
        return mag / norm, np.where(mag > 0, cross / (safe * norm), 0.0)

    return fd


def _closed_amplitude(problem: BrachistochroneProblem, t: np.ndarray) -> np.ndarray:
    model, form = problem.model, problem.formulation
    base = {Formulation.QBNH: Formulation.QB, Formulation.GH: Formulation.BC2,
            Formulation.TRANS: Formulation.BC2}.get(form, form)
    if base is Formulation.QB:
        mag = np.abs(cf.transition_element(model, t))
    elif isinstance(model, PtModel) and base is Formulation.BC2:
        mag = np.abs(cf.pt_bc2_element(model, t)) * math.cos(model.alpha)
    elif isinstance(model, PtModel) and base in (Formulation.DF, Formulation.DF2):
        mag = np.abs(cf.pt_df_element(model, t)) * math.sqrt(math.cos(model.alpha))
    elif isinstance(model, DissipativeRealModel) and base is Formulation.BC2:
        mag = np.abs(cf.dr_gh_element(model, t))
    elif isinstance(model, DissipativeRealModel) and base in (Formulation.DF, Formulation.DF2):
        # all four state pairs share one amplitude for this family
        mag = np.abs(cf.transition_element(model, t))
    elif isinstance(model, DissipativeComplexModel) and base is Formulation.BC2:
        mag = np.sqrt(cf.tt_eta(model, t) / cf.complex_norm_product_sq(model))
    else:
        raise NoClosedForm(f"no closed-form amplitude for {form.value} on {type(model).__name__}")
    return mag**2 if problem.recipe.squared else mag


def amplitude(problem: BrachistochroneProblem, t, route: str = "matrix") -> np.ndarray:
    """Normalised amplitude (squared for ``TRANS``) at time(s) ``t``.

    Args:
        route: ``"matrix"`` for matrix exponentials, ``"closed"`` for the closed form.

    Raises:
        NoClosedForm: ``route="closed"`` and the formulation has none for this model.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ParameterError("t must be non-negative")
    if route == "matrix":
        out = _lhs_fd(problem)(t_arr)[0]
    elif route == "closed":
        out = _closed_amplitude(problem, t_arr)
    else:
        raise ValueError(f"unknown route {route!r}")
    return out if np.ndim(t) else float(out)


def default_t_max(model: Model) -> float:
    return 8 * math.pi / effective_frequency(model)


def _residual_at(problem: BrachistochroneProblem, tau: float) -> float:
    return abs(float(_lhs_fd(problem)(np.array([tau]))[0][0]) - problem.rhs)


def passage_time_analytic(problem: BrachistochroneProblem) -> PassageTimeResult:
    """Closed-form passage time, where one exists.

    The returned time is always the smallest positive root. For the two mixed
    PT rows that is ``(2 pi + alpha)/omega`` when ``alpha <= 0`` and ``alpha/omega``
    otherwise, since ``|cos((alpha - omega t)/2)|`` first reaches one at
    ``t = alpha/omega`` when alpha is positive.

    For the real-frequency dissipative family with ``Gamma > 0`` the returned
    ``pi/omega`` is the root on the decaying flank of the first lobe; an
    earlier crossing exists on the rising flank (see ``passage_time_numeric``).

    Raises:
        NoClosedForm: no formula for this formulation, model and level.
    """
    model, form, level = problem.model, problem.formulation, problem.level
    unit = abs(level - 1) <= 1e-15

    def done(tau: float, formula: str) -> PassageTimeResult:
        return PassageTimeResult(tau, "analytic", _residual_at(problem, tau), None, formula)

    if isinstance(model, PtModel):
        w, a = model.omega, model.alpha
        if form is Formulation.QB:
            return done(2 / w * math.asin(level), "2/omega arcsin(beta)")
        if unit and form is Formulation.BC2:
            return done((math.pi + 2 * a) / w, "pi/omega + 2 alpha/omega")
        if unit and form in (Formulation.DF, Formulation.DF2):
            if a <= 0:
                return done((2 * math.pi + a) / w, "2 pi/omega + alpha/omega")
            return done(a / w, "alpha/omega")
    elif isinstance(model, DissipativeRealModel):
        if unit and form in (Formulation.QB, Formulation.QBNH, Formulation.BC2, Formulation.GH,
                             Formulation.DF, Formulation.DF2):
            return done(math.pi / model.omega, "pi/omega~")
    elif isinstance(model, DissipativeComplexModel):
        calibrated = BrachistochroneProblem(model, form).level
        if form is Formulation.QB and abs(level - calibrated) <= 1e-15:
            return done(math.pi / model.omega.real, "pi/omega_r")
        if form is Formulation.TRANS and abs(level - calibrated) <= 1e-15 and abs(model.alpha) <= 1e-12:
            return done(math.pi / model.omega.real, "pi/omega_r")
    raise NoClosedForm(
        f"no closed-form passage time for {form.value} on {type(model).__name__} at level {level:g}"
    )


def passage_time_numeric(
    problem: BrachistochroneProblem,
    t_max: float | None = None,
    grid_n: int = DEFAULT_GRID_N,
    t_min: float = 0.0,
) -> PassageTimeResult:
    """Smallest root of ``amplitude(t) - rhs`` on ``(t_min, t_max]``.

    The residual is scanned on a uniform grid, the first sign change is refined
    by bisection to ``|f| <= 1e-10`` and a bracket of ``1e-12``. Peaks that
    touch the level without crossing it are caught too. ``t_min`` restricts
    the search, e.g. to start past an amplitude maximum.

    Raises:
        NoRoot: the residual never reaches zero on the grid.
    """
    if grid_n < MIN_GRID_N:
        raise ParameterError(f"grid_n must be at least {MIN_GRID_N}, got {grid_n}")
    t_max = default_t_max(problem.model) if t_max is None else float(t_max)
    if not t_max > t_min >= 0:
        raise ParameterError(f"need t_max > t_min >= 0, got t_min={t_min}, t_max={t_max}")
    lhs = _lhs_fd(problem)
    rhs = problem.rhs

    def fd(t):
        f, d = lhs(t)
        return f - rhs, d

    root = first_root(fd, t_min, t_max, grid_n)
    return PassageTimeResult(root.t, "numeric", root.residual, root.bracket)


def solve(problem: BrachistochroneProblem, t_max: float | None = None,
          grid_n: int = DEFAULT_GRID_N) -> PassageTimeResult:
    """Analytic passage time when a formula exists, numeric otherwise."""
    try:
        return passage_time_analytic(problem)
    except NoClosedForm:
        return passage_time_numeric(problem, t_max, grid_n)


def amplitude_max(problem: BrachistochroneProblem, t_max: float | None = None,
                  grid_n: int = DEFAULT_GRID_N) -> tuple[float, float]:
    """``(beta_prime, t_at_max)``: the largest amplitude reached on ``[0, t_max]``."""
    if grid_n < MIN_GRID_N:
        raise ParameterError(f"grid_n must be at least {MIN_GRID_N}, got {grid_n}")
    t_max = default_t_max(problem.model) if t_max is None else float(t_max)
    return maximize(_lhs_fd(problem), 0.0, t_max, grid_n)


def trans_problem(model: DissipativeComplexModel) -> BrachistochroneProblem:
    return BrachistochroneProblem(model, Formulation.TRANS)
