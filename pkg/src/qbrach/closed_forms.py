"""Closed-form transition elements, vectorised over ``t``.

Each function here has a matrix-exponential counterpart in
:mod:`qbrach.brachistochrone`; the test suite checks the two against each other.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .models import DissipativeComplexModel, DissipativeRealModel, Model, PtModel


def _t(t) -> np.ndarray:
    return np.asarray(t, dtype=float)


def transition_element(model: Model, t) -> np.ndarray:
    """``<phi_f| exp(-i t h) phi_i> = 1/2 exp(-i eps_- t) (1 - exp(-i omega t))``."""
    t = _t(t)
    return 0.5 * np.exp(-1j * model.eps_minus * t) * (1 - np.exp(-1j * model.omega * t))


def pt_evolved_initial(model: PtModel, t) -> np.ndarray:
    """``exp(-i t h) phi_i = exp(-i r cos(theta) t) (cos(omega t/2), i sin(omega t/2))``."""
    t = _t(t)
    ph = np.exp(-1j * model.r * math.cos(model.theta) * t)
    return np.stack([ph * np.cos(model.omega * t / 2), 1j * ph * np.sin(model.omega * t / 2)], axis=-1)


def pt_evolved_eta_initial(model: PtModel, t) -> np.ndarray:
    """``exp(-i t h) eta phi_i``: both components carry the half angle ``(alpha - omega t)/2``."""
    t = _t(t)
    a, w = model.alpha, model.omega
    ph = np.exp(-1j * t * model.r * math.cos(model.theta)) / math.sqrt(math.cos(a))
    half = 0.5 * (a - t * w)
    return np.stack([ph * np.sin(half), 1j * ph * np.cos(half)], axis=-1)


def pt_bc2_element(model: PtModel, t) -> np.ndarray:
    """``<phi_f|U phi_i>_eta = i exp(-i t r cos theta) sin(alpha - t omega/2) / cos(alpha)``."""
    t = _t(t)
    a = model.alpha
    return 1j * np.exp(-1j * t * model.r * math.cos(model.theta)) * np.sin(a - t * model.omega / 2) / math.cos(a)


def pt_df_element(model: PtModel, t) -> np.ndarray:
    """``<Phi_f|U phi_i>_eta = i exp(-i t r cos theta) cos((alpha - t omega)/2) / sqrt(cos alpha)``."""
    t = _t(t)
    a = model.alpha
    return (
        1j
        * np.exp(-1j * t * model.r * math.cos(model.theta))
        * np.cos(0.5 * (a - t * model.omega))
        / math.sqrt(math.cos(a))
    )


def dr_evolved_eta_initial(model: DissipativeRealModel, t) -> np.ndarray:
    """``exp(-i t h~) eta~ phi~_i`` for the real-frequency dissipative family."""
    t = _t(t)
    a, w = model.alpha, model.omega
    pref = (
        np.exp(-1j * t * (model.E - 1j * model.lam * model.r * math.cos(model.theta)))
        * math.sqrt(math.cos(a))
        / (math.sqrt(2) * (math.cos(a / 2) + math.sin(a / 2)))
    )
    return np.stack([-pref * np.exp(1j * t * w / 2), 1j * pref * np.exp(-1j * t * w / 2)], axis=-1)


def dr_gh_element(model: DissipativeRealModel, t) -> np.ndarray:
    """``<phi~_f|exp(-i t H~) phi~_i>_eta~ = -i exp(-i t (E - i lam r cos theta)) sin(t omega/2)``."""
    t = _t(t)
    decay = model.E - 1j * model.lam * model.r * math.cos(model.theta)
    return -1j * np.exp(-1j * t * decay) * np.sin(t * model.omega / 2)


def tt(model: DissipativeComplexModel, t) -> np.ndarray:
    """Squared transition probability ``1/2 exp(-lam_r t) [cosh(t w_i) - cos(t w_r)]``."""
    t = _t(t)
    w, lr = model.omega, model.lam.real
    return 0.5 * np.exp(-lr * t) * (np.cosh(t * w.imag) - np.cos(t * w.real))


def tt_eta(model: DissipativeComplexModel, t) -> np.ndarray:
    """``|<phi_f|exp(-i t H) phi_i>_eta|^2 = [cosh(t w_i) - cos(2 a_r - t w_r)] / (2 exp(lam_r t) |cos a|^2)``."""
    t = _t(t)
    w, a, lr = model.omega, model.alpha, model.lam.real
    return (np.cosh(t * w.imag) - np.cos(2 * a.real - t * w.real)) / (
        2 * np.exp(lr * t) * abs(cmath.cos(a)) ** 2
    )


def complex_norm_product_sq(model: DissipativeComplexModel) -> float:
    """``||phi_f||^2 ||phi_i||^2 = cosh^2(a_i) / (cos a cos a*)``."""
    a = model.alpha
    return math.cosh(a.imag) ** 2 / abs(cmath.cos(a)) ** 2


def trans_lhs(model: DissipativeComplexModel, t) -> np.ndarray:
    t = _t(t)
    w, a = model.omega, model.alpha
    denom = math.cosh(a.imag) ** 2 * (1 + math.cosh(math.pi * w.imag / w.real))
    return (np.cosh(t * w.imag) - np.cos(2 * a.real - t * w.real)) / denom


def trans_rhs(model: DissipativeComplexModel, t) -> np.ndarray:
    t = _t(t)
    w = model.omega
    return np.exp(model.lam.real * (t - math.pi / w.real))
