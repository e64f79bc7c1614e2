"""Random valid models for property checks and sweeps."""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .models import DissipativeComplexModel, DissipativeRealModel, PtModel


def random_pt(rng: np.random.Generator) -> PtModel:
    """``s`` in [0.5, 3], any ``theta``, ``r`` kept inside the unbroken regime."""
    while True:
        s = rng.uniform(0.5, 3.0)
        theta = rng.uniform(-math.pi, math.pi)
        r_cap = min(5.0, 0.95 * s / max(abs(math.sin(theta)), 1e-9))
        try:
            return PtModel(r=rng.uniform(0, r_cap), s=s, theta=theta)
        except ParameterError:
            continue


def random_dissipative_real(rng: np.random.Generator) -> DissipativeRealModel:
    while True:
        try:
            m = DissipativeRealModel(
                E=rng.uniform(-2, 2),
                eps=rng.uniform(0.5, 3.0),
                r=rng.uniform(0, 2),
                s=rng.uniform(0.1, 2),
                theta=rng.uniform(-math.pi / 2, math.pi / 2),
                lam=rng.uniform(0, 1),
            )
        except ParameterError:
            continue
        if m.omega > 0.2:
            return m


def random_dissipative_complex(rng: np.random.Generator) -> DissipativeComplexModel:
    while True:
        lam = complex(rng.uniform(0, 3), rng.uniform(-1, 1))
        phi = complex(rng.uniform(0.1, 1.4), rng.uniform(-0.3, 0.3))
        try:
            m = DissipativeComplexModel(E=rng.uniform(-2, 2), eps=rng.uniform(0.5, 3.0), lam=lam, phi=phi)
            a = m.alpha
        except ParameterError:
            continue
        if abs(m.omega.real) > 0.2 and abs(a.imag) < 3 and abs(math.cos(a.real)) > 0.05:
            return m


def random_hermitian(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return scale * (a + a.conj().T) / 2
