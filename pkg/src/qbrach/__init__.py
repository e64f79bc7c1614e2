"""Passage times for PT-symmetric and dissipative non-Hermitian two-level systems."""

from .brachistochrone import (
    BrachistochroneProblem,
    Formulation,
    PassageTimeResult,
    amplitude,
    amplitude_max,
    beta_check,
    passage_time_analytic,
    passage_time_numeric,
    solve,
    trans_residual,
)
from .errors import (
    AhatSingular,
    BrokenPtSymmetry,
    ComplexFrequency,
    DegenerateMetric,
    ExceptionalPoint,
    NegativeDecayWidth,
    NoClosedForm,
    NoRoot,
    ParameterError,
    QbrachError,
    QuadratureFailure,
    SingularMatrix,
)
from .evolution import EvolutionKind, EvolutionSpec, StepScenario, duhamel_first_order, propagator, step_evolution
from .linalg2 import eigen2, exp_matrix, pauli_decompose
from .metric import MetricOperator, eta_from_alpha, eta_inner, eta_norm, similarity_transform
from .models import (
    DissipativeComplexModel,
    DissipativeRealModel,
    PtModel,
    dissipative_complex_model,
    dissipative_real_model,
    eigenstates,
    lambda_from_omega,
    pt_model,
)

__all__ = [name for name in dir() if not name.startswith("_")]
