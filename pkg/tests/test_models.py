import cmath
import math

import numpy as np
import pytest
from hypothesis import given

from qbrach import linalg2 as la
from qbrach.errors import AhatSingular, BrokenPtSymmetry, ComplexFrequency, DegenerateMetric, ParameterError
from qbrach.models import (
    PtModel,
    calibration_decay,
    dissipative_complex_model,
    dissipative_real_hamiltonian,
    dissipative_real_model,
    effective_frequency,
    eigenstates,
    lambda_from_omega,
    pt_hamiltonian,
    pt_model,
    superposition_states,
)

from conftest import dissipative_complex_models, dissipative_real_models, pt_models


def test_pt_hermitian_point():
    m = pt_model(0, 1, 0)
    assert m.omega == 2 and m.alpha == 0
    assert la.hermiticity_residual(m.H) == 0
    # h = sigma_y H sigma_y; the off-diagonal sign flips
    np.testing.assert_allclose(m.h, la.SIGMA_Y @ m.H @ la.SIGMA_Y, atol=1e-15)


def test_pt_half_broken_example():
    m = pt_model(1, 2, math.pi / 2)
    assert math.sin(m.alpha) == pytest.approx(0.5, abs=1e-15)
    assert m.alpha == pytest.approx(math.pi / 6, abs=1e-15)
    assert m.omega == pytest.approx(2 * math.sqrt(3), abs=1e-14)


def test_pt_broken_and_invalid():
    with pytest.raises(BrokenPtSymmetry):
        pt_model(2, 1, math.pi / 2)
    with pytest.raises(DegenerateMetric):
        pt_model(1, 1, math.pi / 2)
    with pytest.raises(ParameterError):
        pt_model(0.1, -1, 0.2)
    with pytest.raises(ParameterError):
        pt_model(float("nan"), 1, 0)


@given(pt_models())
def test_pt_eigenvalues(m):
    ev = np.sort_complex(np.linalg.eigvals(m.H))
    want = np.sort_complex(np.array([m.eps_minus, m.eps_plus], dtype=complex))
    assert np.max(np.abs(ev - want)) <= 1e-11 * max(1, la.inf_norm(m.H))


@given(pt_models())
def test_from_alpha_omega_round_trip(m):
    if abs(m.alpha) < 1e-6:
        return
    back = PtModel.from_alpha_omega(m.alpha, m.omega, m.theta if abs(math.sin(m.theta)) > 1e-3 else -math.pi / 2)
    assert back.alpha == pytest.approx(m.alpha, abs=1e-9)
    assert back.omega == pytest.approx(m.omega, rel=1e-9)


def test_dissipative_real_without_dissipation():
    m = dissipative_real_model(0.5, 1.5, 0.7, 0.4, 0.3, 0.0)
    np.testing.assert_array_equal(m.H, np.diag([2.0, -1.0]).astype(complex))
    assert m.omega == 3.0 and m.decay_width == 0 and m.alpha == 0


@pytest.mark.parametrize("k", range(3, 9))
def test_dissipative_real_reduces_to_pt(k):
    r, s, theta = 0.8, 1.3, 0.4
    lam = 1j * (1 - 10.0**-k)
    err = la.inf_norm(dissipative_real_hamiltonian(0, 0, r, s, theta, lam) - pt_hamiltonian(r, s, theta))
    assert err == pytest.approx((r + s) * 10.0**-k, rel=1e-6)


def test_dissipative_real_frequency_against_eigen2():
    m = dissipative_real_model(1, 1, 0.5, 0.5, 0, 0.5)
    a, b, _, _ = la.eigen2(m.H)
    assert m.omega == pytest.approx(math.sqrt(15) / 2, abs=1e-15)
    assert (a - b).real == pytest.approx(m.omega, abs=1e-14)
    assert abs((a - b).imag) <= 1e-14
    assert a.imag == pytest.approx(-m.decay_width / 2, abs=1e-14)


def test_dissipative_real_domain():
    with pytest.raises(ComplexFrequency):
        dissipative_real_model(0, 0.1, 0, 1, 0, 0.5)
    with pytest.raises(ParameterError):
        dissipative_real_model(0, 1, 0.1, 1, 2.0, 0.1)
    with pytest.raises(ParameterError):
        dissipative_real_model(0, -2, 0.1, 1, 0.1, 0.1)


@given(dissipative_real_models())
def test_dissipative_real_angle_relation(m):
    assert math.tan(m.alpha) == pytest.approx(2 * m.s * m.lam / m.omega, rel=1e-10, abs=1e-12)
    ev = np.sort_complex(np.linalg.eigvals(m.H))
    want = np.sort_complex(np.array([m.eps_minus, m.eps_plus]))
    assert np.max(np.abs(ev - want)) <= 1e-10 * max(1, la.inf_norm(m.H))


@pytest.mark.parametrize("eps, lam, want", [
    (2.5, 3.5, 4.87 - 3.31j),
    (9.0, 1.85 - 14.84j, 6.99 - 0.46j),
])
def test_target_frequencies(eps, lam, want):
    w = dissipative_complex_model(2, eps, lam, 0.2).omega
    assert abs(w.real - want.real) <= 0.01 and abs(w.imag - want.imag) <= 0.01


def test_dissipative_complex_without_dissipation():
    with pytest.raises(AhatSingular):
        dissipative_complex_model(2, 2.5, 0, 0.2).alpha
    m = dissipative_complex_model(2, 2.5, 0, 0.2)
    assert m.omega == 5
    np.testing.assert_array_equal(m.H, np.diag([4.5, -0.5]).astype(complex))


@given(dissipative_complex_models())
def test_dissipative_complex_eigenvalues(m):
    assert m.eps_plus + m.eps_minus == pytest.approx(2 * m.E - 1j * m.lam, abs=1e-12)
    ev = np.sort_complex(np.linalg.eigvals(m.H))
    want = np.sort_complex(np.array([m.eps_minus, m.eps_plus]))
    assert np.max(np.abs(ev - want)) <= 1e-10 * max(1, la.inf_norm(m.H))


def test_lambda_from_omega_examples():
    a, b = lambda_from_omega(2.5, 0.2, 4.87 - 3.31j)
    assert min(abs(a - 3.5), abs(b - 3.5)) <= 0.02
    a, b = lambda_from_omega(9.5, 0.2, 6.99 - 0.46j)
    assert min(abs(a - (2.72 - 16.32j)), abs(b - (2.72 - 16.32j))) <= 0.02


@pytest.mark.parametrize("eps, phi", [(1.5, 0.3), (0.7, 0.9 + 0.2j)])
def test_lambda_from_omega_trivial_root(eps, phi):
    roots = sorted(lambda_from_omega(eps, phi, 2 * eps), key=abs)
    assert abs(roots[0]) <= 1e-12
    assert roots[1] == pytest.approx(-4j * eps * cmath.cos(2 * phi), abs=1e-12)


@given(dissipative_complex_models())
def test_lambda_from_omega_inverts(m):
    roots = lambda_from_omega(m.eps, m.phi, m.omega)
    assert min(abs(r - m.lam) for r in roots) <= 1e-9 * max(1, abs(m.lam))


def _is_eigvec(H, v):
    w = H @ v
    lam = np.vdot(v, w) / np.vdot(v, v)
    return np.linalg.norm(w - lam * v) <= 1e-10 * max(1, la.inf_norm(H)), lam


@pytest.mark.parametrize("model", [
    pt_model(1, 2, math.pi / 4),
    dissipative_real_model(1, 1.5, 0.4, 0.6, 0.3, 0.7),
    dissipative_complex_model(2, 2.5, 3.5, 0.2),
])
def test_eigenstates(model):
    st = eigenstates(model)
    ok_p, lp = _is_eigvec(model.H, st.Phi_plus)
    ok_m, lm = _is_eigvec(model.H, st.Phi_minus)
    assert ok_p and ok_m
    assert lp == pytest.approx(model.eps_plus, abs=1e-10)
    assert lm == pytest.approx(model.eps_minus, abs=1e-10)
    # phi = eta Phi, eigenvectors of h
    e = model.eta.matrix
    np.testing.assert_allclose(e @ st.Phi_plus, st.phi_plus, atol=1e-12)
    assert _is_eigvec(model.h, st.phi_plus)[0] and _is_eigvec(model.h, st.phi_minus)[0]


def test_eigenstates_hermitian_point():
    st = eigenstates(pt_model(0, 1, 0))
    np.testing.assert_allclose(st.Phi_plus, la.SIGMA_Y @ st.phi_plus, atol=1e-15)
    np.testing.assert_allclose(st.Phi_minus, la.SIGMA_Y @ st.phi_minus, atol=1e-15)
    np.testing.assert_allclose(st.Phi_plus, -np.array([1, 1]) / math.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("model", [
    pt_model(1, 2, math.pi / 4),
    dissipative_real_model(1, 1.5, 0.4, 0.6, 0.3, 0.7),
    dissipative_complex_model(2, 2.5, 3.5, 0.2),
])
def test_phi_superpositions_orthonormal(model):
    i, f = superposition_states(model)
    assert la.norm(i) == pytest.approx(1, abs=1e-12)
    assert la.norm(f) == pytest.approx(1, abs=1e-12)
    assert abs(la.std_inner(f, i)) <= 1e-12


def test_superposition_kind_rejected():
    with pytest.raises(ValueError):
        superposition_states(pt_model(0, 1, 0), "psi")


def test_effective_frequency_and_decay():
    dr = dissipative_real_model(1, 1.5, 0.4, 0.6, 0.3, 0.7)
    assert effective_frequency(dr) == dr.omega
    assert calibration_decay(dr) == pytest.approx(math.exp(-dr.decay_width * math.pi / (2 * dr.omega)))
    dc = dissipative_complex_model(2, 2.5, 3.5, 0.2)
    assert effective_frequency(dc) == abs(dc.omega.real)
    assert calibration_decay(dc) == 1.0


def test_models_are_frozen():
    m = pt_model(1, 2, 0.3)
    with pytest.raises(Exception):
        m.r = 3
