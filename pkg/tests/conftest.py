import math

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from qbrach.errors import ParameterError
from qbrach.models import DissipativeComplexModel, DissipativeRealModel, PtModel

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for the terminal summary."""
    def add(line: str):
        print(line)
        ACCEPTANCE_LINES.append(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def pt_models(draw):
    s = draw(st.floats(0.3, 3.0))
    theta = draw(st.floats(-math.pi, math.pi))
    frac = draw(st.floats(0.0, 0.97))
    r = min(5.0, frac * s / max(abs(math.sin(theta)), 1e-9))
    return PtModel(r=r, s=s, theta=theta)


@st.composite
def dissipative_real_models(draw):
    while True:
        kw = dict(
            E=draw(st.floats(-2, 2)), eps=draw(st.floats(0.3, 3.0)), r=draw(st.floats(0, 2)),
            s=draw(st.floats(0.1, 2)), theta=draw(st.floats(-math.pi / 2, math.pi / 2)),
            lam=draw(st.floats(0, 1)),
        )
        try:
            m = DissipativeRealModel(**kw)
        except ParameterError:
            continue
        if m.omega > 0.1:
            return m


@st.composite
def dissipative_complex_models(draw):
    lam = complex(draw(st.floats(0.05, 3)), draw(st.floats(-1, 1)))
    phi = complex(draw(st.floats(0.1, 1.4)), draw(st.floats(-0.3, 0.3)))
    m = DissipativeComplexModel(E=draw(st.floats(-2, 2)), eps=draw(st.floats(0.3, 3.0)), lam=lam, phi=phi)
    a = m.alpha
    assume(abs(m.omega.real) > 0.1 and abs(a.imag) < 3 and abs(math.cos(a.real)) > 0.05)
    return m
