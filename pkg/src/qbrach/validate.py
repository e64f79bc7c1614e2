"""The invariant suite behind ``qbrach validate``.

Every check returns a :class:`CheckResult` with the worst measured deviation,
so a failing run says by how much it failed. Checks needing an external
reference (a matrix-exponential oracle, a dense-scan root oracle) accept it as
an argument; the defaults are plain numpy implementations.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from . import closed_forms as cf
from . import linalg2 as la
from .brachistochrone import (
    TABLE1,
    TABLE2,
    BrachistochroneProblem,
    Formulation,
    amplitude,
    amplitude_max,
    default_t_max,
    matrix_element,
    passage_time_analytic,
    passage_time_numeric,
    trans_problem,
    trans_residual,
)
from .errors import NoRoot
from .evolution import duhamel_first_order, propagator
from .figures import FIGURES
from .metric import eta_inner, similarity_transform
from .models import (
    PtModel,
    dissipative_complex_model,
    eigenstates,
    lambda_from_omega,
    superposition_states,
)
from .sampling import random_dissipative_complex, random_dissipative_real, random_hermitian, random_pt


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"{status} {self.name}: worst={self.worst:.3e} tol={self.tol:.1e} time={self.seconds:.3f}s{extra}"


def _rel_err(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


# -- oracles -----------------------------------------------------------------


def taylor_expm(m: np.ndarray, terms: int = 30) -> np.ndarray:
    """Scaling and squaring with a truncated Taylor series."""
    m = np.asarray(m, dtype=np.complex128)
    nrm = la.inf_norm(m)
    k = max(0, math.ceil(math.log2(nrm / 0.25))) if nrm > 0 else 0
    a = m / 2**k
    out = np.eye(2, dtype=np.complex128)
    term = np.eye(2, dtype=np.complex128)
    for j in range(1, terms + 1):
        term = term @ a / j
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def dense_first_root(f: Callable[[np.ndarray], np.ndarray], t_max: float, n: int = 10**6) -> float | None:
    """First sign change of ``f`` on an ``n``-point grid, refined by plain bisection."""
    ts = np.linspace(0, t_max, n + 1)[1:]
    y = f(ts)
    k = np.flatnonzero(np.signbit(y[:-1]) != np.signbit(y[1:]))
    if len(k) == 0:
        return None
    lo, hi = ts[k[0]], ts[k[0] + 1]
    neg_lo = np.signbit(y[k[0]])
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if np.signbit(f(np.array([mid]))[0]) == neg_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- checks ------------------------------------------------------------------


def check_target_frequencies() -> CheckResult:
    t0 = time.perf_counter()
    w1 = dissipative_complex_model(2.0, 2.5, 3.5, 0.2).omega
    lam = lambda_from_omega(9.0, 0.2, 6.99 - 0.46j)[0]
    w2 = dissipative_complex_model(2.0, 9.0, lam, 0.2).omega
    secs = time.perf_counter() - t0
    d1, d2 = w1 - (4.87 - 3.31j), w2 - (6.99 - 0.46j)
    worst = max(abs(d1.real), abs(d1.imag), abs(d2.real), abs(d2.imag))
    return CheckResult("target frequencies", worst <= 0.01 and secs < 1e-3, worst, 0.01, secs,
                       f"omega1={w1:.4f} omega2={w2:.4f}")


def check_table1(n: int = 200, seed: int = 1) -> CheckResult:
    """Analytic vs numeric passage time for the four PT rows.

    The listed mixed-row formula ``(2 pi + alpha)/omega`` is also compared
    directly on the draws with ``alpha <= 0``, where it is the smallest root.
    """
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    n_listed = 0
    for _ in range(n):
        m = random_pt(rng)
        w, a = m.omega, m.alpha
        listed = [math.pi / w, (math.pi + 2 * a) / w, (2 * math.pi + a) / w, (2 * math.pi + a) / w]
        for (_, _, form), tau_listed in zip(TABLE1, listed):
            p = BrachistochroneProblem(m, form, 1.0)
            ana = passage_time_analytic(p).tau
            num = passage_time_numeric(p).tau
            worst = max(worst, abs(ana - num))
            if form in (Formulation.QB, Formulation.BC2) or a <= 0:
                worst = max(worst, abs(ana - tau_listed))
                n_listed += 1
    secs = time.perf_counter() - t0
    return CheckResult("table 1", worst <= 1e-9 and secs < 5, worst, 1e-9, secs,
                       f"draws={n} listed-formula comparisons={n_listed}")


def check_table2(n: int = 200, seed: int = 2) -> CheckResult:
    """All four dissipative-real rows give ``pi/omega``.

    Three routes per row: the analytic time, the literal residual of the
    eta-inner-product matrix element at that time, and the numeric root taken
    on the falling flank after the amplitude maximum.
    """
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        m = random_dissipative_real(rng)
        target = math.pi / m.omega
        for _, _, form in TABLE2:
            p = BrachistochroneProblem(m, form, 1.0)
            worst = max(worst, abs(passage_time_analytic(p).tau - target))
            worst = max(worst, abs(amplitude(p, target) - p.rhs))
            _, t_peak = amplitude_max(p, t_max=target)
            worst = max(worst, abs(passage_time_numeric(p, t_min=t_peak).tau - target))
    secs = time.perf_counter() - t0
    return CheckResult("table 2", worst <= 1e-9 and secs < 5, worst, 1e-9, secs, f"draws={n}")


def check_tunability() -> CheckResult:
    t0 = time.perf_counter()
    alpha = -math.pi / 2 + 0.009
    m = PtModel.from_alpha_omega(alpha, 2.0)
    res = passage_time_analytic(BrachistochroneProblem(m, Formulation.BC2, 1.0))
    secs = time.perf_counter() - t0
    ok = res.tau < 0.01 and abs(m.omega - 2.0) <= 1e-9 and m.alpha > -math.pi / 2
    return CheckResult("tunability", ok, res.tau, 0.01, secs, f"alpha={m.alpha:.6f} omega={m.omega:.12g}")


def check_closed_forms(n: int = 50, n_t: int = 1000, seed: int = 5) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = {}

    def note(key, err):
        worst[key] = max(worst.get(key, 0.0), err)

    for _ in range(n):
        m = random_pt(rng)
        t = np.linspace(0, 4 * math.pi / m.omega, n_t)
        phi_i, phi_f = superposition_states(m, "phi")
        u = propagator(m.h, t)
        note("a", _rel_err(la.std_inner(phi_f, la.apply(u, phi_i)), cf.transition_element(m, t)))
        note("2", _rel_err(la.apply(u, m.eta.matrix @ phi_i), cf.pt_evolved_eta_initial(m, t)))
        note("xx", _rel_err(matrix_element(BrachistochroneProblem(m, Formulation.BC2), t), cf.pt_bc2_element(m, t)))
        note("df", _rel_err(matrix_element(BrachistochroneProblem(m, Formulation.DF), t), cf.pt_df_element(m, t)))

        d = random_dissipative_real(rng)
        t = np.linspace(0, 4 * math.pi / d.omega, n_t)
        phi_i, _ = superposition_states(d, "phi")
        u = propagator(d.h, t)
        note("phit", _rel_err(la.apply(u, d.eta.matrix @ phi_i), cf.dr_evolved_eta_initial(d, t)))

        c = random_dissipative_complex(rng)
        t = np.linspace(0, 4 * math.pi / abs(c.omega.real), n_t)
        phi_i, phi_f = superposition_states(c, "phi")
        elem = la.std_inner(phi_f, la.apply(propagator(c.h, t), phi_i))
        note("tt", _rel_err(np.abs(elem) ** 2, cf.tt(c, t)))
    secs = time.perf_counter() - t0
    w = max(worst.values())
    detail = " ".join(f"{k}={v:.1e}" for k, v in worst.items())
    return CheckResult("closed forms vs exponential", w <= 1e-11, w, 1e-11, secs, detail)


def check_similarity(n: int = 500, seed: int = 6) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = {}

    def note(key, err):
        worst[key] = max(worst.get(key, 0.0), err)

    def spectrum(m):
        ev = np.linalg.eigvals(m)
        return ev[np.lexsort((ev.imag, ev.real))]

    for _ in range(n):
        for key, model in (("pt", random_pt(rng)), ("dr", random_dissipative_real(rng)),
                           ("dc", random_dissipative_complex(rng))):
            sim = similarity_transform(model.eta, model.H)
            scale = max(1.0, la.inf_norm(model.H))
            note(f"spectrum-{key}", float(np.max(np.abs(spectrum(model.H) - spectrum(sim)))) / scale)
            note(f"h-form-{key}", la.inf_norm(sim - model.h) / scale)
            st = eigenstates(model)
            gram = np.array([[eta_inner(model.eta, a, np.eye(2), b) for b in (st.Phi_plus, st.Phi_minus)]
                             for a in (st.Phi_plus, st.Phi_minus)])
            note(f"ortho-{key}", float(np.max(np.abs(gram - np.eye(2)))))
            if key == "pt":
                note("hermitian-pt", la.hermiticity_residual(sim) / scale)
            if key == "dr":
                note("diagonal-dr", float(abs(sim[0, 1]) + abs(sim[1, 0])) / scale)
    secs = time.perf_counter() - t0
    w = max(worst.values())
    bad = [k for k, v in worst.items() if v > 1e-11]
    return CheckResult("similarity and orthonormality", not bad, w, 1e-11, secs,
                       "failing: " + ",".join(bad) if bad else "")


def duhamel_slope(h: np.ndarray, h1: np.ndarray, t: float = 1.0,
                  gs=(1e-1, 1e-2, 1e-3, 1e-4)) -> float:
    """Log-log slope of the first-order error against the exact exponential."""
    errs = []
    for g in gs:
        approx = duhamel_first_order(h, lambda s: h1, g, t, tol=1e-13)
        exact = propagator(h + g * h1, t)
        errs.append(la.inf_norm(approx - exact))
    return float(np.polyfit(np.log(gs), np.log(errs), 1)[0])


def check_duhamel(n: int = 20, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    slopes = [duhamel_slope(random_hermitian(rng), random_hermitian(rng)) for _ in range(n)]
    secs = time.perf_counter() - t0
    worst = max(abs(s - 2) for s in slopes)
    return CheckResult("duhamel order", worst <= 0.1, worst, 0.1, secs,
                       f"slopes in [{min(slopes):.4f}, {max(slopes):.4f}]")


def check_figure_roots(oracle: Callable | None = None) -> CheckResult:
    """Numeric roots of the figure sets against a dense-scan oracle.

    Sets without a root must be reported as such by both solvers. The oracle
    scans the literal residual, not the amplitude route the solver uses.
    """
    oracle = oracle or dense_first_root
    t0 = time.perf_counter()
    oracle_err, spread, agree = 0.0, 0.0, True
    found = []
    for fig_id, sets in FIGURES.items():
        for cs in sets:
            m = cs.model()
            t_max = default_t_max(m)
            ref = oracle(lambda t, m=m: trans_residual(m, t), t_max)
            roots = []
            for grid_n in (2048, 4096, 8192):
                try:
                    roots.append(passage_time_numeric(trans_problem(m), t_max, grid_n).tau)
                except NoRoot:
                    roots.append(None)
            if ref is None or None in roots:
                agree &= ref is None and all(r is None for r in roots)
                found.append(f"{fig_id}:{cs.label}=none")
                continue
            oracle_err = max(oracle_err, abs(roots[1] - ref))
            spread = max(spread, max(roots) - min(roots))
            found.append(f"{fig_id}:{cs.label}={roots[1]:.10f}")
    secs = time.perf_counter() - t0
    ok = agree and oracle_err <= 1e-8 and spread <= 1e-10
    detail = f"grid spread={spread:.1e} " + " ".join(found)
    if not agree:
        detail = "root/no-root disagreement " + detail
    return CheckResult("figure roots", ok, oracle_err, 1e-8, secs, detail)


def check_exp_matrix(n: int = 1000, n_nilpotent: int = 20, seed: int = 9,
                     oracle: Callable | None = None) -> CheckResult:
    """Closed-form exponential against a series oracle, error relative to ``max(1, |e^M|)``."""
    oracle = oracle or taylor_expm
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    mats = [(rng.uniform(-2.5, 2.5, (2, 2)) + 1j * rng.uniform(-2.5, 2.5, (2, 2))) for _ in range(n - n_nilpotent)]
    for _ in range(n_nilpotent):
        p = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        nil = p @ np.array([[0, rng.uniform(0.5, 2)], [0, 0]]) @ np.linalg.inv(p)
        mats.append(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) * np.eye(2) + nil)
    worst = 0.0
    for m in mats:
        ref = np.asarray(oracle(m), dtype=np.complex128)
        worst = max(worst, la.inf_norm(la.exp_matrix(m) - ref) / max(1.0, la.inf_norm(ref)))
    secs = time.perf_counter() - t0
    return CheckResult("exp_matrix kernel", worst <= 1e-12, worst, 1e-12, secs,
                       f"matrices={len(mats)} nilpotent={n_nilpotent}")


ALL_CHECKS = (
    check_target_frequencies,
    check_table1,
    check_table2,
    check_tunability,
    check_closed_forms,
    check_similarity,
    check_duhamel,
    check_figure_roots,
    check_exp_matrix,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
