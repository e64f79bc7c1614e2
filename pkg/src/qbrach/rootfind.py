"""Grid-bracketed bisection for the first root of a smooth function of time.

Functions are passed as ``fd(t) -> (f, dfdt)`` evaluated on arrays, so the
scan grid costs one vectorised call. Besides sign changes the scan also looks
at local maxima: a residual that only *touches* zero (an amplitude reaching
its peak value exactly) has no sign change, and its location is found by
bisecting the derivative, which is linear there and so resolves the point to
round-off rather than to ``sqrt(eps)``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .errors import NoRoot

FTOL = 1e-10
XTOL = 1e-12
MAX_BISECT = 200

FD = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Root:
    t: float
    residual: float
    bracket: tuple[float, float]
    tangent: bool = False


def _scalar(fd: FD, t: float) -> tuple[float, float]:
    f, d = fd(np.array([t]))
    return float(f[0]), float(d[0])


def bisect(fd: FD, lo: float, hi: float, ftol: float = FTOL, xtol: float = XTOL) -> tuple[float, float]:
    """Bisection on a sign-changing bracket; returns ``(t, |f(t)|)``."""
    f_lo = _scalar(fd, lo)[0]
    best_t, best_f = lo, abs(f_lo)
    for _ in range(MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = _scalar(fd, mid)[0]
        if abs(f_mid) < best_f:
            best_t, best_f = mid, abs(f_mid)
        if f_mid == 0:
            return mid, 0.0
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= xtol and abs(f_mid) <= ftol:
            return mid, abs(f_mid)
    return best_t, best_f


def locate_max(fd: FD, lo: float, hi: float) -> float:
    """Zero of the derivative in ``[lo, hi]`` where it goes from positive to non-positive."""
    for _ in range(MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _scalar(fd, mid)[1] > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def first_root(
    fd: FD,
    t_lo: float,
    t_hi: float,
    grid_n: int,
    ftol: float = FTOL,
    xtol: float = XTOL,
) -> Root:
    """Smallest root of ``f`` in ``(t_lo, t_hi]``.

    Raises:
        NoRoot: neither a sign change nor a touching maximum was found.
    """
    if not t_hi > t_lo:
        raise ValueError(f"need t_hi > t_lo, got ({t_lo}, {t_hi})")
    ts = np.linspace(t_lo, t_hi, grid_n + 1)
    f, d = fd(ts)
    f, d = np.asarray(f, dtype=float), np.asarray(d, dtype=float)
    dt = ts[1] - ts[0]

    exact = np.flatnonzero(f[1:] == 0) + 1
    crossing = np.flatnonzero(f[:-1] * f[1:] < 0)
    peak_bound = np.maximum(f[:-1], f[1:]) + 0.5 * dt * np.maximum(np.abs(d[:-1]), np.abs(d[1:]))
    peak = np.flatnonzero((d[:-1] > 0) & (d[1:] <= 0) & (peak_bound >= -ftol))

    # ordered by cell; an exact zero at grid point k closes cell k-1
    events = sorted(
        [(k - 1, 3, k) for k in exact] + [(k, 1, k) for k in crossing] + [(k, 2, k) for k in peak]
    )
    for _, kind, k in events:
        if kind == 3:
            return Root(float(ts[k]), 0.0, (float(ts[k]), float(ts[k])))
        lo, hi = float(ts[k]), float(ts[k + 1])
        if kind == 1:
            # a peak touching zero can show up as a round-off sign change
            for j in (k, k + 1):
                if j < grid_n and d[j] > 0 and d[j + 1] <= 0:
                    pl, ph = float(ts[j]), float(ts[j + 1])
                    t_star = locate_max(fd, pl, ph)
                    f_star = _scalar(fd, t_star)[0]
                    if abs(f_star) <= ftol and t_star > t_lo + xtol:
                        return Root(t_star, abs(f_star), (pl, ph), tangent=True)
            t, res = bisect(fd, lo, hi, ftol, xtol)
            return Root(t, res, (lo, hi))
        t_star = locate_max(fd, lo, hi)
        if t_star <= t_lo + xtol:
            # the interval is open at t_lo; a peak sitting there is not a root
            continue
        f_star = _scalar(fd, t_star)[0]
        if abs(f_star) <= ftol:
            return Root(t_star, abs(f_star), (lo, hi), tangent=True)
        if f_star > 0 and f[k] < 0:
            t, res = bisect(fd, lo, t_star, ftol, xtol)
            return Root(t, res, (lo, t_star))

    i = int(np.argmin(np.abs(f[1:]))) + 1
    raise NoRoot(
        f"no root of the residual on ({t_lo:.6g}, {t_hi:.6g}] with {grid_n} grid cells; "
        f"min |f| = {abs(f[i]):.3e} at t = {ts[i]:.6g}",
        min_abs=float(abs(f[i])),
        t_at_min=float(ts[i]),
    )


def maximize(fd: FD, t_lo: float, t_hi: float, grid_n: int) -> tuple[float, float]:
    """Global maximum of ``f`` on ``[t_lo, t_hi]``: grid scan, then derivative bisection."""
    ts = np.linspace(t_lo, t_hi, grid_n + 1)
    f, d = fd(ts)
    k = int(np.argmax(f))
    best_t, best_f = float(ts[k]), float(f[k])
    for j in (k - 1, k):
        if 0 <= j < grid_n and d[j] > 0 and d[j + 1] <= 0:
            t_star = locate_max(fd, float(ts[j]), float(ts[j + 1]))
            f_star = _scalar(fd, t_star)[0]
            if f_star >= best_f:
                best_t, best_f = t_star, f_star
    return best_f, best_t
