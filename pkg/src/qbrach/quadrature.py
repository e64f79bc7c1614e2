"""Adaptive Simpson quadrature for array-valued integrands."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .errors import QuadratureFailure


def adaptive_simpson(
    f: Callable[[float], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_intervals: int = 2**16,
) -> np.ndarray:
    """Integrate ``f`` over ``[a, b]`` to absolute ``tol`` in every entry.

    Uses the standard local criterion ``max|S_left + S_right - S_whole| <= 15 tol_local``
    with Richardson correction, halving the local tolerance on each split.

    Raises:
        QuadratureFailure: more than ``max_intervals`` subintervals were needed.
    """
    if a == b:
        return np.zeros_like(np.asarray(f(a)))
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_intervals)

    fa, fb, fm = (np.asarray(f(x)) for x in (a, b, (a + b) / 2))
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    total = np.zeros_like(whole)
    # stack of (a, b, fa, fm, fb, whole, tol)
    stack = [(a, b, fa, fm, fb, whole, tol)]
    n_intervals = 1
    while stack:
        lo, hi, flo, fmid, fhi, s, eps = stack.pop()
        mid = (lo + hi) / 2
        fl, fr = np.asarray(f((lo + mid) / 2)), np.asarray(f((mid + hi) / 2))
        left = (mid - lo) / 6 * (flo + 4 * fl + fmid)
        right = (hi - mid) / 6 * (fmid + 4 * fr + fhi)
        delta = left + right - s
        if np.max(np.abs(delta)) <= 15 * eps or hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mid)):
            total = total + left + right + delta / 15
            continue
        n_intervals += 1
        if n_intervals > max_intervals:
            raise QuadratureFailure(
                f"adaptive Simpson needed more than {max_intervals} subintervals on [{a}, {b}]"
            )
        stack.append((mid, hi, fmid, fr, fhi, right, eps / 2))
        stack.append((lo, mid, flo, fl, fmid, left, eps / 2))
    return total
