"""Adaptive Simpson quadrature with Richardson correction."""

from __future__ import annotations

import math
from typing import Callable

from .errors import QuadratureError


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, *,
                     rtol: float = 1e-10, atol: float = 1e-300, max_depth: int = 50) -> float:
    """Integrate f over [a, b].

    Intervals are bisected until |S_left + S_right - S_whole| <= 15 * tol on
    each piece, where tol is split evenly between halves.  The global target is
    max(atol, rtol * |coarse estimate|).  Raises QuadratureError when an
    interval exceeds max_depth bisections.
    """
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # Sample a few interior points so a coarse zero estimate cannot fool the
    # relative target for peaked integrands.
    probe = [f(a + (b - a) * t) for t in (0.125, 0.375, 0.625, 0.875)]
    scale = abs(whole) + abs(b - a) * max(abs(v) for v in probe) * 1e-3
    tol = max(atol, rtol * scale)

    total = 0.0
    # (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        err = left + right - s
        if abs(err) <= 15.0 * eps:
            total += left + right + err / 15.0
            continue
        if depth >= max_depth or not math.isfinite(err):
            raise QuadratureError(
                f"adaptive Simpson failed to converge on [{lo}, {hi}] "
                f"(depth {depth}, error estimate {abs(err):.3e}, target {eps:.3e})")
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
    return total
