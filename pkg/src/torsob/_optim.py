"""Derivative-free 1D search helpers shared across modules.

A plain golden-section bracketing minimizer; no gradients, no surprises.
The objective is evaluated once per shrink step, matching the classical
scheme (Kiefer 1953).
"""

from __future__ import annotations

import math
from typing import Callable

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 0.618...
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 0.382...


def golden_min(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimize ``func`` on [lo, hi]; returns (argmin, min).

    Assumes the bracket contains a single local minimum; with several the
    iteration converges to one of them, so call it from every coarse-grid
    candidate when multimodality is possible.
    """
    a, b = (lo, hi) if lo <= hi else (hi, lo)
    h = b - a
    if h <= xtol:
        mid = 0.5 * (a + b)
        return mid, func(mid)
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc = func(c)
    fd = func(d)
    for _ in range(max_iter):
        if h <= xtol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = func(d)
    if fc < fd:
        return c, fc
    return d, fd


def golden_max(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Maximize ``func`` on [lo, hi]; returns (argmax, max)."""
    x, negf = golden_min(lambda t: -func(t), lo, hi, xtol=xtol, max_iter=max_iter)
    return x, -negf
