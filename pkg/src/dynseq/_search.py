"""Vectorized one-dimensional minimizers used by the greedy step."""

from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQ = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section(f, a, b, tol=1e-12, maxiter=200):
    """Golden-section search on many brackets at once.

    ``f`` maps an array of abscissae to an array of values of the same
    shape. Each bracket ``[a_i, b_i]`` is shrunk until its width is below
    ``tol``. Returns the best abscissa seen per bracket and its value.
    """
    a = np.array(a, dtype=np.float64, ndmin=1)
    b = np.array(b, dtype=np.float64, ndmin=1)
    h = b - a
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    width = float(np.max(h)) if h.size else 0.0
    n = 0 if width <= tol else int(math.ceil(math.log(tol / width) / math.log(INV_PHI)))
    for _ in range(min(n, maxiter)):
        left = yc < yd
        # left: minimum in [a, d]; right: minimum in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        h = b - a
        new_c = np.where(left, a + INV_PHI_SQ * h, d)
        new_d = np.where(left, c, a + INV_PHI * h)
        probe = np.where(left, new_c, new_d)
        yp = f(probe)
        yc, yd = np.where(left, yp, yd), np.where(left, yc, yp)
        c, d = new_c, new_d
    x = np.where(yc < yd, c, d)
    return x, np.minimum(yc, yd)


def bisect_derivative(df, lo, hi, maxiter=80):
    """Locate the zero of an increasing derivative on ``[lo, hi]`` per bracket.

    Brackets without a sign change are returned as NaN.
    """
    lo = np.array(lo, dtype=np.float64, ndmin=1)
    hi = np.array(hi, dtype=np.float64, ndmin=1)
    ok = (df(lo) < 0) & (df(hi) > 0)
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if not np.any((mid > lo) & (mid < hi)):
            break
        neg = df(mid) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    return np.where(ok, 0.5 * (lo + hi), np.nan)


def newton_convex(df, d2f, lo, hi, maxiter=100, xtol=4e-16):
    """Safeguarded Newton iteration for the minimum of a strictly convex function.

    ``df`` and ``d2f`` are evaluated only on the still-active brackets and
    receive ``(x, index_array)``. The derivative must be negative at ``lo``
    and positive at ``hi``; steps that leave the bracket fall back to
    bisection.
    """
    lo = np.array(lo, dtype=np.float64, ndmin=1)
    hi = np.array(hi, dtype=np.float64, ndmin=1)
    x = 0.5 * (lo + hi)
    active = np.arange(x.size)
    for _ in range(maxiter):
        if active.size == 0:
            break
        xa = x[active]
        g = df(xa, active)
        h = d2f(xa, active)
        lo_a = np.where(g < 0, xa, lo[active])
        hi_a = np.where(g > 0, xa, hi[active])
        with np.errstate(divide="ignore", invalid="ignore"):
            step = xa - g / h
        inside = np.isfinite(step) & (step > lo_a) & (step < hi_a)
        new = np.where(inside, step, 0.5 * (lo_a + hi_a))
        new = np.where(g == 0, xa, new)
        lo[active], hi[active], x[active] = lo_a, hi_a, new
        scale = np.maximum(1.0, np.abs(new))
        moving = (np.abs(new - xa) > xtol * scale) & (hi_a - lo_a > xtol * scale)
        active = active[moving]
    return x
