"""Small one-dimensional search helpers shared by certify and envelope."""

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_minimize(func, a: float, b: float, tol: float = 1e-10, max_iter: int = 500):
    """Minimize a unimodal scalar function on [a, b]; returns (x, f(x))."""
    if a > b:
        a, b = b, a
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    x = 0.5 * (a + b)
    fx = func(x)
    best = min((fx, x), (fc, c), (fd, d))
    return best[1], best[0]


def grid_then_golden(func_vec, func, lo: float, hi: float, points: int = 512, tol: float = 1e-10):
    """Coarse vectorized scan of [lo, hi] followed by golden-section refinement.

    ``func_vec`` evaluates on an array, ``func`` on a scalar.
    """
    xs = np.linspace(lo, hi, points)
    vals = np.asarray(func_vec(xs), dtype=np.float64)
    vals = np.where(np.isnan(vals), np.inf, vals)
    i = int(np.argmin(vals))
    left = xs[max(i - 1, 0)]
    right = xs[min(i + 1, points - 1)]
    x, fx = golden_section_minimize(func, left, right, tol=tol)
    if vals[i] < fx:
        return float(xs[i]), float(vals[i])
    return float(x), float(fx)


def richardson_limit(hs, values, orders) -> float:
    """Limit as h -> 0 of values(h) = L + sum_j a_j h^orders[j].

    Uses the ``len(orders) + 1`` smallest h.
    """
    hs = np.asarray(hs, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    idx = np.argsort(hs)[: len(orders) + 1]
    h, y = hs[idx], values[idx]
    A = np.column_stack([np.ones_like(h)] + [h**o for o in orders])
    return float(np.linalg.solve(A, y)[0])
