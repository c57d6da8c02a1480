"""Csiszar f-divergences on finite distributions, Renyi gain and Hoelder bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import generators as gen
from .dist import Distribution, _check_aligned, mixture, variational_distance
from .generators import Generator

HOLDER_SLACK = 1e-12
WEIGHT_NORM_TOL = 1e-9


class PreconditionError(ValueError):
    """A weight k does not integrate to one against P."""


def f_divergence(f: Generator, P: Distribution, Q: Distribution) -> float:
    """D_f(P, Q) = sum p f(q/p) with the usual zero-mass conventions.

    Atoms with p = 0 < q contribute q * lim f(u)/u, atoms with q = 0 < p
    contribute p * f(0+), and atoms with p = q = 0 contribute nothing.
    """
    _check_aligned(P, Q)
    p, q = P.weights, Q.weights
    both = (p > 0) & (q > 0)
    total = 0.0
    if both.any():
        total += float(np.sum(p[both] * f.eval(q[both] / p[both])))
    only_q = (p == 0) & (q > 0)
    if only_q.any():
        total += float(q[only_q].sum()) * f.slope_at_infinity
    only_p = (p > 0) & (q == 0)
    if only_p.any():
        total += float(p[only_p].sum()) * f.limit_at_zero
    return total


def stack_pairs(pairs) -> tuple[np.ndarray, np.ndarray]:
    """Row-stack (P, Q) pairs into two arrays, zero-padding shorter supports."""
    pairs = list(pairs)
    width = max(P.weights.size for P, _ in pairs)
    p = np.zeros((len(pairs), width))
    q = np.zeros((len(pairs), width))
    for i, (P, Q) in enumerate(pairs):
        _check_aligned(P, Q)
        p[i, : P.weights.size] = P.weights
        q[i, : Q.weights.size] = Q.weights
    return p, q


def f_divergence_rows(f: Generator, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """:func:`f_divergence` for each row of two equally shaped arrays.

    Rows are taken as given (no normalization check); padding atoms with
    p = q = 0 contribute nothing.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 2:
        raise ValueError("p and q must be 2-d arrays of the same shape")
    both = (p > 0) & (q > 0)
    terms = np.zeros_like(p)
    terms[both] = p[both] * f.eval(q[both] / p[both])
    only_q = (p == 0) & (q > 0)
    only_p = (p > 0) & (q == 0)
    # keep 0 * inf out of rows that never reach the boundary
    if only_q.any():
        terms[only_q] = q[only_q] * f.slope_at_infinity
    if only_p.any():
        terms[only_p] = p[only_p] * f.limit_at_zero
    return terms.sum(axis=1)


def kl(P: Distribution, Q: Distribution) -> float:
    """Information divergence sum p log(p/q)."""
    return f_divergence(gen.kl(), P, Q)


def chi2(P: Distribution, Q: Distribution) -> float:
    return f_divergence(gen.chi2(), P, Q)


def hellinger2(P: Distribution, Q: Distribution) -> float:
    """h^2 = 1/2 sum (sqrt q - sqrt p)^2."""
    return f_divergence(gen.hellinger(), P, Q)


def triangular(P: Distribution, Q: Distribution) -> float:
    return f_divergence(gen.triangular(), P, Q)


def triangular_nu(nu: int, P: Distribution, Q: Distribution) -> float:
    return f_divergence(gen.triangular_nu(nu), P, Q)


def jeffreys(P: Distribution, Q: Distribution) -> float:
    return f_divergence(gen.jeffreys(), P, Q)


def capacitory(P: Distribution, Q: Distribution) -> float:
    """C(P, Q) = D(P, M) + D(Q, M) with M the even mixture."""
    M = mixture(P, Q, 0.5)
    return kl(P, M) + kl(Q, M)


def rel_info(alpha, P: Distribution, Q: Distribution) -> float:
    """D_(alpha)(P, Q)."""
    return f_divergence(gen.rel_info_alpha(alpha), P, Q)


def renyi(alpha: float, P: Distribution, Q: Distribution) -> float:
    """I_alpha = (alpha - 1)^-1 log[1 - alpha (1 - alpha) D_(1-alpha)]."""
    alpha = float(alpha)
    if not alpha > 0 or alpha == 1:
        raise ValueError("renyi needs alpha > 0 and alpha != 1 (use kl for the limit)")
    d = rel_info(1.0 - alpha, P, Q)
    x = -alpha * (1.0 - alpha) * d
    if math.isinf(x):
        return math.inf
    if x <= -1.0:
        # only reachable for alpha < 1 with disjoint supports
        return math.inf
    return math.log1p(x) / (alpha - 1.0)


def renyi_direct(alpha: float, P: Distribution, Q: Distribution) -> float:
    """(alpha - 1)^-1 log sum p^alpha q^(1-alpha), for cross-checking."""
    _check_aligned(P, Q)
    p, q = P.weights, Q.weights
    mask = (p > 0) | (q > 0)
    with np.errstate(divide="ignore"):
        s = float(np.sum(p[mask] ** alpha * q[mask] ** (1.0 - alpha)))
    if s == 0.0:
        return math.inf
    return math.log(s) / (alpha - 1.0)


# ----------------------------------------------------------------------------
# Hoelder-type bounds


@dataclass(frozen=True)
class Weight:
    """A weight u -> k(u) >= 0 with its growth rate lim k(u)/u."""

    func: Callable[[np.ndarray], np.ndarray]
    slope_at_infinity: float
    name: str = "k"

    def __call__(self, u):
        return self.func(np.asarray(u, dtype=np.float64))


def affine_weight(a: float, b: float) -> Weight:
    """k(u) = a + b u, i.e. the mixture a p + b q."""
    return Weight(lambda u: a + b * u, b, name=f"{a}+{b}u")


def mixture_weight(w: float) -> Weight:
    """k(u) = 1 + (1 - w)(u - 1), the mixture w p + (1 - w) q."""
    return affine_weight(w, 1.0 - w)


def kraft_weight(P: Distribution, Q: Distribution) -> Weight:
    """(sqrt u + 1)^2 / (2 (2 - h^2(P, Q))), normalized for this pair."""
    c = 1.0 / (2.0 * (2.0 - hellinger2(P, Q)))
    return Weight(lambda u: c * (np.sqrt(u) + 1.0) ** 2, c, name="kraft")


def _weighted_measure(k: Weight, P: Distribution, Q: Distribution) -> np.ndarray:
    p, q = P.weights, Q.weights
    r = np.zeros_like(p)
    pos = p > 0
    r[pos] = p[pos] * k(q[pos] / p[pos])
    only_q = ~pos & (q > 0)
    r[only_q] = q[only_q] * k.slope_at_infinity
    return r


@dataclass(frozen=True)
class HolderBoundReport:
    """Both sides of |E_Q g - E_P g|^n <= sup * moment * D_f.

    ``sup_factor`` is a grid maximum, so it approximates the supremum from
    below; ``grid_points`` records how many ratios were scanned.
    """

    lhs: float
    sup_factor: float
    moment_factor: float
    divergence: float
    rhs: float
    holds: bool
    a: float
    grid_points: int
    note: str = "sup taken over a finite u-grid"


def _sup_ratio(f: Generator, k: Weight, n: float, P: Distribution, Q: Distribution, u_grid) -> tuple[float, int]:
    from .certify import standard_grid

    ft = gen.tilde(f)
    p, q = P.weights, Q.weights
    live = (p > 0) | (q > 0)
    with np.errstate(divide="ignore"):
        ratios = np.where(p[live] > 0, q[live] / np.where(p[live] > 0, p[live], 1.0), np.inf)
    lo, hi = min(ratios.min(), 1.0), max(ratios.max(), 1.0)
    grid = standard_grid() if u_grid is None else np.asarray(u_grid, dtype=np.float64)
    finite = ratios[np.isfinite(ratios) & (ratios > 0)]
    near_one = np.linspace(1 - 1e-3, 1 + 1e-3, 64)
    u = np.concatenate([grid, near_one, finite])
    u = u[(u >= lo) & (u <= hi) & (u != 1.0) & (u > 0)]
    if u.size == 0:
        return 0.0, 0
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.abs(u - 1.0) ** n / (ft.eval(u) * k(u) ** (n - 1.0))
    vals = vals[np.isfinite(vals)]
    return (float(vals.max()) if vals.size else 0.0), int(u.size)


def _product(*xs: float) -> float:
    if any(x == 0 for x in xs):
        return 0.0 if all(math.isfinite(x) for x in xs) else math.inf
    return math.prod(xs)


def holder_bound(
    f: Generator,
    k: Weight,
    n: float,
    g,
    P: Distribution,
    Q: Distribution,
    a: Optional[float] = None,
    u_grid=None,
) -> HolderBoundReport:
    """Evaluate both sides of the Hoelder-type expectation bound.

    ``a`` defaults to E_r g with r = p k(q/p).
    """
    _check_aligned(P, Q)
    if not n > 1:
        raise ValueError("n must exceed 1")
    g = np.asarray(g, dtype=np.float64)
    if g.shape != P.weights.shape:
        raise ValueError("g must have one value per atom")
    grid_check = np.geomspace(1e-6, 1e6, 241)
    if np.any(k(grid_check) < 0):
        raise PreconditionError("weight k takes negative values")
    r = _weighted_measure(k, P, Q)
    mass = float(r.sum())
    if not abs(mass - 1.0) <= WEIGHT_NORM_TOL:
        raise PreconditionError(f"sum p k(q/p) = {mass!r}, expected 1")
    if a is None:
        a = float(np.dot(g, r))
    lhs = abs(float(np.dot(g, Q.weights) - np.dot(g, P.weights))) ** n
    m = n / (n - 1.0)
    moment = float(np.dot(r, np.abs(g - a) ** m)) ** (n - 1.0)
    sup, npts = _sup_ratio(f, k, n, P, Q, u_grid)
    d = f_divergence(f, P, Q)
    rhs = _product(sup, moment, d)
    holds = lhs <= rhs * (1 + HOLDER_SLACK) or lhs <= 1e-300
    return HolderBoundReport(lhs, sup, moment, d, rhs, holds, a, npts)


def v_power_bound(
    f: Generator, k: Weight, n: float, P: Distribution, Q: Distribution, u_grid=None
) -> HolderBoundReport:
    """V^n <= sup{|u-1|^n / (f~ k^(n-1))} * D_f, the indicator specialization.

    ``lhs`` is V^n; ``moment_factor`` is 2^n [E_r |g - 1/2|^(n/(n-1))]^(n-1),
    which equals one.
    """
    g = (P.weights >= Q.weights).astype(np.float64)
    base = holder_bound(f, k, n, g, P, Q, a=0.5, u_grid=u_grid)
    lhs = variational_distance(P, Q) ** n
    moment = 2.0**n * base.moment_factor
    rhs = _product(base.sup_factor, moment, base.divergence)
    holds = lhs <= rhs * (1 + HOLDER_SLACK) or lhs <= 1e-300
    return HolderBoundReport(lhs, base.sup_factor, moment, base.divergence, rhs, holds, 0.5, base.grid_points)


def capacitory_lower_bound(v: float) -> float:
    """log((4 - V^2)/4) + (V/2) log((2 + V)/(2 - V))."""
    if v >= 2.0:
        return 2.0 * math.log(2.0)
    return math.log1p(-v * v / 4.0) + 0.5 * v * (math.log1p(v / 2.0) - math.log1p(-v / 2.0))
