"""Binary-space constructions: tightness of the constants, lower envelopes,
Renyi-gain checks and numeric exploration of the sixth-order question.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import divergence as dv
from . import generators as gen
from ._search import golden_section_minimize, grid_then_golden, richardson_limit
from .certify import CertificateResult, Status, scaled_margins, standard_grid, tilde_values
from .dist import Distribution, max_partition_spread, variational_distance
from .generators import Generator

DEFAULT_V_LIST = (0.2, 0.1, 0.05, 0.02, 0.01)
ENVELOPE_POINTS = 512
ENVELOPE_XTOL = 1e-10
RENYI_SEED = 20240601
CONJECTURE_LABEL = "CONJECTURE-EXPLORATION"
RENYI_OPEN_THRESHOLD = 0.5 + 0.3 * math.sqrt(5.0)


# ----------------------------------------------------------------------------
# pairs


def binary_pair(p: float, v: float) -> tuple[Distribution, Distribution]:
    """P = (p, 1-p) and Q = (p + v/2, 1 - p - v/2), so V(P, Q) = v."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p = {p!r} must lie in (0, 1)")
    if not 0.0 < v < 2.0:
        raise ValueError(f"v = {v!r} must lie in (0, 2)")
    if not p + v / 2.0 < 1.0:
        raise ValueError(f"p + v/2 = {p + v / 2.0!r} must be below 1")
    q = p + v / 2.0
    return Distribution(np.array([p, 1.0 - p])), Distribution(np.array([q, 1.0 - q]))


def _binary_divergence(f: Generator, p, v) -> np.ndarray:
    """D_f(P, Q_v) for arrays of p, full-support pairs only."""
    p = np.asarray(p, dtype=np.float64)
    q = p + v / 2.0
    return p * f.eval(q / p) + (1.0 - p) * f.eval((1.0 - q) / (1.0 - p))


def random_binary_pairs(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """n pairs (p, q) drawn uniformly from (0, 1)^2, as two arrays."""
    return rng.uniform(1e-6, 1.0 - 1e-6, n), rng.uniform(1e-6, 1.0 - 1e-6, n)


def random_pairs(n: int, rng: np.random.Generator, max_atoms: int = 6):
    """Yield n pairs of full-support distributions on 2..max_atoms atoms.

    Half the pairs are Dirichlet(1) draws, half are Q close to P so that the
    small-V regime, where the constants are tight, is well represented.
    """
    for i in range(n):
        k = int(rng.integers(2, max_atoms + 1))
        p = rng.dirichlet(np.ones(k))
        if i % 2:
            q = rng.dirichlet(np.ones(k))
        else:
            q = p * np.exp(rng.normal(0.0, 10.0 ** rng.uniform(-3, 0), k))
            q /= q.sum()
        p = np.maximum(p, 1e-12)
        q = np.maximum(q, 1e-12)
        yield Distribution(p / p.sum()), Distribution(q / q.sum())


# ----------------------------------------------------------------------------
# tightness sweeps


@dataclass(frozen=True)
class SweepTable:
    """Ratios at each v and their extrapolated v -> 0 limit."""

    v: tuple[float, ...]
    p: tuple[float, ...]
    ratio: tuple[float, ...]
    limit: float
    target: float
    orders: tuple[int, ...]

    @property
    def abs_error(self) -> float:
        return abs(self.limit - self.target)

    @property
    def rel_error(self) -> float:
        return self.abs_error / abs(self.target) if self.target else math.inf

    def rows(self):
        return list(zip(self.v, self.p, self.ratio))


def _check_v_list(v_list) -> tuple[float, ...]:
    v = tuple(float(x) for x in v_list)
    if len(v) < 2 or any(b >= a for a, b in zip(v, v[1:])):
        raise ValueError("v_list must be strictly decreasing with at least two entries")
    return v


def tightness_sweep_second(f: Generator, v_list=DEFAULT_V_LIST, p: float = 0.5) -> SweepTable:
    """D_f(P, Q_v) / v^2 at fixed p, extrapolated to v = 0.

    The limit is c2 / [4 p (1 - p)], which is c2 at p = 1/2.  The error series
    is even in v at p = 1/2 and has all powers otherwise.
    """
    v = _check_v_list(v_list)
    c = gen.coefficients(f)
    ratios = tuple(float(_binary_divergence(f, p, x)) / x**2 for x in v)
    orders = (2, 4) if p == 0.5 else (1, 2)
    limit = richardson_limit(v, ratios, orders)
    target = float(c.c2) / (4.0 * p * (1.0 - p))
    return SweepTable(v, (p,) * len(v), ratios, limit, target, orders)


def fourth_order_p(f: Generator, v: float) -> float:
    """The p that makes (D_f - c2 v^2)/v^4 tend to c4: 1/2 + f'''(1) v / (6 f''(1))."""
    return 0.5 + float(f.deriv_at_one(3)) / (6.0 * float(f.deriv_at_one(2))) * v


def tightness_sweep_fourth(f: Generator, v_list=DEFAULT_V_LIST) -> SweepTable:
    """(D_f - c2 v^2) / v^4 along p = 1/2 + f'''(1) v / (6 f''(1)), extrapolated."""
    v = _check_v_list(v_list)
    c = gen.coefficients(f)
    if not c.c4 > 0:
        raise ValueError(f"{f.name}: c4 = {c.c4} is not positive")
    ps, ratios = [], []
    for x in v:
        p = fourth_order_p(f, x)
        if not (0.0 < p < 1.0 and p + x / 2.0 < 1.0):
            raise ValueError(f"v = {x} too large: p = {p} leaves the simplex")
        ps.append(p)
        ratios.append((float(_binary_divergence(f, p, x)) - float(c.c2) * x**2) / x**4)
    orders = (2, 4)
    limit = richardson_limit(v, ratios, orders)
    return SweepTable(v, tuple(ps), tuple(ratios), limit, float(c.c4), orders)


# ----------------------------------------------------------------------------
# envelopes


@dataclass(frozen=True)
class EnvelopePoint:
    """Smallest binary D_f at V = v; an upper bound on the infimum over all spaces."""

    v: float
    min_divergence: float
    argmin_p: float
    bound_value: float
    note: str = "binary pairs only: upper bound on the global infimum"


def _p_range(v: float) -> tuple[float, float]:
    hi = 1.0 - v / 2.0
    return hi * 1e-9, hi * (1.0 - 1e-9)


def lower_envelope(f: Generator, v: float, points: int = ENVELOPE_POINTS, xtol: float = ENVELOPE_XTOL) -> EnvelopePoint:
    """min over p of D_f(binary_pair(p, v)); coarse grid then golden section."""
    if not 0.0 < v < 2.0:
        raise ValueError("v must lie in (0, 2)")
    lo, hi = _p_range(v)
    p, d = grid_then_golden(
        lambda ps: _binary_divergence(f, ps, v),
        lambda x: float(_binary_divergence(f, x, v)),
        lo, hi, points=points, tol=xtol,
    )
    c = gen.coefficients(f)
    bound = float(c.c2) * v**2
    if c.w4_defined or c.c4 == 0:
        bound += float(c.c4) * v**4
    return EnvelopePoint(float(v), float(d), float(p), bound)


TOPSOE_COEFFS = (Fraction(1, 2), Fraction(1, 36), Fraction(1, 270), Fraction(221, 340200))


def topsoe_bound(v) -> Fraction:
    """1/2 v^2 + v^4/36 + v^6/270 + 221 v^8/340200, exact for rational v."""
    v = Fraction(v)
    return sum(c * v ** (2 * (k + 1)) for k, c in enumerate(TOPSOE_COEFFS))


@dataclass(frozen=True)
class BoundComparison:
    v: tuple[float, ...]
    envelope: tuple[float, ...]
    bound: tuple[float, ...]
    margin: tuple[float, ...]
    tol: float

    @property
    def holds(self) -> bool:
        return min(self.margin) >= -self.tol

    def rows(self):
        return list(zip(self.v, self.envelope, self.bound, self.margin))


def compare_topsoe_bound(v_grid=None, tol: float = 1e-9) -> BoundComparison:
    """Binary KL envelope against the four-term polynomial bound."""
    if v_grid is None:
        v_grid = [Fraction(k, 10) for k in range(1, 20)]
    kl = gen.kl()
    env, bnd, mar = [], [], []
    for x in v_grid:
        e = lower_envelope(kl, float(x)).min_divergence
        b = float(topsoe_bound(Fraction(str(x)) if isinstance(x, float) else x))
        env.append(e)
        bnd.append(b)
        mar.append(e - b)
    return BoundComparison(tuple(float(x) for x in v_grid), tuple(env), tuple(bnd), tuple(mar), tol)


# ----------------------------------------------------------------------------
# Renyi information gain


def renyi_binary(alpha: float, p, q) -> np.ndarray:
    """I_alpha between (p, 1-p) and (q, 1-q), vectorized and full support."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    s = p**alpha * q ** (1.0 - alpha) + (1.0 - p) ** alpha * (1.0 - q) ** (1.0 - alpha)
    return np.log(s) / (alpha - 1.0)


def renyi_fourth_coefficients(alpha) -> tuple[Fraction, Fraction]:
    """(alpha/2, alpha (1 + 5 alpha - 5 alpha^2)/36)."""
    a = gen.as_fraction(alpha)
    return a / 2, a * (1 + 5 * a - 5 * a * a) / 36


def renyi_fourth_check(alpha: float, n: int = 10_000, seed: int = RENYI_SEED) -> CertificateResult:
    """I_alpha >= b2 V^2 + b4 V^4 on n random binary pairs (0 < alpha < 1)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    p, q = random_binary_pairs(n, rng)
    b2, b4 = (float(x) for x in renyi_fourth_coefficients(alpha))
    V = 2.0 * np.abs(q - p)
    lhs = renyi_binary(alpha, p, q)
    margins = scaled_margins(lhs, b2 * V**2 + b4 * V**4)
    i = int(np.argmin(margins))
    spec = f"{n} binary pairs, seed {seed}"
    details = {"b2": b2, "b4": b4, "pair": (float(p[i]), float(q[i]))}
    if margins[i] < -1e-9:
        return CertificateResult(Status.VIOLATED, float(margins[i]), float(q[i] / p[i]), spec,
                                 "renyi fourth order", False, details)
    return CertificateResult(Status.CERTIFIED_NUMERIC, float(margins[i]), None, spec,
                             "renyi fourth order", False, details)


@dataclass(frozen=True)
class RenyiSearchResult:
    """Outcome of searching for I_alpha < (alpha/2) V^2."""

    alpha: float
    status: str  # "violated", "none" or "inconclusive"
    p: Optional[float] = None
    v: Optional[float] = None
    renyi: Optional[float] = None
    bound: Optional[float] = None
    note: str = ""

    @property
    def found(self) -> bool:
        return self.status == "violated"


def renyi_violation_search(alpha: float, v_points: int = 64, p_points: int = 256, rel_tol: float = 1e-9) -> RenyiSearchResult:
    """Scan binary pairs for I_alpha < (alpha/2) V^2.

    Above 1/2 + (3/10) sqrt 5 the V^4 coefficient of the small-V expansion is
    negative, so violations sit at small v near p = 1/2.  For
    1 < alpha <= that threshold a failed search is inconclusive.
    """
    if not alpha > 0 or alpha == 1:
        raise ValueError("alpha must be positive and different from 1")
    best = None
    for v in np.geomspace(0.01, 0.5, v_points):
        hi = 1.0 - v / 2.0
        ps = np.linspace(0.0, hi, p_points + 2)[1:-1]
        ps = np.union1d(ps, [0.5 - v / 4.0]) if 0.5 - v / 4.0 > 0 else ps
        lhs = renyi_binary(alpha, ps, ps + v / 2.0)
        bound = alpha / 2.0 * v * v
        rel = (lhs - bound) / bound
        i = int(np.argmin(rel))
        if best is None or rel[i] < best[0]:
            best = (float(rel[i]), float(ps[i]), float(v), float(lhs[i]), bound)
    rel, p, v, lhs, bound = best
    if rel < -rel_tol:
        return RenyiSearchResult(alpha, "violated", p, v, lhs, float(bound), "witness from binary grid")
    if alpha < 1:
        return RenyiSearchResult(alpha, "none", note="no violation; the bound holds for alpha < 1")
    note = ("search found nothing; whether the bound holds here is open"
            if alpha <= RENYI_OPEN_THRESHOLD else "search found nothing although a violation is expected")
    return RenyiSearchResult(alpha, "inconclusive", note=note)


# ----------------------------------------------------------------------------
# per-distribution constant


def per_P_constant(f: Generator, P: Distribution) -> float:
    """c_f(P) = (f''(1)/2) / (4 max_A P(A)(1 - P(A)))."""
    f2 = float(f.deriv_at_one(2))
    if not f2 > 0:
        raise gen.DegenerateGeneratorError(f"{f.name}: f''(1) = {f2} is not positive")
    spread = max_partition_spread(P)
    if spread == 0:
        return math.inf
    return f2 / 2.0 / (4.0 * spread)


# ----------------------------------------------------------------------------
# sixth-order conjecture


LOG6_W = (Fraction(1, 2), Fraction(1, 36), Fraction(41, 12150))
LOG6_SHIFT = (Fraction(2, 3), Fraction(28, 45), Fraction(23186, 38745))
SURPLUS_TARGET = Fraction(1, 270) - Fraction(41, 12150)


def log6_rhs(u) -> np.ndarray:
    """Sum of (u-1)^(2k) coeff_k / [1 + s_k (u-1)]^(2k-1) for k = 1, 2, 3."""
    x = np.asarray(u, dtype=np.float64) - 1.0
    out = np.zeros_like(x)
    for k, (c, s) in enumerate(zip(LOG6_W, LOG6_SHIFT), start=1):
        out += float(c) * x ** (2 * k) / (1.0 + float(s) * x) ** (2 * k - 1)
    return out


def surplus_lhs(p, v) -> np.ndarray:
    """The two weighted chi-type integrals on binary pairs (vectorized in p)."""
    p = np.asarray(p, dtype=np.float64)
    total = np.zeros_like(p)
    for pi, qi in ((p, p + v / 2.0), (1.0 - p, 1.0 - p - v / 2.0)):
        x = qi / pi - 1.0
        total += pi * (0.5 * x**2 / (1.0 + 2.0 / 3.0 * x) + x**4 / (36.0 * (1.0 + 28.0 / 45.0 * x) ** 3))
    return total


@dataclass(frozen=True)
class ConjectureReport:
    label: str
    name: str
    summary: dict
    rows: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"{self.label} {self.name} (numeric exploration, not a certificate)"]
        out += [f"  {k} = {v}" for k, v in self.summary.items()]
        return out


def conjecture_log6(grid=None) -> ConjectureReport:
    """Scan the sixth-order pointwise inequality for u - 1 - log u."""
    u = standard_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    lhs = tilde_values(gen.kl(), u)
    rhs = log6_rhs(u)
    m = scaled_margins(lhs, rhs)
    i = int(np.argmin(m))
    summary = {
        "grid_points": int(u.size),
        "min_scaled_margin": float(m[i]),
        "at_u": float(u[i]),
        "violation_found": bool(m[i] < -1e-9),
    }
    return ConjectureReport(CONJECTURE_LABEL, "log6", summary)


SURPLUS_V = (0.4, 0.3, 0.2, 0.15, 0.1)


def conjecture_surplus(v_list=SURPLUS_V) -> ConjectureReport:
    """Fit the v^6 coefficient of the binary infimum minus 1/2 v^2 + v^4/36."""
    rows = []
    for v in v_list:
        lo, hi = _p_range(v)
        p, val = grid_then_golden(lambda ps: surplus_lhs(ps, v), lambda x: float(surplus_lhs(x, v)),
                                  lo, hi, points=ENVELOPE_POINTS, tol=1e-12)
        coeff = (val - 0.5 * v**2 - v**4 / 36.0) / v**6
        rows.append((float(v), float(p), float(val), float(coeff)))
    vs = [r[0] for r in rows]
    fit = richardson_limit(vs, [r[3] for r in rows], (2,))
    target = float(SURPLUS_TARGET)
    summary = {
        "v6_coefficient_fit": fit,
        "target_2/6075": target,
        "relative_error": abs(fit - target) / target,
        "note": "binary pairs only; infimum over larger spaces not explored",
    }
    return ConjectureReport(CONJECTURE_LABEL, "surplus", summary, rows)


def conjecture_checks(grid=None, v_list=SURPLUS_V) -> list[ConjectureReport]:
    return [conjecture_log6(grid), conjecture_surplus(v_list)]


# ----------------------------------------------------------------------------
# sampled consequences of the Hoelder bound


@dataclass(frozen=True)
class SampledInequality:
    """min over sampled pairs of the normalized margin lhs - rhs."""

    name: str
    pairs: int
    min_margin: float
    witness: Optional[tuple] = None
    tol: float = 1e-9

    @property
    def holds(self) -> bool:
        return self.min_margin >= -self.tol


def _record(name, n, margins, witnesses, tol) -> SampledInequality:
    margins = np.asarray(margins)
    i = int(np.argmin(margins))
    w = witnesses[i] if margins[i] < -tol else None
    return SampledInequality(name, n, float(margins[i]), w, tol)


def sampled_consequences(n: int = 10_000, seed: int = RENYI_SEED, tol: float = 1e-9, nus=(2, 3)) -> list[SampledInequality]:
    """The chi-square, triangular, Hellinger and Delta_nu bounds on random pairs,
    plus the capacitory bound on random binary pairs.

    Delta_nu is checked in two forms: V^(2 nu), and 2^(1 - 2 nu) V^(2 nu),
    the bound the normalized weight (1 + u)/2 gives.
    """
    rng = np.random.default_rng(seed)
    pairs = list(random_pairs(n, rng))
    V = np.array([variational_distance(P, Q) for P, Q in pairs])
    wit = [(P.weights.tolist(), Q.weights.tolist()) for P, Q in pairs]
    out = []
    chi = np.array([dv.chi2(P, Q) for P, Q in pairs])
    out.append(_record("chi2 >= V^2", n, scaled_margins(chi, V**2), wit, tol))
    tri = np.array([dv.triangular(P, Q) for P, Q in pairs])
    out.append(_record("Delta >= V^2/2", n, scaled_margins(tri, V**2 / 2), wit, tol))
    h2 = np.array([dv.hellinger2(P, Q) for P, Q in pairs])
    out.append(_record("4 h^2 (2 - h^2) >= V^2", n, scaled_margins(4 * h2 * (2 - h2), V**2), wit, tol))
    for nu in nus:
        d = np.array([dv.triangular_nu(nu, P, Q) for P, Q in pairs])
        out.append(_record(f"Delta_{nu} >= V^{2 * nu}", n, scaled_margins(d, V ** (2 * nu)), wit, tol))
        out.append(_record(f"Delta_{nu} >= 2^{1 - 2 * nu} V^{2 * nu}", n,
                           scaled_margins(d, 2.0 ** (1 - 2 * nu) * V ** (2 * nu)), wit, tol))
    p, q = random_binary_pairs(n, rng)
    vb = 2.0 * np.abs(q - p)
    cap = np.array([dv.capacitory(Distribution(np.array([a, 1 - a])), Distribution(np.array([b, 1 - b])))
                    for a, b in zip(p, q)])
    lower = np.array([dv.capacitory_lower_bound(x) for x in vb])
    out.append(_record("capacitory precise bound", n, scaled_margins(cap, lower),
                       list(zip(p.tolist(), q.tolist())), tol))
    return out
