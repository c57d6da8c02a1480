"""Grid certification of the second- and fourth-order sufficient conditions.

Every check here is numeric: a pass means no violation on the grid, and is
reported as ``certified_numeric``.  Exact certificates live in
:mod:`pinskerf.polycert`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import generators as gen
from ._search import golden_section_minimize
from .generators import DerivativeOrderError, Generator, PinskerCoefficients

MARGIN_TOL = 1e-9
DERIV_AT_ONE_TOL = 1e-9
TAYLOR_RADIUS = 1e-3


class Status(str, Enum):
    CERTIFIED_NUMERIC = "certified_numeric"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class ConditionError(ValueError):
    """The condition does not apply to this generator (e.g. c4 <= 0)."""


# ----------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    lo: float = 1e-6
    hi: float = 1e6
    points: int = 20001
    log: bool = True
    near_one: int = 64

    def __post_init__(self):
        if not 0 < self.lo < self.hi or self.points < 2:
            raise ValueError(f"grid needs 0 < lo < hi and at least 2 points, got {self.lo}:{self.hi}:{self.points}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``lo:hi:points[:log|lin]``."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(f"grid spec {text!r} is not lo:hi:points[:log]")
        log = True if len(parts) == 3 else parts[3].lower() in ("log", "1", "true")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]), log)

    def build(self) -> np.ndarray:
        base = (np.geomspace if self.log else np.linspace)(self.lo, self.hi, self.points)
        extra = np.linspace(1 - TAYLOR_RADIUS, 1 + TAYLOR_RADIUS, self.near_one) if self.near_one else []
        u = np.unique(np.concatenate([base, extra]))
        return u[(u >= self.lo) & (u <= self.hi)] if self.near_one else u

    def __str__(self) -> str:
        kind = "log" if self.log else "lin"
        return f"{self.lo:g}:{self.hi:g}:{self.points}:{kind}+{self.near_one}@1"


STANDARD_GRID = GridSpec()


def standard_grid() -> np.ndarray:
    return STANDARD_GRID.build()


def _grid(grid) -> tuple[np.ndarray, str]:
    if grid is None:
        return standard_grid(), str(STANDARD_GRID)
    if isinstance(grid, GridSpec):
        return grid.build(), str(grid)
    if isinstance(grid, str):
        spec = GridSpec.parse(grid)
        return spec.build(), str(spec)
    u = np.asarray(grid, dtype=np.float64)
    return u, f"explicit[{u.size} points, {u.min():g}..{u.max():g}]"


# ----------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class CertificateResult:
    status: Status
    margin: float
    witness_u: Optional[float]
    grid_spec: str
    condition: str = ""
    numeric_grade: bool = False
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status is Status.CERTIFIED_NUMERIC

    def __post_init__(self):
        if self.status is Status.VIOLATED and (self.witness_u is None or not self.margin < 0):
            raise ValueError("a violation must carry a witness with negative margin")


def scaled_margins(lhs: np.ndarray, rhs) -> np.ndarray:
    """(lhs - rhs) / max(|lhs|, |rhs|, 1), pointwise."""
    rhs = np.broadcast_to(np.asarray(rhs, dtype=np.float64), np.shape(lhs))
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    return (lhs - rhs) / scale


def _judge(u, margins, grid_spec, condition, numeric_grade=False, tol=MARGIN_TOL, **details) -> CertificateResult:
    bad = ~np.isfinite(margins)
    if bad.all():
        return CertificateResult(Status.INCONCLUSIVE, 0.0, None, grid_spec, condition, numeric_grade,
                                 {"non_finite_points": int(bad.sum()), **details})
    m = np.where(bad, np.inf, margins)
    i = int(np.argmin(m))
    worst = float(m[i])
    if worst < -tol:
        return CertificateResult(Status.VIOLATED, worst, float(u[i]), grid_spec, condition, numeric_grade, details)
    if bad.any():
        return CertificateResult(Status.INCONCLUSIVE, worst, None, grid_spec, condition, numeric_grade,
                                 {"non_finite_points": int(bad.sum()), **details})
    return CertificateResult(Status.CERTIFIED_NUMERIC, worst, None, grid_spec, condition, numeric_grade, details)


# ----------------------------------------------------------------------------
# helpers


def tilde_values(f: Generator, u) -> np.ndarray:
    """f~(u), using a Taylor polynomial within 1e-3 of u = 1.

    Near u = 1 the difference f(u) - f'(1)(u - 1) cancels badly; the degree-6
    Taylor polynomial is accurate to ~1e-16 relative there.
    """
    u = np.asarray(u, dtype=np.float64)
    out = np.asarray(gen.tilde(f).eval(u), dtype=np.float64).copy()
    if f.order >= 6:
        near = np.abs(u - 1.0) < TAYLOR_RADIUS
        if near.any():
            x = u[near] - 1.0
            t = np.zeros_like(x)
            for k in range(6, 1, -1):
                t = (t + float(f.deriv_at_one(k)) / math.factorial(k)) * x
            out[near] = t * x
    return out


def _coeffs(f: Generator, coeffs: Optional[PinskerCoefficients]) -> PinskerCoefficients:
    return gen.coefficients(f) if coeffs is None else coeffs


def _positive_second_derivative(f: Generator, u: np.ndarray) -> np.ndarray:
    f2 = f.deriv(2, u)
    if np.any(f2 <= 0):
        i = int(np.argmax(f2 <= 0))
        raise ConditionError(f"{f.name}: f''(u) = {f2[i]} is not positive at u = {u[i]}")
    return f2


# ----------------------------------------------------------------------------
# second order


def check_second_order_condition(f: Generator, grid=None, coeffs=None, tol: float = MARGIN_TOL) -> CertificateResult:
    """f~(u) [1 + (1 - w2)(u - 1)] >= (f''(1)/2)(u - 1)^2 on the grid."""
    c = _coeffs(f, coeffs)
    u, spec = _grid(grid)
    w2, c2 = float(c.w2), float(c.c2)
    lhs = tilde_values(f, u) * (1.0 + (1.0 - w2) * (u - 1.0))
    rhs = c2 * (u - 1.0) ** 2
    at_one = u == 1.0
    lhs[at_one] = rhs[at_one] = 0.0
    return _judge(u, scaled_margins(lhs, rhs), spec, "second-order pointwise", f.numeric_grade, tol)


def _second_order_derivative_terms(f: Generator, u, coeffs=None) -> np.ndarray:
    c = _coeffs(f, coeffs)
    u = np.asarray(u, dtype=np.float64)
    w2 = float(c.w2)
    f2 = _positive_second_derivative(f, u)
    s = np.sign(u - 1.0)
    return np.stack([s * f.deriv(3, u) / f2 * (1.0 + (1.0 - w2) * (u - 1.0)), s * 3.0 * (1.0 - w2)])


def second_order_derivative_lhs(f: Generator, u, coeffs=None) -> np.ndarray:
    """sgn(u - 1) {f'''/f'' [1 + (1 - w2)(u - 1)] + 3 (1 - w2)}."""
    return _second_order_derivative_terms(f, u, coeffs).sum(axis=0)


def _split_margins(terms: np.ndarray) -> np.ndarray:
    """Margins of sum(terms) >= 0, read as (positive part) >= (negative part).

    Normalizing by the larger part keeps cancellation noise at rounding level,
    e.g. when terms of size 1e24 near u = 0 sum to zero.
    """
    pos = np.where(terms > 0, terms, 0.0).sum(axis=0)
    neg = np.where(terms < 0, -terms, 0.0).sum(axis=0)
    return scaled_margins(pos, neg)


def check_second_order_derivative_condition(f: Generator, grid=None, coeffs=None, tol: float = MARGIN_TOL) -> CertificateResult:
    """The third-derivative sufficient condition for the second-order bound."""
    u, spec = _grid(grid)
    margins = _split_margins(_second_order_derivative_terms(f, u, coeffs))
    return _judge(u, margins, spec, "second-order derivative", f.numeric_grade, tol)


# ----------------------------------------------------------------------------
# fourth order


def _fourth_weights(c: PinskerCoefficients) -> tuple[float, float]:
    return float(c.w2), float(c.w4)


def check_fourth_order_condition(f: Generator, grid=None, coeffs=None, tol: float = MARGIN_TOL) -> CertificateResult:
    """f~ A B^3 >= c2 (u-1)^2 B^3 + c4 (u-1)^4 A with A, B the two weight factors."""
    c = _coeffs(f, coeffs)
    if not (c.c2 > 0 and c.c4 > 0):
        raise ConditionError(
            f"{f.name}: fourth-order condition needs c2 > 0 and c4 > 0 "
            f"(c4 = {c.c4}); use the second-order checks instead"
        )
    w2, w4 = _fourth_weights(c)
    u, spec = _grid(grid)
    x = u - 1.0
    A = 1.0 + (1.0 - w2) * x
    B = 1.0 + (1.0 - w4) * x
    lhs = tilde_values(f, u) * A * B**3
    rhs = float(c.c2) * x**2 * B**3 + float(c.c4) * x**4 * A
    at_one = u == 1.0
    lhs[at_one] = rhs[at_one] = 0.0
    return _judge(u, scaled_margins(lhs, rhs), spec, "fourth-order pointwise", f.numeric_grade, tol)


def fourth_order_derivative_lhs(f: Generator, u, coeffs=None) -> np.ndarray:
    """g^(6)(u) / f''(u) for g = f~ A B^3 - c2 (u-1)^2 B^3 - c4 (u-1)^4 A.

    Written out term by term; the constant term is 360 (1-w2)(1-w4)^3, which is
    15 times the fourth derivative of A B^3.
    """
    return _fourth_order_derivative_terms(f, u, coeffs).sum(axis=0)


def _fourth_order_derivative_terms(f: Generator, u, coeffs=None) -> np.ndarray:
    c = _coeffs(f, coeffs)
    w2, w4 = _fourth_weights(c)
    u = np.asarray(u, dtype=np.float64)
    x = u - 1.0
    a, b = 1.0 - w2, 1.0 - w4
    A = 1.0 + a * x
    B = 1.0 + b * x
    f2 = _positive_second_derivative(f, u)
    r3, r4, r5, r6 = (f.deriv(k, u) / f2 for k in (3, 4, 5, 6))
    return np.stack([
        r6 * A * B**3,
        6.0 * r5 * B**2 * (4.0 - w2 - 3.0 * w4 + 4.0 * a * b * x),
        90.0 * r4 * b * B * (2.0 - w2 - w4 + 2.0 * a * b * x),
        120.0 * r3 * b**2 * (4.0 - 3.0 * w2 - w4 + 4.0 * a * b * x),
        np.full_like(u, 360.0 * a * b**3),
    ])


def fourth_order_g6_leibniz(f: Generator, u, coeffs=None) -> np.ndarray:
    """Same quantity as :func:`fourth_order_derivative_lhs`, by the Leibniz rule."""
    c = _coeffs(f, coeffs)
    w2, w4 = _fourth_weights(c)
    # A B^3 as a polynomial in x = u - 1
    AB3 = np.polynomial.Polynomial([1.0, 1.0 - w2]) * np.polynomial.Polynomial([1.0, 1.0 - w4]) ** 3
    u = np.asarray(u, dtype=np.float64)
    x = u - 1.0
    total = np.zeros_like(u)
    for k in range(5):
        total = total + math.comb(6, k) * f.deriv(6 - k, u) * AB3.deriv(k)(x)
    return total / _positive_second_derivative(f, u)


def check_fourth_order_derivative_condition(f: Generator, grid=None, coeffs=None, tol: float = MARGIN_TOL) -> CertificateResult:
    """The sixth-derivative sufficient condition for the fourth-order bound.

    Only w2 and w4 enter; pass ``coeffs`` to supply them when c4 = 0 leaves w4
    undefined (e.g. the closed forms for D_(alpha) at alpha = -1 or 2).
    """
    c = _coeffs(f, coeffs)
    if not c.w4_defined:
        raise ConditionError(f"{f.name}: w4 is undefined (c4 = 0); supply coefficients explicitly")
    u, spec = _grid(grid)
    margins = _split_margins(_fourth_order_derivative_terms(f, u, c))
    return _judge(u, margins, spec, "fourth-order derivative", f.numeric_grade, tol)


@dataclass(frozen=True)
class WeightCheck:
    admissible: bool
    diagnostics: tuple

    def __bool__(self) -> bool:
        return self.admissible


def check_weights_admissible(c: PinskerCoefficients) -> WeightCheck:
    """Both w2 and w4 in [0, 1], as the fourth-order condition forces."""
    problems = []
    for label, w in (("w2", c.w2), ("w4", c.w4)):
        if not 0 <= w <= 1:
            problems.append(f"{label} = {w} outside [0, 1]")
    return WeightCheck(not problems, tuple(problems))


# ----------------------------------------------------------------------------
# composed expressions with closed-form derivatives


class Expr:
    """A function of u with derivatives, closed under +, - and *."""

    def __init__(self, deriv: Callable[[int, np.ndarray], np.ndarray], max_order=math.inf, name="g"):
        self._deriv = deriv
        self.max_order = max_order
        self.name = name

    def deriv(self, k: int, u) -> np.ndarray:
        if k > self.max_order:
            raise DerivativeOrderError(f"{self.name}: order {k} exceeds {self.max_order}")
        return np.asarray(self._deriv(k, np.asarray(u, dtype=np.float64)), dtype=np.float64)

    def __call__(self, u):
        return self.deriv(0, u)

    @classmethod
    def generator(cls, f: Generator, tilde: bool = True) -> "Expr":
        h = gen.tilde(f) if tilde else f
        return cls(h.deriv, h.order, name=h.name)

    @classmethod
    def poly_in_shift(cls, coeffs, name="poly") -> "Expr":
        """sum_j coeffs[j] (u - 1)^j."""
        P = np.polynomial.Polynomial([float(c) for c in coeffs])
        return cls(lambda k, u: P.deriv(k)(u - 1.0) if k else P(u - 1.0), math.inf, name)

    @classmethod
    def const(cls, c) -> "Expr":
        return cls.poly_in_shift([c], name=str(c))

    @staticmethod
    def _lift(other) -> "Expr":
        return other if isinstance(other, Expr) else Expr.const(other)

    def __add__(self, other):
        o = self._lift(other)
        return Expr(lambda k, u: self.deriv(k, u) + o.deriv(k, u), min(self.max_order, o.max_order),
                    f"({self.name} + {o.name})")

    __radd__ = __add__

    def __neg__(self):
        return Expr(lambda k, u: -self.deriv(k, u), self.max_order, f"-{self.name}")

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)

        def d(k, u):
            return sum(math.comb(k, j) * self.deriv(j, u) * o.deriv(k - j, u) for j in range(k + 1))

        return Expr(d, min(self.max_order, o.max_order), f"{self.name}*{o.name}")

    __rmul__ = __mul__


def second_order_g(f: Generator, coeffs=None) -> Expr:
    """g(u) = f~(u) [1 + (1 - w2)(u - 1)] - c2 (u - 1)^2."""
    c = _coeffs(f, coeffs)
    A = Expr.poly_in_shift([1, 1 - c.w2], "A")
    return Expr.generator(f) * A - Expr.poly_in_shift([0, 0, c.c2], "c2*x^2")


def fourth_order_g(f: Generator, coeffs=None) -> Expr:
    """g(u) = f~ A B^3 - c2 (u-1)^2 B^3 - c4 (u-1)^4 A."""
    c = _coeffs(f, coeffs)
    A = Expr.poly_in_shift([1, 1 - c.w2], "A")
    B = Expr.poly_in_shift([1, 1 - c.w4], "B")
    B3 = B * B * B
    x2 = Expr.poly_in_shift([0, 0, 1], "x^2")
    x4 = Expr.poly_in_shift([0, 0, 0, 0, 1], "x^4")
    return Expr.generator(f) * A * B3 - float(c.c2) * x2 * B3 - float(c.c4) * x4 * A


def derivative_sign_check(g: Expr, n: int, grid=None, tol: float = MARGIN_TOL) -> CertificateResult:
    """Hypotheses of the derivative-sign lemma, checked numerically.

    Requires g(1) = ... = g^(n)(1) = 0 (to 1e-9) and then, for even n,
    g^(n+1) <= 0 left of 1 and >= 0 right of 1, or for odd n, g^(n+1) >= 0.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    u, spec = _grid(grid)
    one = np.array([1.0])
    at_one = [float(g.deriv(j, one)[0]) for j in range(n + 1)]
    details = {"derivatives_at_one": at_one, "case": "i" if n % 2 == 0 else "ii"}
    if any(not abs(d) <= DERIV_AT_ONE_TOL for d in at_one):
        return CertificateResult(Status.INCONCLUSIVE, 0.0, None, spec, f"derivative signs (n={n})", False, details)
    top = g.deriv(n + 1, u)
    signed = top * np.sign(u - 1.0) if n % 2 == 0 else top
    return _judge(u, scaled_margins(signed, 0.0), spec, f"derivative signs (n={n})", tol=tol, **details)


# ----------------------------------------------------------------------------
# h_w profiles


@dataclass(frozen=True)
class HwProfile:
    w: float
    u: np.ndarray
    h: np.ndarray
    limit_at_1: float
    argmax_u: float
    max_value: float

    @property
    def samples(self) -> np.ndarray:
        return np.column_stack([self.u, self.h])


def h_w(f: Generator, w: float, u) -> np.ndarray:
    """(u - 1)^2 / {f~(u) [1 + (1 - w)(u - 1)]}, continuity-corrected at u = 1."""
    u = np.asarray(u, dtype=np.float64)
    limit = 2.0 / float(f.deriv_at_one(2))
    with np.errstate(divide="ignore", invalid="ignore"):
        h = (u - 1.0) ** 2 / (tilde_values(f, u) * (1.0 + (1.0 - w) * (u - 1.0)))
    return np.where(u == 1.0, limit, h)


def h_w_profile(f: Generator, w: float, grid=None, xtol: float = 1e-8) -> HwProfile:
    """Sample h_w and locate its maximum (grid scan, then golden section)."""
    if not 0.0 <= w <= 1.0:
        raise ValueError("w must lie in [0, 1]")
    u, _ = _grid(grid)
    u = np.union1d(u, [1.0])
    h = h_w(f, w, u)
    i = int(np.nanargmax(h))
    lo, hi = u[max(i - 1, 0)], u[min(i + 1, u.size - 1)]
    x, neg = golden_section_minimize(lambda t: -float(h_w(f, w, np.array([t]))[0]), lo, hi, tol=xtol)
    if -neg < h[i]:
        x, neg = float(u[i]), -float(h[i])
    return HwProfile(float(w), u, h, 2.0 / float(f.deriv_at_one(2)), float(x), -float(neg))
