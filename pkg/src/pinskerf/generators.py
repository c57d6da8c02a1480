"""Convex generators f with closed-form derivative oracles.

A generator carries three views of f:

* ``func`` evaluates f on arrays of u > 0,
* ``derivative(k, u)`` evaluates f^(k) for k >= 1,
* ``exact_at_one(k)`` gives f^(k)(1) as a :class:`~fractions.Fraction`
  when it is rational, so that coefficient tables come out exact.

Together with the boundary limits f(0+) and lim f(u)/u these are all that the
divergence, certification and envelope code need.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Optional, Union

import numpy as np

Number = Union[Fraction, float]

#: Orders the certification code relies on.
ORDER_LIMIT = 6
F_AT_ONE_TOL = 1e-12
DEFAULT_VALIDATION_GRID = np.geomspace(0.1, 10.0, 201)


class GeneratorError(ValueError):
    """Invalid generator name, parameter or construction."""


class DerivativeOrderError(GeneratorError):
    """The oracle cannot supply a derivative of the requested order."""


class DegenerateGeneratorError(GeneratorError):
    """f''(1) <= 0: no second-order Pinsker coefficient exists."""


class UndefinedWeightError(ArithmeticError):
    """w4 was requested for a generator whose fourth-order coefficient vanishes."""


def as_fraction(x) -> Fraction:
    """Exact rational for ints, Fractions, decimal strings and floats.

    Floats go through ``repr`` so that ``0.05`` becomes 1/20 rather than the
    nearest binary fraction.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise GeneratorError(f"non-finite parameter {x!r}")
        return Fraction(repr(x))
    return Fraction(str(x).strip())


def falling(beta, k: int):
    """Falling factorial beta (beta - 1) ... (beta - k + 1)."""
    out = 1 if not isinstance(beta, float) else 1.0
    for j in range(k):
        out = out * (beta - j)
    return out


@lru_cache(maxsize=None)
def lah(n: int, k: int) -> int:
    """Unsigned Lah number L(n, k)."""
    if n == k:
        return 1
    if k < 1 or k > n:
        return 0
    return math.comb(n - 1, k - 1) * math.factorial(n) // math.factorial(k)


def _arr(u) -> np.ndarray:
    return np.asarray(u, dtype=np.float64)


def _add_limits(a: float, b: float) -> float:
    if math.isinf(a) and math.isinf(b) and a != b:
        raise GeneratorError("boundary limits of opposite infinite sign")
    return a + b


@dataclass(frozen=True)
class Generator:
    """A convex f on (0, inf) with f(1) = 0."""

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    derivative: Optional[Callable[[int, np.ndarray], np.ndarray]]
    limit_at_zero: float
    slope_at_infinity: float
    exact_at_one: Optional[Callable[[int], Fraction]] = None
    max_order: Optional[int] = None
    convexity_attested: bool = True
    numeric_grade: bool = False
    tangent_slope_override: Optional[Number] = field(default=None, repr=False)

    def __post_init__(self):
        at_one = float(np.asarray(self.func(np.array([1.0])))[0])
        if not abs(at_one) <= F_AT_ONE_TOL:
            raise GeneratorError(f"{self.name}: f(1) = {at_one!r}, expected 0")

    def __call__(self, u):
        return self.eval(u)

    def eval(self, u):
        u = _arr(u)
        return self.func(u)

    @property
    def order(self) -> float:
        """Highest derivative order available (inf for closed forms)."""
        if self.derivative is None:
            return 0
        return math.inf if self.max_order is None else self.max_order

    def deriv(self, k: int, u):
        if k < 0:
            raise DerivativeOrderError("negative derivative order")
        if k == 0:
            return self.eval(u)
        if k > self.order:
            raise DerivativeOrderError(
                f"{self.name}: derivative of order {k} unavailable (max {self.order})"
            )
        return self.derivative(k, _arr(u))

    def deriv_at_one(self, k: int) -> Number:
        """f^(k)(1), exact when the generator knows it."""
        if k == 1 and self.tangent_slope_override is not None:
            return self.tangent_slope_override
        if k > self.order:
            raise DerivativeOrderError(
                f"{self.name}: derivative of order {k} unavailable (max {self.order})"
            )
        if self.exact_at_one is not None:
            return self.exact_at_one(k)
        return float(np.asarray(self.deriv(k, np.array([1.0])))[0])

    @property
    def has_exact_derivatives(self) -> bool:
        return self.exact_at_one is not None

    @property
    def tangent_slope(self) -> Number:
        """The f'(1) used by :func:`tilde`."""
        return self.deriv_at_one(1)

    def scaled(self, c, name: Optional[str] = None) -> "Generator":
        """c f for c > 0."""
        c_exact = as_fraction(c)
        if c_exact <= 0:
            raise GeneratorError("scale factor must be positive")
        cf = float(c_exact)
        ex = self.exact_at_one
        return Generator(
            name=name or f"{c_exact}*{self.name}",
            func=lambda u: cf * self.func(u),
            derivative=None if self.derivative is None else (lambda k, u: cf * self.derivative(k, u)),
            limit_at_zero=cf * self.limit_at_zero,
            slope_at_infinity=cf * self.slope_at_infinity,
            exact_at_one=None if ex is None else (lambda k: c_exact * ex(k)),
            max_order=self.max_order,
            convexity_attested=self.convexity_attested,
            numeric_grade=self.numeric_grade,
            tangent_slope_override=(
                None if self.tangent_slope_override is None
                else c_exact * self.tangent_slope_override
            ),
        )

    def __add__(self, other: "Generator") -> "Generator":
        return add(self, other)

    # closed-form user generators from a small expression language
    @classmethod
    def parse(cls, expr: str, name: Optional[str] = None) -> "Generator":
        return parse_generator(expr, name)

    @classmethod
    def from_callable(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        name: str = "user",
        limit_at_zero: Optional[float] = None,
        slope_at_infinity: Optional[float] = None,
    ) -> "Generator":
        """Wrap a plain function; derivatives come from finite differences.

        Such generators are flagged ``numeric_grade``.  Omitted boundary limits
        are estimated at u = 1e-12 and u = 1e12.
        """
        f = lambda u: np.asarray(func(_arr(u)), dtype=np.float64)
        if limit_at_zero is None:
            limit_at_zero = float(f(np.array([1e-12]))[0])
        if slope_at_infinity is None:
            slope_at_infinity = float(f(np.array([1e12]))[0] / 1e12)
        return cls(
            name=name,
            func=f,
            derivative=lambda k, u: finite_difference(f, k, u),
            limit_at_zero=limit_at_zero,
            slope_at_infinity=slope_at_infinity,
            max_order=ORDER_LIMIT,
            numeric_grade=True,
        )


def finite_difference(func, k: int, u) -> np.ndarray:
    """Central k-th difference with a step scaled to u."""
    u = _arr(u)
    h = np.finfo(float).eps ** (1.0 / (k + 2)) * np.maximum(u, 1e-3)
    h = np.minimum(h, 0.5 * u / max(k, 1))
    total = np.zeros_like(u)
    for j in range(k + 1):
        total = total + (-1) ** j * math.comb(k, j) * func(u + (k / 2 - j) * h)
    return total / h**k


# ----------------------------------------------------------------------------
# transformations


def tilde(f: Generator) -> Generator:
    """f(u) - f'(1)(u - 1), nonnegative for convex f."""
    s = f.tangent_slope
    sf = float(s)
    deriv = None
    if f.derivative is not None:
        def deriv(k, u):
            d = f.derivative(k, u)
            return d - sf if k == 1 else d
    ex = f.exact_at_one
    return Generator(
        name=f"tilde({f.name})",
        func=lambda u: f.func(u) - sf * (u - 1.0),
        derivative=deriv,
        limit_at_zero=f.limit_at_zero + sf,
        slope_at_infinity=f.slope_at_infinity - sf,
        exact_at_one=None if ex is None else (lambda k: 0 * s if k == 1 else ex(k)),
        max_order=f.max_order,
        convexity_attested=f.convexity_attested,
        numeric_grade=f.numeric_grade,
        tangent_slope_override=None if f.tangent_slope_override is None else 0 * s,
    )


def _reverse_derivative(n: int, u: np.ndarray, fk: Callable[[int, np.ndarray], np.ndarray], inv=None):
    """n-th derivative of u f(1/u) from derivatives of f at 1/u.

    With phi(u) = f(1/u), phi^(n)(u) = (-1)^n sum_k L(n, k) u^(-n-k) f^(k)(1/u)
    and (u phi)^(n) = u phi^(n) + n phi^(n-1).
    """
    if inv is None:
        inv = 1.0 / u

    def phi(m):
        if m == 0:
            return fk(0, inv)
        total = 0
        for k in range(1, m + 1):
            total = total + lah(m, k) * u ** (-m - k) * fk(k, inv)
        return (-1) ** m * total

    return u * phi(n) + n * phi(n - 1)


def reverse(f: Generator) -> Generator:
    """u f(1/u), the generator of the divergence with swapped arguments."""
    deriv = None
    if f.derivative is not None:
        deriv = lambda n, u: _reverse_derivative(n, u, f.deriv)
    ex = f.exact_at_one
    exact = None
    if ex is not None:
        one = Fraction(1)
        exact = lambda n: (
            ex(0) if n == 0 else _reverse_derivative(n, one, lambda k, _x: ex(k), inv=one)
        )
    override = None
    if f.tangent_slope_override is not None:
        # f_R'(1) = f(1) - f'(1)
        override = -f.tangent_slope_override
    return Generator(
        name=f"reverse({f.name})",
        func=lambda u: u * f.func(1.0 / u),
        derivative=deriv,
        limit_at_zero=f.slope_at_infinity,
        slope_at_infinity=f.limit_at_zero,
        exact_at_one=exact,
        max_order=f.max_order,
        convexity_attested=f.convexity_attested,
        numeric_grade=f.numeric_grade,
        tangent_slope_override=override,
    )


def add(f: Generator, g: Generator, name: Optional[str] = None) -> Generator:
    deriv = None
    if f.derivative is not None and g.derivative is not None:
        deriv = lambda k, u: f.derivative(k, u) + g.derivative(k, u)
    exact = None
    if f.exact_at_one is not None and g.exact_at_one is not None:
        exact = lambda k: f.exact_at_one(k) + g.exact_at_one(k)
    override = None
    if f.tangent_slope_override is not None or g.tangent_slope_override is not None:
        override = f.tangent_slope + g.tangent_slope
    orders = [o for o in (f.max_order, g.max_order) if o is not None]
    return Generator(
        name=name or f"({f.name} + {g.name})",
        func=lambda u: f.func(u) + g.func(u),
        derivative=deriv,
        limit_at_zero=_add_limits(f.limit_at_zero, g.limit_at_zero),
        slope_at_infinity=_add_limits(f.slope_at_infinity, g.slope_at_infinity),
        exact_at_one=exact,
        max_order=min(orders) if orders else None,
        convexity_attested=f.convexity_attested and g.convexity_attested,
        numeric_grade=f.numeric_grade or g.numeric_grade,
        tangent_slope_override=override,
    )


def symmetrize(f: Generator) -> Generator:
    """f + reverse(f)."""
    return add(f, reverse(f), name=f"sym({f.name})")


# ----------------------------------------------------------------------------
# closed-form atoms


def _log_d(k: int, x):
    """k-th derivative of log x, k >= 1."""
    return (-1) ** (k - 1) * math.factorial(k - 1) * x ** (-k)


def _log_exact(k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    return Fraction((-1) ** (k - 1) * math.factorial(k - 1))


def _xlogx_d(k: int, x):
    """k-th derivative of x log x, k >= 1."""
    if k == 1:
        return np.log(x) + 1.0
    return (-1) ** k * math.factorial(k - 2) * x ** (1 - k)


def _xlogx_exact(k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    if k == 1:
        return Fraction(1)
    return Fraction((-1) ** k * math.factorial(k - 2))


def _xlogx(u):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(u > 0, u * np.log(np.where(u > 0, u, 1.0)), 0.0)


def kl() -> Generator:
    return Generator(
        name="kl",
        func=lambda u: -np.log(u),
        derivative=lambda k, u: -_log_d(k, u),
        limit_at_zero=math.inf,
        slope_at_infinity=0.0,
        exact_at_one=lambda k: -_log_exact(k),
    )


def reverse_kl() -> Generator:
    return Generator(
        name="reverse_kl",
        func=_xlogx,
        derivative=_xlogx_d,
        limit_at_zero=0.0,
        slope_at_infinity=math.inf,
        exact_at_one=_xlogx_exact,
    )


def chi2() -> Generator:
    def d(k, u):
        if k == 1:
            return 2.0 * (u - 1.0)
        return np.full_like(u, 2.0 if k == 2 else 0.0)

    return Generator(
        name="chi2",
        func=lambda u: (u - 1.0) ** 2,
        derivative=d,
        limit_at_zero=1.0,
        slope_at_infinity=math.inf,
        exact_at_one=lambda k: Fraction(2 if k == 2 else 0),
    )


def hellinger() -> Generator:
    half = Fraction(1, 2)

    def d(k, u):
        if k == 1:
            return 0.5 * (1.0 - u**-0.5)
        return -float(falling(half, k)) * u ** (0.5 - k)

    return Generator(
        name="hellinger",
        func=lambda u: 0.5 * (np.sqrt(u) - 1.0) ** 2,
        derivative=d,
        limit_at_zero=0.5,
        slope_at_infinity=0.5,
        exact_at_one=lambda k: Fraction(0) if k < 2 else -falling(half, k),
    )


def triangular() -> Generator:
    # (u-1)^2/(u+1) = u - 3 + 4/(u+1)
    def d(k, u):
        if k == 1:
            return 1.0 - 4.0 / (u + 1.0) ** 2
        return 4.0 * (-1) ** k * math.factorial(k) / (u + 1.0) ** (k + 1)

    return Generator(
        name="triangular",
        func=lambda u: (u - 1.0) ** 2 / (u + 1.0),
        derivative=d,
        limit_at_zero=1.0,
        slope_at_infinity=1.0,
        exact_at_one=lambda k: Fraction(0) if k < 2
        else Fraction(4 * (-1) ** k * math.factorial(k), 2 ** (k + 1)),
    )


def triangular_nu(nu: int) -> Generator:
    if int(nu) != nu or nu <= 1:
        raise GeneratorError(f"triangular_nu needs an integer nu > 1, got {nu!r}")
    nu = int(nu)
    m = 2 * nu
    e = 1 - m  # exponent of (1 + u)

    def d(k, u):
        total = np.zeros_like(u)
        for j in range(min(k, m) + 1):
            total = total + math.comb(k, j) * falling(m, j) * (u - 1.0) ** (m - j) \
                * falling(e, k - j) * (1.0 + u) ** (e - k + j)
        return total

    def exact(k):
        if k < m:
            return Fraction(0)
        return math.comb(k, m) * math.factorial(m) * falling(Fraction(e), k - m) \
            * Fraction(2) ** (e - k + m)

    return Generator(
        name=f"triangular_nu[{nu}]",
        func=lambda u: (u - 1.0) ** m * (1.0 + u) ** e,
        derivative=d,
        limit_at_zero=1.0,
        slope_at_infinity=1.0,
        exact_at_one=exact,
    )


def jeffreys() -> Generator:
    return Generator(
        name="jeffreys",
        func=lambda u: (u - 1.0) * np.log(u),
        derivative=lambda k, u: _xlogx_d(k, u) - _log_d(k, u),
        limit_at_zero=math.inf,
        slope_at_infinity=math.inf,
        exact_at_one=lambda k: _xlogx_exact(k) - _log_exact(k),
    )


def capacitory() -> Generator:
    # (u+1) log 2 + u log u - (u+1) log(u+1)
    log2 = math.log(2.0)

    def func(u):
        return u * np.log(2.0 * u / (1.0 + u)) + np.log(2.0 / (1.0 + u))

    def d(k, u):
        if k == 1:
            return np.log(2.0 * u / (1.0 + u))
        return (-1) ** k * math.factorial(k - 2) * (u ** (1 - k) - (u + 1.0) ** (1 - k))

    def exact(k):
        if k < 2:
            return Fraction(0)
        return (-1) ** k * math.factorial(k - 2) * (1 - Fraction(2) ** (1 - k))

    return Generator(
        name="capacitory",
        func=func,
        derivative=d,
        limit_at_zero=log2,
        slope_at_infinity=log2,
        exact_at_one=exact,
    )


def rel_info_alpha(alpha) -> Generator:
    """[a(a-1)]^-1 (u^a - 1), generating D_(a)."""
    a = as_fraction(alpha)
    if a in (0, 1):
        raise GeneratorError("rel_info_alpha needs alpha not in {0, 1}")
    af = float(a)
    norm = a * (a - 1)
    nf = float(norm)

    def d(k, u):
        return float(falling(a, k) / norm) * u ** (af - k)

    return Generator(
        name=f"rel_info_alpha[{a}]",
        func=lambda u: np.expm1(af * np.log(u)) / nf,
        derivative=d,
        limit_at_zero=float(-1 / norm) if a > 0 else math.inf,
        slope_at_infinity=math.inf if a > 1 else 0.0,
        exact_at_one=lambda k: Fraction(0) if k == 0 else falling(a, k) / norm,
    )


def rel_info_alpha_family(alpha) -> Generator:
    """D_(a) for every real a, using the limits KL at a = 0 and reverse KL at a = 1."""
    a = as_fraction(alpha)
    if a == 0:
        return kl()
    if a == 1:
        return reverse_kl()
    return rel_info_alpha(a)


def tsallis(alpha) -> Generator:
    """T_a = a D_(1-a), a > 0, a != 1."""
    a = as_fraction(alpha)
    if a <= 0 or a == 1:
        raise GeneratorError("tsallis needs alpha > 0, alpha != 1")
    return rel_info_alpha(1 - a).scaled(a, name=f"tsallis[{a}]")


def cressie_read(lam) -> Generator:
    """CR_lambda = D_(-lambda)."""
    lam = as_fraction(lam)
    if lam in (0, -1):
        raise GeneratorError("cressie_read needs lambda not in {0, -1}")
    return replace(rel_info_alpha(-lam), name=f"cressie_read[{lam}]")


def total_variation() -> Generator:
    # f'(1) is fixed to 0, the symmetric choice between the one-sided slopes
    return Generator(
        name="total_variation",
        func=lambda u: np.abs(u - 1.0),
        derivative=None,
        limit_at_zero=1.0,
        slope_at_infinity=1.0,
        exact_at_one=lambda k: Fraction(0),
        max_order=0,
        tangent_slope_override=Fraction(0),
    )


_CATALOGUE = {
    "kl": kl,
    "reverse_kl": reverse_kl,
    "chi2": chi2,
    "hellinger": hellinger,
    "triangular": triangular,
    "jeffreys": jeffreys,
    "capacitory": capacitory,
    "total_variation": total_variation,
}
_PARAMETRIC = {
    "rel_info_alpha": ("alpha", rel_info_alpha),
    "tsallis": ("alpha", tsallis),
    "cressie_read": ("lam", cressie_read),
    "triangular_nu": ("nu", triangular_nu),
}
BUILTIN_NAMES = tuple(_CATALOGUE) + tuple(_PARAMETRIC)


def builtin(name: str, **params) -> Generator:
    """Look up a catalogue generator, e.g. ``builtin("rel_info_alpha", alpha=0.5)``."""
    key = name.lower().replace("-", "_")
    if key in _CATALOGUE:
        if params:
            raise GeneratorError(f"{name} takes no parameters, got {sorted(params)}")
        return _CATALOGUE[key]()
    if key in _PARAMETRIC:
        pname, factory = _PARAMETRIC[key]
        aliases = {"lam": ("lam", "lambda_", "alpha"), "alpha": ("alpha",), "nu": ("nu",)}
        values = [params[a] for a in aliases[pname] if params.get(a) is not None]
        if len(values) != 1:
            raise GeneratorError(f"{name} needs exactly one parameter {pname!r}")
        return factory(values[0])
    raise GeneratorError(f"unknown generator {name!r}; known: {', '.join(BUILTIN_NAMES)}")


# ----------------------------------------------------------------------------
# expression format for user generators

_TERM = re.compile(
    r"""^(?P<coef>\d+(?:\.\d*)?(?:/\d+)?|\.\d+)?\*?
        (?P<atom>u\*log\(u\)|u\s*log\(u\)|log\(u\)|sqrt\(u\)|u(?:\^(?P<pow>\d+))?)?$""",
    re.VERBOSE,
)


def _split_terms(expr: str):
    s = expr.replace(" ", "").replace("**", "^")
    if not s:
        raise GeneratorError("empty generator expression")
    if s[0] not in "+-":
        s = "+" + s
    return re.findall(r"[+-][^+-]+", s), s


def parse_generator(expr: str, name: Optional[str] = None) -> Generator:
    """Build a generator from a linear combination of atoms.

    Atoms: ``1``, ``u``, ``u^k`` (k a nonnegative integer), ``u*log(u)``,
    ``log(u)`` and ``sqrt(u)``; coefficients are decimals or fractions written
    before the atom, e.g. ``"u^2 - 2*u + 1"`` or ``"u*log(u) - log(u)"``.
    Derivatives are exact closed forms.
    """
    terms, joined = _split_terms(expr)
    if "".join(terms) != joined:
        raise GeneratorError(f"cannot parse generator expression {expr!r}")
    poly: dict[int, Fraction] = {}
    c_xlog = c_log = c_sqrt = Fraction(0)
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        m = _TERM.match(term[1:])
        if not m or (m.group("coef") is None and m.group("atom") is None):
            raise GeneratorError(f"unrecognised term {term!r} in {expr!r}")
        coef = sign * (Fraction(m.group("coef")) if m.group("coef") else Fraction(1))
        atom = m.group("atom")
        if atom is None:
            poly[0] = poly.get(0, 0) + coef
        elif "log" in atom and atom.startswith("u"):
            c_xlog += coef
        elif atom == "log(u)":
            c_log += coef
        elif atom == "sqrt(u)":
            c_sqrt += coef
        else:
            p = int(m.group("pow")) if m.group("pow") else 1
            poly[p] = poly.get(p, 0) + coef
    poly = {p: c for p, c in poly.items() if c != 0}
    pf = {p: float(c) for p, c in poly.items()}
    fx, fl, fs = float(c_xlog), float(c_log), float(c_sqrt)
    half = Fraction(1, 2)

    def func(u):
        out = fl * np.log(u) + fs * np.sqrt(u) + fx * _xlogx(u)
        for p, c in pf.items():
            out = out + c * u**p
        return out

    def deriv(k, u):
        out = fx * _xlogx_d(k, u) + fl * _log_d(k, u) + fs * float(falling(half, k)) * u ** (0.5 - k)
        for p, c in pf.items():
            if p >= k:
                out = out + c * falling(p, k) * u ** (p - k)
        return out

    def exact(k):
        out = c_xlog * _xlogx_exact(k) + c_sqrt * falling(half, k)
        out += c_log * _log_exact(k)
        for p, c in poly.items():
            out += c * falling(p, k)
        return Fraction(out)

    # boundary limits
    top = max((p for p in poly if p >= 2), default=None)
    if c_xlog != 0:
        slope = math.copysign(math.inf, fx)
    elif top is not None:
        slope = math.copysign(math.inf, pf[top])
    else:
        slope = pf.get(1, 0.0)
    if c_log != 0:
        at_zero = -math.copysign(math.inf, fl)
    else:
        at_zero = pf.get(0, 0.0)
    return Generator(
        name=name or expr.strip(),
        func=func,
        derivative=deriv,
        limit_at_zero=at_zero,
        slope_at_infinity=slope,
        exact_at_one=exact,
    )


# ----------------------------------------------------------------------------
# coefficients and validation


@dataclass(frozen=True)
class PinskerCoefficients:
    """(c2, w2, c4, w4) from derivatives of f at 1.

    ``w4`` raises :class:`UndefinedWeightError` when it is undefined, i.e. when
    the denominator 3 f''''(1) - 4 f'''(1)^2 / f''(1) vanishes.
    """

    c2: Number
    w2: Number
    c4: Number
    w4_value: Optional[Number] = None

    @property
    def w4_defined(self) -> bool:
        return self.w4_value is not None

    @property
    def w4(self) -> Number:
        if self.w4_value is None:
            raise UndefinedWeightError("w4 is undefined because c4 = 0")
        return self.w4_value

    @property
    def exact(self) -> bool:
        vals = (self.c2, self.w2, self.c4, self.w4_value)
        return all(isinstance(v, Fraction) for v in vals if v is not None)

    def as_tuple(self):
        return (self.c2, self.w2, self.c4, self.w4_value)


def coefficients(f: Generator) -> PinskerCoefficients:
    """Best-possible second- and fourth-order Pinsker coefficients of f."""
    try:
        f2, f3, f4, f5 = (f.deriv_at_one(k) for k in (2, 3, 4, 5))
    except DerivativeOrderError as exc:
        raise DegenerateGeneratorError(f"{f.name}: needs derivatives through order 5 at 1") from exc
    if not f2 > 0:
        raise DegenerateGeneratorError(f"{f.name}: f''(1) = {f2} is not positive")
    c2 = f2 / 2
    w2 = 1 + f3 / (3 * f2)
    den = 3 * f4 - 4 * f3**2 / f2
    c4 = den / 72
    if isinstance(den, Fraction):
        zero = den == 0
    else:
        zero = abs(den) <= 1e-12 * (abs(3 * f4) + abs(4 * f3**2 / f2))
    w4 = None if zero else 1 + (9 * f5 - 20 * f3**3 / f2**2) / (45 * den)
    return PinskerCoefficients(c2, w2, c4, w4)


def rel_info_alpha_coefficients(alpha) -> PinskerCoefficients:
    """Closed forms (1/2, (a+1)/3, (a+1)(2-a)/72, (17+11a)/45) for D_(a).

    At a in {-1, 2} the fourth-order coefficient vanishes; w4 is then the
    continuous extension (17 + 11a)/45 of the closed form.
    """
    a = as_fraction(alpha)
    return PinskerCoefficients(Fraction(1, 2), (a + 1) / 3, (a + 1) * (2 - a) / 72, (17 + 11 * a) / 45)


@dataclass(frozen=True)
class DerivativeReport:
    name: str
    tol: float
    max_deviation: dict
    passed: bool
    failures: tuple


def validate_derivatives(f: Generator, grid=None, tol: float = 1e-6, max_order: int = ORDER_LIMIT) -> DerivativeReport:
    """Compare oracle order k with a central difference of order k - 1.

    Deviations use the mixed scale |a - b| / (1 + |b|).
    """
    grid = DEFAULT_VALIDATION_GRID if grid is None else _arr(grid)
    top = int(min(f.order, max_order))
    devs = {}
    for k in range(1, top + 1):
        h = 1e-3 * grid
        lower = lambda x: f.deriv(k - 1, x)
        fd = (-lower(grid + 2 * h) + 8 * lower(grid + h) - 8 * lower(grid - h) + lower(grid - 2 * h)) / (12 * h)
        oracle = f.deriv(k, grid)
        devs[k] = float(np.max(np.abs(oracle - fd) / (1.0 + np.abs(fd))))
    failures = tuple(k for k, d in devs.items() if not d <= tol)
    return DerivativeReport(f.name, tol, devs, not failures, failures)


def convexity_check(f: Generator, grid=None) -> bool:
    """f'' >= 0 on the grid (vacuous for generators without derivatives)."""
    if f.order < 2:
        return f.convexity_attested
    grid = DEFAULT_VALIDATION_GRID if grid is None else _arr(grid)
    return bool(np.all(f.deriv(2, grid) >= 0))
