"""Exact rational polynomials and nonnegativity certificates.

Everything here runs on :class:`fractions.Fraction`; no floating point enters
a certificate.  ``eval_real`` exists only for plotting and sanity checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact polynomial arithmetic")
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    """``num/den``, or just ``num`` for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalPoly:
    """Univariate polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self.var = var

    # construction -----------------------------------------------------------

    @classmethod
    def const(cls, a, var="x") -> "RationalPoly":
        return cls([a], var)

    @classmethod
    def monomial(cls, k: int, a=1, var="x") -> "RationalPoly":
        return cls([0] * k + [a], var)

    @classmethod
    def linear(cls, c0, c1, var="x") -> "RationalPoly":
        """c0 + c1 x."""
        return cls([c0, c1], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var="x") -> "RationalPoly":
        p = cls.const(1, var)
        for r in roots:
            p = p * cls([-_frac(r), 1], var)
        return p

    # basic properties --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    # arithmetic --------------------------------------------------------------

    def _lift(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.const(other, self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return RationalPoly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly([-a for a in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RationalPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = RationalPoly.const(1, self.var), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def quo_rem(self, divisor: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        """(Q, R) with self = Q * divisor + R and deg R < deg divisor."""
        divisor = self._lift(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = divisor.degree
        lead = divisor.leading
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quo[k - dq] = c
            if c:
                for j, b in enumerate(divisor.coeffs):
                    rem[k - dq + j] -= c * b
        return RationalPoly(quo, self.var), RationalPoly(rem[:dq], self.var)

    def __floordiv__(self, other):
        return self.quo_rem(self._lift(other))[0]

    def __mod__(self, other):
        return self.quo_rem(self._lift(other))[1]

    def derivative(self, k: int = 1) -> "RationalPoly":
        c = list(self.coeffs)
        for _ in range(k):
            c = [i * a for i, a in enumerate(c)][1:]
        return RationalPoly(c, self.var)

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        """self(inner(x)), by Horner."""
        out = RationalPoly([], inner.var)
        for a in reversed(self.coeffs):
            out = out * inner + a
        return out

    def eval_rational(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_real(self, x: float) -> float:
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * x + float(a)
        return acc

    __call__ = eval_rational

    # comparison and display ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(other)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def coefficient_strings(self) -> list[str]:
        return [fraction_str(a) for a in self.coeffs] or ["0"]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            mag = fraction_str(abs(a))
            sign = "-" if a < 0 else "+"
            if k == 0:
                body = mag
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if mag == "1" else f"{mag}*{mono}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self) -> str:
        return f"RationalPoly([{', '.join(self.coefficient_strings())}], var={self.var!r})"


def add(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    return a + b


def sub(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    return a - b


def mul(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    return a * b


def quo_rem(a: RationalPoly, b: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    return a.quo_rem(b)


def derivative(a: RationalPoly, k: int = 1) -> RationalPoly:
    return a.derivative(k)


def eval_rational(a: RationalPoly, x) -> Fraction:
    return a.eval_rational(x)


def eval_real(a: RationalPoly, x: float) -> float:
    return a.eval_real(x)


# ----------------------------------------------------------------------------
# quartic certificate


@dataclass(frozen=True)
class QuarticCertificate:
    """T(u) = a4 (u + shift1)^4 + a2 (u + shift2)^2 + a0 with a4, a2, a0 >= 0."""

    a4: Fraction
    a2: Fraction
    a0: Fraction
    shift1: Fraction
    shift2: Fraction

    def expand(self, var: str = "u") -> RationalPoly:
        s1 = RationalPoly([self.shift1, 1], var)
        s2 = RationalPoly([self.shift2, 1], var)
        return self.a4 * s1**4 + self.a2 * s2**2 + RationalPoly.const(self.a0, var)

    def as_strings(self) -> dict:
        return {k: fraction_str(getattr(self, k)) for k in ("a4", "a2", "a0", "shift1", "shift2")}


@dataclass(frozen=True)
class Inconclusive:
    """The sufficient condition did not apply; T may still be nonnegative."""

    reason: str
    values: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


def quartic_parts(T: RationalPoly) -> dict:
    """a4, a2, a0 and both shifts, as far as they are defined."""
    if T.degree != 4:
        raise ValueError(f"expected a quartic, got degree {T.degree}")
    c0, c1, c2, c3, c4 = (T.coeff(k) for k in range(5))
    disc = 8 * c2 * c4 - 3 * c3**2
    out = {"a4": c4, "a2": disc / (8 * c4), "shift1": c3 / (4 * c4), "disc": disc}
    if disc != 0:
        num = (
            2048 * c0 * c4**4 * c2
            - 768 * c0 * c4**3 * c3**2
            - 8 * c3**4 * c2 * c4
            + c3**6
            + 64 * c3**3 * c1 * c4**2
            - 512 * c1**2 * c4**4
        )
        out["a0"] = num / (256 * c4**3 * disc)
        out["shift2"] = (16 * c1 * c4**2 - c3**3) / (4 * c4 * disc)
    return out


def quartic_certificate(T: RationalPoly) -> Union[QuarticCertificate, Inconclusive]:
    """Certify T >= 0 on the whole line by completing two squares.

    Returns :class:`Inconclusive` when 8 c2 c4 - 3 c3^2 <= 0 or some
    a-coefficient is negative.
    """
    if T.degree != 4:
        raise ValueError(f"expected a quartic, got degree {T.degree}")
    parts = quartic_parts(T)
    shown = {k: fraction_str(v) for k, v in parts.items()}
    if parts["disc"] <= 0:
        return Inconclusive("8 c2 c4 - 3 c3^2 <= 0, so a0 is undefined or a2 <= 0", shown)
    if parts["a4"] < 0 or parts["a2"] < 0 or parts["a0"] < 0:
        return Inconclusive("a negative coefficient in the two-square form", shown)
    return QuarticCertificate(parts["a4"], parts["a2"], parts["a0"], parts["shift1"], parts["shift2"])


def verify_quartic_identity(T: RationalPoly, cert) -> bool:
    """Exact coefficient comparison of the expanded certificate with T."""
    if not isinstance(cert, QuarticCertificate):
        return False
    return cert.expand(T.var).coeffs == T.coeffs


# ----------------------------------------------------------------------------
# sixth derivative identity for the KL fourth-order bound


def _log_derivative_coeff(j: int) -> Fraction:
    """d^j/du^j log u = coeff * u^-j for j >= 1."""
    return Fraction((-1) ** (j - 1) * math.factorial(j - 1))


def log_times_poly_scaled_derivative(P: RationalPoly, n: int) -> RationalPoly:
    """u^n (P(u) log u)^(n) as a polynomial, valid when deg P < n.

    The log term itself is P^(n) log u, which vanishes for deg P < n.
    """
    if P.degree >= n:
        raise ValueError("the log term survives; need deg P < n")
    u = RationalPoly.monomial(1, var=P.var)
    out = RationalPoly([], P.var)
    for k in range(n):
        j = n - k
        out = out + math.comb(n, k) * _log_derivative_coeff(j) * P.derivative(k) * u**k
    return out


def log_times_poly_derivative_at_one(P: RationalPoly, n: int) -> Fraction:
    """(P(u) log u)^(n) at u = 1, exactly."""
    total = Fraction(0)
    for k in range(n):
        total += math.comb(n, k) * _log_derivative_coeff(n - k) * P.derivative(k).eval_rational(1)
    return total


# ascending: 24565 - 34102 u + 44268 u^2 - 50960 u^3 + 43904 u^4
KL_QUARTIC = (24565, -34102, 44268, -50960, 43904)
KL_SIXTH_SCALE = Fraction(8, 91125)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    passed: bool
    checks: dict
    values: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        out += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in self.checks.items()]
        out += [f"  {k} = {v}" for k, v in self.values.items()]
        return out


def kl_fourth_order_g() -> tuple[RationalPoly, RationalPoly]:
    """g(u) = poly(u) + logpart(u) log u for the KL fourth-order bound.

    With f~(u) = u - 1 - log u, w2 = 1/3, w4 = 17/45, c2 = 1/2, c4 = 1/36:
    g = f~ A B^3 - c2 (u-1)^2 B^3 - c4 (u-1)^4 A.
    """
    x = RationalPoly([-1, 1], "u")
    A = 1 + Fraction(2, 3) * x
    B = 1 + Fraction(28, 45) * x
    AB3 = A * B**3
    poly = x * AB3 - Fraction(1, 2) * x**2 * B**3 - Fraction(1, 36) * x**4 * A
    return poly, -AB3


def kl_sixth_identity() -> IdentityReport:
    """u^6 g^(6)(u) * 91125/8 equals the KL quartic, which has a certificate."""
    poly, logpart = kl_fourth_order_g()
    scaled = -log_times_poly_scaled_derivative(-logpart, 6) + poly.derivative(6) * RationalPoly.monomial(6, var="u")
    T = RationalPoly(KL_QUARTIC, "u")
    quartic = scaled * (1 / KL_SIXTH_SCALE)
    at_one = [poly.derivative(k).eval_rational(1) - log_times_poly_derivative_at_one(-logpart, k) for k in range(6)]
    cert = quartic_certificate(T)
    checks = {
        "sixth derivative matches quartic": quartic.coeffs == T.coeffs,
        "g^(k)(1) = 0 for k = 0..5": all(v == 0 for v in at_one),
        "quartic certificate found": isinstance(cert, QuarticCertificate),
        "certificate expands to quartic": verify_quartic_identity(T, cert),
    }
    values = {"quartic": ", ".join(quartic.coefficient_strings()),
              "derivatives_at_one": ", ".join(fraction_str(v) for v in at_one)}
    if isinstance(cert, QuarticCertificate):
        values.update(cert.as_strings())
    return IdentityReport("kl-sixth", all(checks.values()), checks, values)


# ----------------------------------------------------------------------------
# the D_(alpha) fourth-order bracket


def _a(coeffs) -> RationalPoly:
    return RationalPoly(coeffs, "alpha")


ALPHA = _a([0, 1])


def alpha_fourth_bracket_coeffs() -> list[RationalPoly]:
    """Coefficients c0(alpha) .. c4(alpha) of the bracket, as polynomials in alpha."""
    a = ALPHA
    p17 = 11 * a + 17
    m28 = 11 * a - 28
    c0 = -(a - 5) * (a - 3) * (a - 4) * p17**3
    c1 = 2 * (a - 3) * (a - 4) * (22 * a**2 - 28 * a - 59) * p17**2
    c2 = -6 * p17 * m28 * (a - 3) * (a + 2) * (11 * a**2 - 11 * a - 31)
    c3 = 2 * (a + 3) * (a + 2) * (22 * a**2 - 16 * a - 65) * m28**2
    c4 = -(a + 4) * (a + 3) * (a + 2) * m28**3
    return [c0, c1, c2, c3, c4]


def alpha_fourth_bracket(alpha) -> RationalPoly:
    """The quartic in u whose positivity gives the D_(alpha) fourth-order bound.

    The full left side equals (alpha+1)(2-alpha) u^-4 / 273375 times this.
    """
    alpha = _frac(alpha)
    return RationalPoly([c.eval_rational(alpha) for c in alpha_fourth_bracket_coeffs()], "u")


ALPHA_BRACKET_SCALE = Fraction(1, 273375)

P10_COEFFS = (
    41092635382468,
    113143847999692,
    94728169651149,
    -4381425810042,
    -43681339670379,
    -14799467270700,
    4844633801556,
    3066837388032,
    54551858544,
    -168248775872,
    -20792743232,
)


def p10() -> RationalPoly:
    return _a(P10_COEFFS)


TWO_MINUS = _a([2, -1])
ONE_PLUS = _a([1, 1])


def p10_decomposition_terms() -> list[tuple[RationalPoly, int, int]]:
    """Five (coefficient, m, n) terms summing to P10; m, n are powers of (2-a), (a+1)."""
    return [
        (_a([300831606416, 189041519104, 20792743232]), 3, 5),
        (_a([3335882569236, 1295259115248]), 2, 4),
        (_a([7953881034231, 1471491213228]), 1, 3),
        (_a([1343948812407]), 1, 2),
        (_a([6746792560920, 11252369540556, 4661891728632]), 0, 0),
    ]


def interval_factor(m: int, n: int) -> RationalPoly:
    return TWO_MINUS**m * ONE_PLUS**n


def nonneg_on_interval(P: RationalPoly, lo=-1, hi=2) -> Optional[bool]:
    """Exact sign decision for degree <= 2 on [lo, hi]; None for higher degree."""
    lo, hi = _frac(lo), _frac(hi)
    if P.degree > 2:
        return None
    if P.degree <= 0:
        return P.coeff(0) >= 0
    ends = P.eval_rational(lo) >= 0 and P.eval_rational(hi) >= 0
    if P.degree == 1 or not ends:
        return ends
    # quadratic: the interior minimum sits at the vertex when it opens upward
    a, b = P.coeff(2), P.coeff(1)
    if a < 0:
        return True
    vertex = -b / (2 * a)
    if lo < vertex < hi:
        return P.eval_rational(vertex) >= 0
    return True


def verify_p10_identity() -> IdentityReport:
    """Exact expansion of the five-term decomposition plus a sign check per term."""
    terms = p10_decomposition_terms()
    total = sum((c * interval_factor(m, n) for c, m, n in terms), _a([]))
    checks = {"expansion equals P10": total == p10()}
    for i, (c, m, n) in enumerate(terms, 1):
        checks[f"term {i} coefficient >= 0 on [-1, 2]"] = bool(nonneg_on_interval(c))
    values = {
        "P10": ", ".join(p10().coefficient_strings()),
        "constant term": fraction_str(p10().coeff(0)),
    }
    return IdentityReport("p10", all(checks.values()), checks, values)


def alpha_appendix_chain() -> IdentityReport:
    """The identities behind positivity of the D_(alpha) bracket on [-1, 2].

    (i) a2 closed form, (ii) the cubic identity, (iii) a0 * 32 a2 (a+4)^4 = 9 P10,
    (iv) P10 coefficients, plus the sign facts that finish the argument.
    """
    a = ALPHA
    c0, c1, c2, c3, c4 = alpha_fourth_bracket_coeffs()
    cubic = _a([-4207, -4257, 552, 980])
    disc = 8 * c2 * c4 - 3 * c3**2
    # a2 = disc / (8 c4) against (9/2) cubic (a+2)(11a-28)/(a+4), cross-multiplied
    a2_ok = 2 * (a + 4) * disc == 72 * c4 * cubic * (a + 2) * (11 * a - 28)
    cubic_ok = cubic == -(980 * a + 1532) * TWO_MINUS * ONE_PLUS - (1143 + 765 * a)
    num = (
        2048 * c0 * c4**4 * c2
        - 768 * c0 * c4**3 * c3**2
        - 8 * c3**4 * c2 * c4
        + c3**6
        + 64 * c3**3 * c1 * c4**2
        - 512 * c1**2 * c4**4
    )
    # a0 = num / (256 c4^3 disc) and a2 = disc / (8 c4), so 32 a0 a2 = num / (64 c4^4)
    lhs = num * (a + 4) ** 4
    q, r = lhs.quo_rem(576 * c4**4)
    a0_ok = r.is_zero()
    p10_ok = a0_ok and q == p10()
    checks = {
        "(i) a2 closed form": a2_ok,
        "(ii) cubic identity": cubic_ok,
        "(iii) a0 * 32 a2 (a+4)^4 = 9 P10": a0_ok and lhs == 576 * c4**4 * p10(),
        "(iv) P10 coefficients": p10_ok,
        "c4 factor (a+4)(a+3)(a+2)(28-11a) >= 0 on [-1, 2]": _positive_linear_factors(
            [a + 4, a + 3, a + 2, 28 - 11 * a]),
        "cubic < 0 on [-1, 2]": _positive_linear_factors([980 * a + 1532, 1143 + 765 * a], strict=True),
        "a2 sign factors (a+2)(28-11a)/(a+4) > 0": _positive_linear_factors([a + 2, 28 - 11 * a, a + 4], strict=True),
        "P10 >= 0 via decomposition": verify_p10_identity().passed,
    }
    values = {"cubic": str(cubic), "P10 constant": fraction_str(p10().coeff(0))}
    return IdentityReport("alpha-chain", all(checks.values()), checks, values)


def _positive_linear_factors(factors: list[RationalPoly], lo=-1, hi=2, strict=False) -> bool:
    ok = True
    for f in factors:
        ends = (f.eval_rational(lo), f.eval_rational(hi))
        ok &= all(e > 0 if strict else e >= 0 for e in ends) and f.degree <= 1
    return ok


# ----------------------------------------------------------------------------
# division search


@dataclass(frozen=True)
class PositivityDecomposition:
    """P = sum coeff * (2-a)^m (a+1)^n + residual, every piece nonnegative."""

    terms: tuple[tuple[RationalPoly, int, int], ...]
    residual: RationalPoly
    first_divisor: Optional[tuple[int, int]] = None

    def expand(self) -> RationalPoly:
        out = self.residual
        for c, m, n in self.terms:
            out = out + c * interval_factor(m, n)
        return out


@dataclass(frozen=True)
class SearchFailure:
    reason: str

    def __bool__(self) -> bool:
        return False


SAMPLE_POINTS = tuple(Fraction(-1) + Fraction(3 * i, 32) for i in range(33))
MAX_DEPTH = 6


def _sample_nonneg(P: RationalPoly, points=SAMPLE_POINTS) -> bool:
    return all(P.eval_rational(x) >= 0 for x in points)


def _candidate_divisors(degree: int, max_m: int, max_n: int) -> list[tuple[int, int]]:
    """Divisors (m, n) in search order.

    Total degree deg P - 2 comes first, so the quotient is a quadratic whose
    sign is decided exactly; then larger totals, then smaller ones.  Ties go
    to the larger power of (a+1).
    """
    pairs = [(m, n) for m in range(max_m + 1) for n in range(max_n + 1) if 0 < m + n <= degree]
    target = degree - 2

    def rank(mn):
        d = mn[0] + mn[1]
        band = 0 if d == target else (1 if d > target else 2)
        return (band, d if band == 1 else -d, -mn[1])

    return sorted(pairs, key=rank)


def _exact_factor(P: RationalPoly, max_m: int, max_n: int):
    """(c, m, n) when P = c (2-a)^m (a+1)^n with c > 0."""
    for m in range(min(max_m, P.degree) + 1):
        n = P.degree - m
        if n > max_n:
            continue
        q, r = P.quo_rem(interval_factor(m, n))
        if r.is_zero() and q.degree == 0 and q.coeff(0) > 0:
            return q, m, n
    return None


def _decompose(P: RationalPoly, max_m: int, max_n: int, depth: int):
    """Terms whose coefficients have degree <= 2 and are nonnegative, or None."""
    if P.is_zero():
        return []
    exact = _exact_factor(P, max_m, max_n) if P.degree > 0 else None
    if exact is not None:
        return [exact]
    done = nonneg_on_interval(P)
    if done is not None:
        return [(P, 0, 0)] if done else None
    if depth >= MAX_DEPTH:
        return None
    for m, n in _candidate_divisors(P.degree, max_m, max_n):
        q, r = P.quo_rem(interval_factor(m, n))
        if not (_sample_nonneg(q) and _sample_nonneg(r)):
            continue
        q_terms = _decompose(q, max_m, max_n, depth + 1)
        if q_terms is None:
            continue
        r_terms = _decompose(r, max_m, max_n, depth + 1)
        if r_terms is None:
            continue
        return [(c, mm + m, nn + n) for c, mm, nn in q_terms] + r_terms
    return None


def positivity_division_search(P: RationalPoly, interval=(-1, 2), max_m: int = 8, max_n: int = 8):
    """Certify P >= 0 on [-1, 2] by dividing by products of (2-a) and (a+1).

    Candidates start at total degree deg P - 2; a split is kept when the
    quotient and remainder are both nonnegative at 33 sample points, and the
    pieces are divided again until each has degree <= 2.  Returns a
    :class:`PositivityDecomposition` or :class:`SearchFailure` (which is not a
    disproof).
    """
    if tuple(Fraction(x) for x in interval) != (Fraction(-1), Fraction(2)):
        raise ValueError("only the interval [-1, 2] is supported")
    if max_m > 8 or max_n > 8 or max_m < 0 or max_n < 0:
        raise ValueError("max_m and max_n must lie in 0..8")
    pieces = _decompose(P, max_m, max_n, 0)
    if pieces is None:
        return SearchFailure("no admissible division sequence found")
    terms = tuple((c, m, n) for c, m, n in pieces if (m, n) != (0, 0))
    residual = sum((c for c, m, n in pieces if (m, n) == (0, 0)), RationalPoly([], P.var))
    first = (terms[0][1], terms[0][2]) if terms else None
    dec = PositivityDecomposition(terms, residual, first)
    if dec.expand() != P:
        raise AssertionError("decomposition does not reproduce P")
    return dec
