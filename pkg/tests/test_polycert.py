from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from pinskerf.polycert import (
    ALPHA_BRACKET_SCALE,
    KL_QUARTIC,
    P10_COEFFS,
    Inconclusive,
    PositivityDecomposition,
    QuarticCertificate,
    RationalPoly,
    SearchFailure,
    alpha_appendix_chain,
    alpha_fourth_bracket,
    alpha_fourth_bracket_coeffs,
    derivative,
    interval_factor,
    kl_sixth_identity,
    nonneg_on_interval,
    p10,
    positivity_division_search,
    quartic_certificate,
    quo_rem,
    verify_p10_identity,
    verify_quartic_identity,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
polys = st.lists(fractions, min_size=0, max_size=13).map(RationalPoly)


class TestArithmetic:
    def test_examples(self):
        q, r = quo_rem(RationalPoly([-1, 0, 1]), RationalPoly([-1, 1]))
        assert q == RationalPoly([1, 1]) and r.is_zero()
        assert derivative(RationalPoly([0, 0, 0, 0, 1])) == RationalPoly([0, 0, 0, 4])

    def test_rejects_floats_and_zero_division(self):
        with pytest.raises(TypeError):
            RationalPoly([0.5])
        with pytest.raises(ZeroDivisionError):
            quo_rem(RationalPoly([1, 1]), RationalPoly([]))

    def test_trailing_zeros_trimmed(self):
        p = RationalPoly([1, 2, 0, 0])
        assert p.degree == 1 and p.coeffs == (1, 2)
        assert RationalPoly([]).is_zero()

    @settings(max_examples=1000, deadline=None)
    @given(polys, polys.filter(lambda p: not p.is_zero()))
    def test_quo_rem_roundtrip(self, P, A):
        Q, R = quo_rem(P, A)
        assert Q * A + R == P
        assert R.is_zero() or R.degree < A.degree

    @settings(max_examples=200, deadline=None)
    @given(polys, polys, fractions)
    def test_matches_sympy(self, P, A, x):
        X = sp.Symbol("x")
        sP = sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(P.coeffs))
        sA = sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(A.coeffs))
        prod = sp.Poly(sp.expand(sP * sA), X).all_coeffs()[::-1] if (P * A).coeffs else []
        assert [Fraction(int(c.p), int(c.q)) for c in map(sp.Rational, prod)] == list((P * A).coeffs)
        assert (P + A).eval_rational(x) == P.eval_rational(x) + A.eval_rational(x)
        assert P.derivative(2).eval_rational(x) == Fraction(str(sp.diff(sP, X, 2).subs(X, sp.Rational(x.numerator, x.denominator))))

    def test_eval_real(self):
        assert RationalPoly([1, 1]).eval_real(0.5) == 1.5


class TestQuartic:
    def test_kl_quartic(self):
        T = RationalPoly(KL_QUARTIC, "u")
        cert = quartic_certificate(T)
        assert isinstance(cert, QuarticCertificate)
        assert cert.a4 == 43904
        assert cert.a2 == Fraction(88347, 4)
        assert cert.a0 == Fraction(10273158845617, 723738624)
        assert cert.shift1 == Fraction(-65, 224)
        assert verify_quartic_identity(T, cert)
        assert T.eval_rational(1) == 27675

    def test_inconclusive_cases(self):
        for T in (RationalPoly([1, 0, 0, 0, 1]), RationalPoly([1, 0, -2, 0, 1])):
            r = quartic_certificate(T)
            assert isinstance(r, Inconclusive) and not r
            assert not verify_quartic_identity(T, r)

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            quartic_certificate(RationalPoly([1, 0, 1]))

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=5, max_size=5))
    def test_certificates_imply_nonnegativity(self, c):
        T = RationalPoly(c)
        if T.degree != 4:
            return
        cert = quartic_certificate(T)
        if not isinstance(cert, QuarticCertificate):
            return
        assert verify_quartic_identity(T, cert)
        points = [Fraction(k, 50) for k in range(-500, 501)]
        assert all(T.eval_rational(x) >= 0 for x in points)

    def test_kl_quartic_dense_grid(self):
        T = RationalPoly(KL_QUARTIC, "u")
        assert all(T.eval_rational(Fraction(k, 1000)) >= 0 for k in range(-5000, 5000))


class TestKLSixth:
    def test_report(self):
        rep = kl_sixth_identity()
        assert rep.passed, rep.lines()
        assert rep.values["a0"] == "10273158845617/723738624"
        assert rep.values["derivatives_at_one"] == "0, 0, 0, 0, 0, 0"

    def test_against_sympy(self):
        u = sp.Symbol("u", positive=True)
        A = 1 + sp.Rational(2, 3) * (u - 1)
        B = 1 + sp.Rational(28, 45) * (u - 1)
        g = (u - 1 - sp.log(u)) * A * B**3 - (u - 1) ** 2 * B**3 / 2 - (u - 1) ** 4 * A / 36
        scaled = sp.expand(sp.simplify(sp.diff(g, u, 6) * u**6 * sp.Rational(91125, 8)))
        want = sum(c * u**i for i, c in enumerate(KL_QUARTIC))
        assert sp.simplify(scaled - want) == 0
        assert all(sp.simplify(sp.diff(g, u, k).subs(u, 1)) == 0 for k in range(6))


class TestAlphaBracket:
    def test_leading_coefficients(self):
        assert alpha_fourth_bracket(0).coeff(4) == 526848
        assert alpha_fourth_bracket(1).coeff(4) == 294780
        a = sp.Symbol("a")
        lead = alpha_fourth_bracket_coeffs()[4]
        ref = sp.Poly(sp.expand(-(a + 4) * (3 + a) * (a + 2) * (-28 + 11 * a) ** 3), a).all_coeffs()[::-1]
        assert list(lead.coeffs) == [Fraction(int(c)) for c in ref]

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(3, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(5, 4)])
    def test_fourth_order_condition_factorization(self, alpha):
        # the sixth derivative expression equals (a+1)(2-a) u^-4 / 273375 times the bracket
        u = sp.Symbol("u", positive=True)
        a = sp.Rational(alpha.numerator, alpha.denominator)
        f = (u**a - 1) / (a * (a - 1))
        d = [sp.diff(f, u, k).subs(u, 1) for k in range(6)]
        w2 = 1 + d[3] / (3 * d[2])
        den = 3 * d[4] - 4 * d[3] ** 2 / d[2]
        w4 = 1 + (9 * d[5] - 20 * d[3] ** 3 / d[2] ** 2) / (45 * den)
        ft = f - d[1] * (u - 1)
        A = 1 + (1 - w2) * (u - 1)
        B = 1 + (1 - w4) * (u - 1)
        g = ft * A * B**3 - d[2] / 2 * (u - 1) ** 2 * B**3 - den / 72 * (u - 1) ** 4 * A
        lhs = sp.diff(g, u, 6) / sp.diff(f, u, 2)
        br = alpha_fourth_bracket(alpha)
        bracket = sum(sp.Rational(c.numerator, c.denominator) * u**i for i, c in enumerate(br.coeffs))
        s = ALPHA_BRACKET_SCALE
        rhs = (a + 1) * (2 - a) * sp.Rational(s.numerator, s.denominator) * bracket / u**4
        assert sp.simplify(lhs - rhs) == 0


class TestAppendix:
    def test_p10_identity(self):
        rep = verify_p10_identity()
        assert rep.passed, rep.lines()
        assert p10().coeff(0) == 41092635382468
        assert len(P10_COEFFS) == 11

    def test_p10_first_quotient(self):
        q, r = quo_rem(p10(), interval_factor(3, 5))
        assert q == RationalPoly([300831606416, 189041519104, 20792743232], "alpha")

    def test_p10_term_values(self):
        lin = RationalPoly([3335882569236, 1295259115248])
        assert lin.eval_rational(-1) > 0
        quad = RationalPoly([6746792560920, 11252369540556, 4661891728632])
        assert quad.eval_rational(-1) == 4661891728632 - 11252369540556 + 6746792560920 > 0
        assert nonneg_on_interval(quad)

    def test_chain(self):
        rep = alpha_appendix_chain()
        assert rep.passed, rep.lines()
        assert -(980 * 0 + 1532) * 2 * 1 - 1143 == -4207

    def test_chain_against_sympy(self):
        # a0 from the two-square formulas, computed independently in sympy
        a = sp.Symbol("a")
        cs = [sum(sp.Rational(c.numerator, c.denominator) * a**i for i, c in enumerate(p.coeffs))
              for p in alpha_fourth_bracket_coeffs()]
        c0, c1, c2, c3, c4 = cs
        a2 = (8 * c2 * c4 - 3 * c3**2) / (8 * c4)
        a2_claim = sp.Rational(9, 2) * (980 * a**3 + 552 * a**2 - 4257 * a - 4207) * (a + 2) * (-28 + 11 * a) / (a + 4)
        assert sp.simplify(a2 - a2_claim) == 0
        s1 = c3 / (4 * c4)
        rest = sp.expand(sum(c * a**0 * sp.Symbol("u") ** i for i, c in enumerate(cs))
                         - c4 * (sp.Symbol("u") + s1) ** 4)
        U = sp.Symbol("u")
        # complete the square in what is left of the quartic
        rest = sp.Poly(sp.simplify(rest), U)
        q2, q1, q0 = (rest.coeff_monomial(U**k) for k in (2, 1, 0))
        a0 = sp.simplify(q0 - q1**2 / (4 * q2))
        P = sum(c * a**i for i, c in enumerate(P10_COEFFS))
        assert sp.simplify(a0 * 32 * a2 * (a + 4) ** 4 - 9 * P) == 0


class TestDivisionSearch:
    def test_p10(self):
        dec = positivity_division_search(p10())
        assert isinstance(dec, PositivityDecomposition)
        assert dec.first_divisor == (3, 5)
        assert dec.terms[0][0] == RationalPoly([300831606416, 189041519104, 20792743232], "alpha")
        assert dec.expand() == p10()
        points = [Fraction(-1) + Fraction(3 * k, 3000) for k in range(3001)]
        assert all(p10().eval_rational(x) >= 0 for x in points)
        for c, m, n in dec.terms:
            assert nonneg_on_interval(c) is True or all(c.eval_rational(x) >= 0 for x in points)

    def test_trivial_product(self):
        P = RationalPoly([2, 1, -1], "alpha")
        dec = positivity_division_search(P)
        assert dec.terms == ((RationalPoly([1], "alpha"), 1, 1),)
        assert dec.residual.is_zero()

    def test_negative_somewhere_fails(self):
        r = positivity_division_search(RationalPoly([-5, 0, 1]))
        assert isinstance(r, SearchFailure) and not r

    def test_random_products_decompose(self):
        rng_terms = [(1, 2, 3), (4, 0, 1), (7, 3, 0)]
        P = sum((c * interval_factor(m, n) for c, m, n in rng_terms), RationalPoly([1]))
        dec = positivity_division_search(P)
        assert isinstance(dec, PositivityDecomposition)
        assert dec.expand() == P
        points = [Fraction(-1) + Fraction(3 * k, 600) for k in range(601)]
        assert all(dec.expand().eval_rational(x) >= 0 for x in points)

    def test_parameter_limits(self):
        with pytest.raises(ValueError):
            positivity_division_search(p10(), max_m=9)
        with pytest.raises(ValueError):
            positivity_division_search(p10(), interval=(0, 1))
