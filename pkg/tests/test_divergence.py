import math

import numpy as np
import pytest

from pinskerf import divergence as dv
from pinskerf.dist import DimensionError, Distribution, variational_distance
from pinskerf.generators import builtin, reverse, tilde

from conftest import random_distribution

P0 = Distribution(np.array([0.5, 0.5]))
Q0 = Distribution(np.array([0.75, 0.25]))


def test_kl_example():
    assert dv.kl(P0, Q0) == pytest.approx(0.5 * math.log(4 / 3), abs=1e-15)
    assert dv.kl(P0, Q0) == pytest.approx(0.143841, abs=1e-6)


def test_identical_pairs_are_zero(rng):
    for name in ("kl", "reverse_kl", "chi2", "hellinger", "triangular", "jeffreys", "capacitory"):
        P = random_distribution(rng, 5)
        assert dv.f_divergence(builtin(name), P, P) == pytest.approx(0, abs=1e-15)


def test_zero_mass_conventions():
    one = Distribution(np.array([1.0, 0.0]))
    assert dv.kl(P0, one) == math.inf
    assert dv.kl(one, P0) == pytest.approx(math.log(2))
    assert dv.chi2(Distribution(np.array([0.5, 0.5, 0.0])), Distribution(np.array([0.5, 0.5, 0.0]))) == 0
    # p = 0 < q contributes q times the slope at infinity
    assert dv.triangular(one, Distribution(np.array([0.0, 1.0]))) == pytest.approx(2.0)
    assert dv.hellinger2(one, Distribution(np.array([0.0, 1.0]))) == pytest.approx(1.0)


def test_chi2_example():
    assert dv.chi2(P0, Q0) == pytest.approx(0.25, abs=1e-15)
    assert variational_distance(P0, Q0) ** 2 == pytest.approx(0.25)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        dv.kl(P0, Distribution(np.array([1.0])))


class TestRenyi:
    def test_examples(self):
        assert dv.renyi(0.5, P0, P0) == pytest.approx(0, abs=1e-15)
        half = -2 * math.log(math.sqrt(3 / 8) + math.sqrt(1 / 8))
        assert dv.renyi(0.5, P0, Q0) == pytest.approx(half, rel=1e-12)
        assert dv.renyi(0.5, P0, Q0) == pytest.approx(0.0693365, abs=1e-7)
        assert dv.renyi(2, P0, Q0) == pytest.approx(math.log(4 / 3), rel=1e-12)

    def test_domain(self):
        for a in (0, -1, 1):
            with pytest.raises(ValueError):
                dv.renyi(a, P0, Q0)

    def test_direct_formula_agrees(self, pair_sampler):
        for P, Q in pair_sampler(500):
            for a in (0.3, 0.5, 1.7, 3.0):
                assert dv.renyi(a, P, Q) == pytest.approx(dv.renyi_direct(a, P, Q), rel=1e-9, abs=1e-12)


class TestRandomPairIdentities:
    def test_reverse_swaps_arguments(self, pair_sampler):
        gens = [builtin(n) for n in ("kl", "hellinger", "capacitory", "triangular")] + [builtin("rel_info_alpha", alpha=1.5)]
        for P, Q in pair_sampler(10_000 // len(gens) + 1):
            for f in gens:
                a = dv.f_divergence(reverse(f), P, Q)
                b = dv.f_divergence(f, Q, P)
                assert abs(a - b) <= 1e-12 * max(1.0, abs(b))

    def test_tilde_same_divergence(self, pair_sampler):
        f = builtin("rel_info_alpha", alpha=-0.5)
        ft = tilde(f)
        for P, Q in pair_sampler(2000):
            assert abs(dv.f_divergence(ft, P, Q) - dv.f_divergence(f, P, Q)) <= 1e-12 * max(1.0, dv.f_divergence(f, P, Q))

    def test_named_relations(self, pair_sampler):
        for P, Q in pair_sampler(2000):
            chi = dv.chi2(P, Q)
            assert abs(chi - 2 * dv.rel_info(2, P, Q)) <= 1e-12 * max(1.0, chi)
            h = dv.hellinger2(P, Q)
            assert abs(4 * h - dv.rel_info(0.5, P, Q)) <= 1e-12
            assert dv.jeffreys(P, Q) == pytest.approx(dv.kl(P, Q) + dv.kl(Q, P), rel=1e-12, abs=1e-15)
            assert dv.capacitory(P, Q) == pytest.approx(
                dv.f_divergence(builtin("capacitory"), P, Q), rel=1e-12, abs=1e-12)
            t = dv.f_divergence(builtin("tsallis", alpha=0.3), P, Q)
            assert t == pytest.approx(0.3 * dv.rel_info(0.7, P, Q), rel=1e-12, abs=1e-15)
            cr = dv.f_divergence(builtin("cressie_read", lam=0.6), P, Q)
            assert cr == pytest.approx(dv.rel_info(-0.6, P, Q), rel=1e-12, abs=1e-15)

    def test_alpha_to_zero_is_kl(self, pair_sampler):
        for P, Q in pair_sampler(1000, floor=1e-3):
            k = dv.kl(P, Q)
            assert abs(dv.rel_info(0.001, P, Q) - k) <= 1e-2 * k

    def test_pinsker_1e5_pairs(self, rng):
        n = 100_000
        k = 4
        p = rng.dirichlet(np.ones(k), size=n)
        q = rng.dirichlet(np.ones(k), size=n)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(p > 0, p * np.log(p / q), 0.0)
        kl = terms.sum(axis=1)
        V = np.abs(p - q).sum(axis=1)
        assert np.min(kl - 0.5 * V**2) >= -1e-12
        # the vectorized pass agrees with the library on a subsample
        for i in range(0, n, 5000):
            assert dv.kl(Distribution(p[i]), Distribution(q[i])) == pytest.approx(kl[i], rel=1e-12)

    def test_capacitory_precise_bound(self, rng):
        for _ in range(10_000):
            a, b = rng.random(2)
            P, Q = Distribution(np.array([a, 1 - a])), Distribution(np.array([b, 1 - b]))
            v = variational_distance(P, Q)
            assert dv.capacitory(P, Q) - dv.capacitory_lower_bound(v) >= -1e-9


class TestHolder:
    def test_constant_g(self):
        rep = dv.holder_bound(builtin("kl"), dv.affine_weight(1, 0), 2, np.ones(2), P0, Q0)
        assert rep.lhs == 0 and rep.holds

    def test_chi2_equality_case(self):
        rep = dv.holder_bound(builtin("chi2"), dv.affine_weight(1, 0), 2, np.array([1.0, 0.0]), P0, Q0, a=0.5)
        # |E_Q g - E_P g|^2 = 1/16 and the bound is V^2/4 <= chi^2/4
        assert rep.lhs == pytest.approx(1 / 16)
        assert rep.sup_factor == pytest.approx(1.0)
        vp = dv.v_power_bound(builtin("chi2"), dv.affine_weight(1, 0), 2, P0, Q0)
        assert vp.lhs == pytest.approx(0.25) and vp.rhs == pytest.approx(0.25) and vp.holds

    def test_kl_with_affine_weight(self):
        rep = dv.v_power_bound(builtin("kl"), dv.mixture_weight(1 / 3), 2, P0, Q0)
        assert rep.holds
        assert rep.lhs == pytest.approx(0.25)
        assert rep.sup_factor <= 2 + 1e-9
        assert rep.rhs <= 2 * dv.kl(P0, Q0) + 1e-12
        assert 2 * dv.kl(P0, Q0) == pytest.approx(0.2877, abs=1e-4)

    def test_triangular_sup_is_two(self, pair_sampler):
        for P, Q in pair_sampler(200):
            rep = dv.v_power_bound(builtin("triangular"), dv.mixture_weight(0.5), 2, P, Q)
            assert rep.holds
            assert rep.sup_factor == pytest.approx(2.0, rel=1e-9) or rep.grid_points == 0

    def test_triangular_nu_needs_normalized_weight(self, pair_sampler):
        P, Q = pair_sampler(1)[0]
        with pytest.raises(dv.PreconditionError, match="expected 1"):
            dv.v_power_bound(builtin("triangular_nu", nu=2), dv.affine_weight(1, 1), 4, P, Q)

    def test_triangular_nu_with_mixture_weight(self, pair_sampler):
        for nu in (2, 3):
            for P, Q in pair_sampler(100):
                rep = dv.v_power_bound(builtin("triangular_nu", nu=nu), dv.mixture_weight(0.5), 2 * nu, P, Q)
                assert rep.holds
                d = dv.triangular_nu(nu, P, Q)
                assert d >= 2.0 ** (1 - 2 * nu) * variational_distance(P, Q) ** (2 * nu) - 1e-12

    def test_kraft_case(self, pair_sampler):
        for P, Q in pair_sampler(300):
            k = dv.kraft_weight(P, Q)
            rep = dv.v_power_bound(builtin("hellinger"), k, 2, P, Q)
            assert rep.holds
            h = dv.hellinger2(P, Q)
            assert 4 * h * (2 - h) >= variational_distance(P, Q) ** 2 - 1e-12

    def test_holder_random_g(self, pair_sampler, rng):
        f = builtin("kl")
        for P, Q in pair_sampler(300):
            g = rng.normal(size=P.weights.size)
            rep = dv.holder_bound(f, dv.mixture_weight(2 / 3), 2, g, P, Q)
            assert rep.holds and rep.sup_factor >= 0 and rep.moment_factor >= 0

    def test_negative_weight_rejected(self):
        with pytest.raises(dv.PreconditionError):
            dv.holder_bound(builtin("kl"), dv.affine_weight(2, -1), 2, np.array([1.0, 0.0]), P0, Q0)


def test_delta_nu_literal_bound_has_counterexamples():
    # the unnormalized claim fails already for far-apart binary pairs
    P = Distribution(np.array([1.0, 0.0]))
    Q = Distribution(np.array([0.0, 1.0]))
    assert dv.triangular_nu(2, P, Q) == pytest.approx(2.0)
    assert variational_distance(P, Q) ** 4 == 16.0


def test_rows_match_single_pairs(pair_sampler):
    pairs = pair_sampler(500) + [
        (Distribution(np.array([1.0, 0.0])), Distribution(np.array([0.5, 0.5]))),
        (Distribution(np.array([0.5, 0.5])), Distribution(np.array([1.0, 0.0]))),
        (Distribution(np.array([0.2, 0.0, 0.8])), Distribution(np.array([0.2, 0.0, 0.8]))),
    ]
    p, q = dv.stack_pairs(pairs)
    for name in ("kl", "jeffreys", "hellinger", "triangular"):
        f = builtin(name)
        rows = dv.f_divergence_rows(f, p, q)
        single = np.array([dv.f_divergence(f, P, Q) for P, Q in pairs])
        np.testing.assert_allclose(rows, single, rtol=1e-12, atol=1e-15)
    with pytest.raises(ValueError):
        dv.f_divergence_rows(builtin("kl"), p, q[:, :1])
