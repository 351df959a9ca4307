import math

import numpy as np
import pytest
from scipy import integrate

from pyErfSparse import common, regularizers
from pyErfSparse.penalty import Penalty, RegularizerSpec

# === ERF penalty ===


def _brute_prox(v, mu, penalty, points=200001):
    """Minimum of mu * penalty(x) + (x - v)^2 / 2 over a grid of [0, |v|]."""
    t = abs(v)
    x = np.linspace(0.0, t, points)
    f = mu * penalty(x) + 0.5 * (x - t) ** 2
    return float(f.min())


def _erf_obj(x, v, mu, sigma):
    return mu * regularizers.erf_phi(x, sigma) + 0.5 * (x - v) ** 2


def test_erf_phi_values():
    assert regularizers.erf_phi(0.0, 1.0) == 0.0
    assert isinstance(regularizers.erf_phi(0.5, 1.0), float)
    assert regularizers.erf_phi(-0.5, 1.0) == regularizers.erf_phi(0.5, 1.0)

    cap = 0.5 * 2.0 * math.sqrt(math.pi)
    assert regularizers.erf_phi(100.0, 2.0) == pytest.approx(cap)
    assert np.all(regularizers.erf_phi(np.linspace(-50, 50, 11), 2.0) <= cap)


def test_erf_phi_is_integral():
    for sigma in (0.1, 1.0, 3.0):
        for x in (0.05, 0.7, 4.0):
            ref, _ = integrate.quad(lambda t: math.exp(-t * t / sigma ** 2), 0.0, x, epsabs=1e-14, epsrel=1e-12)
            assert regularizers.erf_phi(x, sigma) == pytest.approx(ref, rel=1e-8)


def test_erf_phi_limits():
    # sigma -> inf behaves like |x|
    assert regularizers.erf_phi(0.3, 1e6) == pytest.approx(0.3, rel=1e-9)
    assert regularizers.erf_objective([1.0, -2.0, 0.0], 1e6) == pytest.approx(3.0, rel=1e-9)


def test_erf_sigma_check():
    for sigma in (0.0, -1.0, np.inf, np.nan):
        with pytest.raises(ValueError):
            regularizers.erf_phi(1.0, sigma)


def test_erf_weight():
    assert regularizers.erf_weight(0.0, 0.5) == 1.0
    assert regularizers.erf_weight(1.0, 1.0) == pytest.approx(math.exp(-1.0))

    w = regularizers.erf_weight(np.array([0.0, 10.0, 1e6]), 0.1)
    assert np.all(w > 0)
    assert w[2] == np.finfo(float).tiny


def test_erf_bounds():
    x = np.linspace(-5, 5, 101)
    for sigma in (0.1, 1.0, 5.0):
        lo, hi = regularizers.erf_bounds(x, sigma)
        phi = regularizers.erf_phi(x, sigma)
        assert np.all(lo <= phi + 1e-12)
        assert np.all(phi <= hi + 1e-12)

    lo, hi = regularizers.erf_bounds(1e-9, 1.0)
    assert lo >= 0 and hi >= lo


def _random_signal(rng, n=50):
    x = rng.standard_normal(n) * rng.uniform(0.1, 10.0)
    x[rng.random(n) < 0.5] = 0.0
    x[0] = rng.uniform(0.5, 2.0)
    return x


def test_erf_objective_l1_limit():
    rng = common.seeded_rng(31)
    for _ in range(100):
        x = _random_signal(rng)
        l1 = np.sum(np.abs(x))
        sigma = 1e3 * np.max(np.abs(x))
        assert abs(regularizers.erf_objective(x, sigma) - l1) / l1 <= 1e-3


def test_erf_objective_l0_limit():
    rng = common.seeded_rng(32)
    for _ in range(100):
        x = _random_signal(rng)
        sigma = 1e-4 * np.min(np.abs(x[x != 0]))
        count = np.count_nonzero(x)
        assert abs(regularizers.erf_objective(x, sigma) / sigma - 0.5 * math.sqrt(math.pi) * count) <= 1e-6


def test_erf_objective_subadditive():
    rng = common.seeded_rng(33)
    for sigma in (0.1, 1.0, 5.0):

        def J(v):
            return regularizers.erf_objective(v, sigma)

        for _ in range(50):
            x = rng.standard_normal(20)
            y = rng.standard_normal(20)
            assert J(x + y) <= J(x) + J(y) + 1e-12

            # disjoint supports add up exactly
            mask = rng.random(20) < 0.5
            xs = np.where(mask, x, 0.0)
            ys = np.where(mask, 0.0, y)
            assert abs(J(xs + ys) - J(xs) - J(ys)) <= 1e-12 * (1 + J(xs + ys))


def test_erf_phi_concave():
    rng = common.seeded_rng(34)
    for sigma in (0.2, 1.0, 4.0):
        s = rng.uniform(0.0, 5.0 * sigma, 500)
        t = rng.uniform(0.0, 5.0 * sigma, 500)
        theta = rng.random(500)
        mid = regularizers.erf_phi(theta * s + (1 - theta) * t, sigma)
        chord = theta * regularizers.erf_phi(s, sigma) + (1 - theta) * regularizers.erf_phi(t, sigma)
        assert np.all(mid >= chord - 1e-12)


def test_erf_weight_is_derivative():
    h = 1e-6
    for sigma in (0.5, 1.0, 3.0):
        t = np.linspace(0.01, 5.0, 200)
        fd = (regularizers.erf_phi(t + h, sigma) - regularizers.erf_phi(t - h, sigma)) / (2 * h)
        assert np.max(np.abs(fd - regularizers.erf_weight(t, sigma))) <= 1e-7


def test_erf_prox_limits():
    v = np.linspace(-5.0, 5.0, 1001)

    # large sigma: soft shrinkage
    soft = regularizers.soft_shrink(v, 1.0)
    assert np.max(np.abs(regularizers.erf_prox_vec(v, 1.0, 1e3) - soft)) <= 1e-3

    # small sigma: hard threshold at mu, away from the jump
    away = np.abs(np.abs(v) - 1.0) >= 1e-2
    hard = regularizers.hard_threshold(v, 1.0)
    assert np.max(np.abs(regularizers.erf_prox_vec(v, 1.0, 1e-2)[away] - hard[away])) <= 1e-3


def test_erf_prox_zero_branch():
    assert regularizers.erf_prox(0.0, 1.0, 1.0) == 0.0
    assert regularizers.erf_prox(0.9, 1.0, 1.0) == 0.0
    assert regularizers.erf_prox(-1.0, 1.0, 0.3) == 0.0
    assert regularizers.erf_prox(2.5, 0.0, 1.0) == 2.5


def test_erf_prox_stationary():
    for sigma in (0.2, 0.5, 1.0, 3.0):
        for v in (1.01, 1.3, 2.0, 4.0):
            x = regularizers.erf_prox(v, 1.0, sigma)
            assert 0 < x <= v
            assert x + math.exp(-x * x / sigma ** 2) == pytest.approx(v, abs=1e-9)


def test_erf_prox_optimal_above_threshold():
    # any sigma once |v| > mu
    for sigma in (0.1, 0.2, 0.5, 1.0, 3.0):
        for v in (1.05, 1.5, 2.0, 3.0):
            x = regularizers.erf_prox(v, 1.0, sigma)
            best = _brute_prox(v, 1.0, lambda z: regularizers.erf_phi(z, sigma))
            assert _erf_obj(x, v, 1.0, sigma) <= best + 1e-8


def test_erf_prox_optimal_everywhere():
    # the zero branch is globally optimal for sigma >= 0.7 mu
    for mu in (0.5, 1.0, 2.0):
        for sigma in (0.7 * mu, mu, 4 * mu):
            for v in np.linspace(0.05, 3 * mu, 13):
                x = regularizers.erf_prox(v, mu, sigma)
                best = _brute_prox(v, mu, lambda z: regularizers.erf_phi(z, sigma))
                assert _erf_obj(x, v, mu, sigma) <= best + 1e-8


def test_erf_prox_odd():
    for v in (0.5, 1.7, 3.2):
        assert regularizers.erf_prox(-v, 1.0, 0.5) == -regularizers.erf_prox(v, 1.0, 0.5)


def test_erf_prox_vec():
    v = np.array([-3.0, -0.5, 0.0, 0.8, 1.5, 4.0])
    x = regularizers.erf_prox_vec(v, 1.0, 0.5)
    ref = [regularizers.erf_prox(a, 1.0, 0.5) for a in v]
    assert np.allclose(x, ref, rtol=0, atol=1e-14)

    mu = np.array([0.1, 0.1, 1.0, 1.0, 2.0, 2.0])
    x = regularizers.erf_prox_vec(v, mu, 0.5)
    assert x[4] == 0.0
    assert x[0] < 0


def test_erf_prox_errors():
    with pytest.raises(ValueError):
        regularizers.erf_prox(1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        regularizers.erf_prox(np.inf, 1.0, 1.0)
    with pytest.raises(ValueError):
        regularizers.erf_prox_vec([1.0, 2.0], [-1.0, 1.0], 1.0)

    # critical point search cannot finish in one step
    with pytest.raises(common.NoConvergence):
        regularizers.erf_prox(1.2, 1.0, 0.5, newton_max=1)


# === L1 / L0 ===


def test_soft_shrink():
    assert regularizers.soft_shrink(3.0, 1.0) == 2.0
    assert regularizers.soft_shrink(-3.0, 1.0) == -2.0
    assert regularizers.soft_shrink(0.5, 1.0) == 0.0
    assert np.array_equal(regularizers.soft_shrink(np.array([1.0, -2.0]), np.array([2.0, 1.0])), [0.0, -1.0])

    with pytest.raises(ValueError):
        regularizers.soft_shrink(1.0, -1.0)


def test_hard_threshold():
    assert np.array_equal(regularizers.hard_threshold(np.array([0.5, -2.0, 1.0]), 1.0), [0.0, -2.0, 0.0])

    with pytest.raises(ValueError):
        regularizers.hard_threshold(1.0, -1.0)


# === TL1 ===


def _tl1_obj(x, v, mu, a):
    return mu * regularizers.tl1_phi(x, a) + 0.5 * (x - v) ** 2


def test_tl1_phi():
    assert regularizers.tl1_phi(0.0, 1.0) == 0.0
    assert regularizers.tl1_phi(1.0, 1.0) == 1.0
    assert regularizers.tl1_phi(-1e9, 1.0) == pytest.approx(2.0)
    # a -> 0 approaches L0, a -> inf approaches L1
    assert regularizers.tl1_phi(0.5, 1e-6) == pytest.approx(1.0, rel=1e-5)
    assert regularizers.tl1_phi(0.5, 1e8) == pytest.approx(0.5, rel=1e-7)

    with pytest.raises(ValueError):
        regularizers.tl1_phi(1.0, 0.0)


def test_tl1_weight():
    assert regularizers.tl1_weight(0.0, 1.0) == 2.0
    assert regularizers.tl1_weight(1.0, 1.0) == 0.5


def test_tl1_prox_threshold():
    # mu <= a^2 / (2(a+1)): threshold mu (a+1)/a
    assert regularizers.tl1_prox(0.19, 0.1, 1.0) == 0.0
    assert regularizers.tl1_prox(0.21, 0.1, 1.0) > 0.0

    # mu > a^2 / (2(a+1)): threshold sqrt(2 mu (a+1)) - a/2
    thresh = math.sqrt(2.0 * 1.0 * 2.0) - 0.5
    assert regularizers.tl1_prox(thresh - 1e-3, 1.0, 1.0) == 0.0
    assert regularizers.tl1_prox(thresh + 1e-2, 1.0, 1.0) > 0.0


def test_tl1_prox_optimal():
    for a in (0.5, 1.0, 2.0):
        for mu in (0.1, 0.5, 1.0, 3.0):
            for v in np.linspace(0.05, 6.0, 15):
                x = regularizers.tl1_prox(v, mu, a)
                best = _brute_prox(v, mu, lambda z: regularizers.tl1_phi(z, a))
                assert 0 <= x <= v
                assert _tl1_obj(x, v, mu, a) <= best + 1e-8
                assert regularizers.tl1_prox(-v, mu, a) == -x


def test_tl1_prox_vec():
    v = np.linspace(-4, 4, 9)
    x = regularizers.tl1_prox_vec(v, 1.0, 1.0)
    assert np.allclose(x, [regularizers.tl1_prox(a, 1.0, 1.0) for a in v], rtol=0, atol=1e-14)
    assert regularizers.tl1_prox(2.0, 0.0, 1.0) == 2.0


# === other penalties and dispatch ===


def test_baseline_weights():
    assert regularizers.logsum_weight(0.0, 0.1) == pytest.approx(10.0)
    assert regularizers.lp_weight(0.0, 0.5, 0.01) == pytest.approx(0.5 / 0.1)
    with pytest.raises(ValueError):
        regularizers.lp_weight(1.0, 1.5, 0.01)


def test_penalty_eval():
    x = np.array([0.5, -2.0, 0.0, 5.0])
    assert regularizers.penalty_eval(x, RegularizerSpec.l1()) == 7.5
    assert regularizers.penalty_eval(x, RegularizerSpec.l0()) == 3.0
    assert regularizers.penalty_eval(x, RegularizerSpec.cl1(1.0)) == 2.5
    assert regularizers.penalty_eval(x, RegularizerSpec.scad(1.0, 3.0)) == pytest.approx(0.5 + 1.75 + 2.0)
    assert regularizers.penalty_eval(x, RegularizerSpec.mcp(1.0, 2.0)) == pytest.approx(0.4375 + 1.0 + 1.0)
    assert regularizers.penalty_eval([3.0, 4.0], RegularizerSpec.l1l2()) == pytest.approx(2.0)
    assert regularizers.penalty_eval(x, RegularizerSpec.erf(1.0)) == pytest.approx(
        regularizers.erf_objective(x, 1.0)
    )
    assert regularizers.penalty_eval([0.0], RegularizerSpec.logsum(0.1)) == pytest.approx(math.log(0.1))


def test_irl1_weights_dispatch():
    x = np.array([0.0, 1.0])
    assert np.array_equal(regularizers.irl1_weights(x, RegularizerSpec.l1()), [1.0, 1.0])
    assert np.allclose(regularizers.irl1_weights(x, RegularizerSpec.erf(1.0)), [1.0, math.exp(-1.0)])

    with pytest.raises(common.UnknownPenalty):
        regularizers.irl1_weights(x, RegularizerSpec.l0())


def test_prox_vec_dispatch():
    v = np.array([-2.0, 0.5, 3.0])
    assert np.array_equal(regularizers.prox_vec(v, 1.0, RegularizerSpec.l1()), [-1.0, 0.0, 2.0])
    assert np.array_equal(regularizers.prox_vec(v, 1.0, RegularizerSpec.l0()), [-2.0, 0.0, 3.0])

    with pytest.raises(common.UnknownPenalty):
        regularizers.prox_vec(v, 1.0, RegularizerSpec.logsum())


def test_penalty_parse():
    assert Penalty.parse("erf") is Penalty.ERF
    assert Penalty.parse("lp-irl1") is Penalty.LP
    assert Penalty.parse("L1-L2") is Penalty.L1MINUSL2
    assert Penalty.parse(Penalty.TL1) is Penalty.TL1

    with pytest.raises(common.UnknownPenalty):
        Penalty.parse("l2")


def test_regularizer_spec():
    assert RegularizerSpec.lp().label == "lp-irl1"
    assert RegularizerSpec.erf(0.5).sigma == 0.5
    assert math.isnan(RegularizerSpec.l1().sigma)
    assert RegularizerSpec.tl1(2.0).describe() == {
        "method": "tl1",
        "a": 2.0,
        "p": 0.5,
        "lambda_pen": 1.0,
        "gamma": 3.0,
        "epsilon": 0.1,
    }

    with pytest.raises(ValueError):
        RegularizerSpec.lp(p=1.5)
    with pytest.raises(ValueError):
        RegularizerSpec.tl1(a=0.0)
    with pytest.raises(ValueError):
        RegularizerSpec.scad(gamma=1.0)
    with pytest.raises(ValueError):
        RegularizerSpec(Penalty.ERF)


def test_erf_bounds_saturate():
    c = 0.25 * math.sqrt(math.pi)
    lo, hi = regularizers.erf_bounds(5.0, 0.5)
    assert abs(lo - c) < 1e-6
    assert abs(hi - c) < 1e-6
    assert regularizers.erf_bounds(0.0, 1.0) == (0.0, 0.0)
