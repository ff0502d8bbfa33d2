import numpy as np
import pytest

from core.choices import Frequency
from core.exceptions import InvalidConfig
from risk.correlation import pearson_correlation
from synthetic.config import GeneratorConfig, Regime
from synthetic.generators import gen_bivariate_gaussian, gen_crash_mixture, generate


def test_same_config_gives_identical_output():
    cfg = GeneratorConfig(seed=42, n=5000, rho=0.42)
    first, second = gen_bivariate_gaussian(cfg), gen_bivariate_gaussian(cfg)
    for a, b in zip(first, second):
        assert a.values.tobytes() == b.values.tobytes()
        assert np.array_equal(a.dates, b.dates)


def test_different_seeds_differ():
    r1, _ = gen_bivariate_gaussian(GeneratorConfig(seed=1, n=100))
    s1, _ = gen_bivariate_gaussian(GeneratorConfig(seed=2, n=100))
    assert not np.array_equal(r1.values, s1.values)


def test_output_shape():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=3, n=250))
    assert (r1.asset_id, r2.asset_id) == ("asset1", "asset2")
    assert r1.frequency == Frequency.DAILY
    assert len(r1) == len(r2) == 250
    assert np.array_equal(r1.dates, r2.dates)
    assert np.busday_count(r1.dates[0], r1.dates[-1]) == 249


def test_perfect_correlation_is_affine():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=8, n=1000, rho=1.0, sigma1=0.01, sigma2=0.03, mu2=0.001))
    assert np.allclose(r2.values, 0.001 + 3.0 * r1.values, rtol=0, atol=1e-15)


def test_equal_volatilities_with_perfect_correlation_are_identical():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=8, n=1000, rho=1.0))
    assert np.array_equal(r1.values, r2.values)


def test_sample_correlation_matches_target():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=1, n=500_000, rho=0.42))
    assert abs(pearson_correlation(r1, r2) - 0.42) <= 0.004


def test_marginals_have_requested_moments():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=4, n=200_000, sigma1=0.01, sigma2=0.02, mu1=0.0005))
    assert r1.values.mean() == pytest.approx(0.0005, abs=1e-4)
    assert r1.values.std() == pytest.approx(0.01, rel=0.01)
    assert r2.values.std() == pytest.approx(0.02, rel=0.01)


def test_negligible_crash_probability_reproduces_gaussian_draws():
    gaussian = GeneratorConfig(seed=17, n=10_000, rho=0.3)
    mixture = GeneratorConfig(seed=17, n=10_000, rho=0.3, regime=Regime.CRASH_MIXTURE, crash_prob=1e-300)
    for a, b in zip(gen_bivariate_gaussian(gaussian), gen_crash_mixture(mixture)):
        assert a.values.tobytes() == b.values.tobytes()


def test_crash_mixture_is_deterministic():
    cfg = GeneratorConfig(seed=5, n=5000, rho=0.2, regime="crash_mixture", crash_prob=0.05, crash_shift=-0.03)
    first, second = gen_crash_mixture(cfg), gen_crash_mixture(cfg)
    for a, b in zip(first, second):
        assert a.values.tobytes() == b.values.tobytes()


def test_crash_draws_pull_the_lower_tail_together():
    cfg = GeneratorConfig(seed=6, n=100_000, rho=0.2, regime="crash_mixture", crash_prob=0.05, crash_shift=-0.03)
    r1, r2 = gen_crash_mixture(cfg)
    lower = r1.values < np.quantile(r1.values, 0.02)
    upper = r1.values > np.quantile(r1.values, 0.98)
    assert r2.values[lower].mean() < -abs(r2.values[upper].mean())


def test_generate_dispatches_on_regime():
    cfg = GeneratorConfig(seed=5, n=100, regime="crash_mixture", crash_prob=0.1)
    assert generate(cfg)[0].values.tobytes() == gen_crash_mixture(cfg)[0].values.tobytes()


def test_generators_check_the_regime():
    with pytest.raises(InvalidConfig):
        gen_crash_mixture(GeneratorConfig(seed=1, n=10))
