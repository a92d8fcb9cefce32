from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from pcedep.basis import box_gauss_rule
from pcedep.exceptions import (
    InvalidArgumentError,
    NotPositiveDefiniteError,
    SamplingEfficiencyError,
    UnsupportedError,
)
from pcedep.measure import (
    JointDensity,
    Marginal,
    TensorDensity,
    banana_density,
    banana_normalization,
    beta_mixture_density,
    chebyshev_candidates,
    cholesky_factor,
    copula_sample,
    equicorrelation,
    gaussian_copula_density,
    load_samples,
    mixed_candidates,
    rejection_sample,
    save_samples,
    sign_flipped,
    spawn_seeds,
    zonotope_kde,
)


def _box_integral(density: JointDensity, lower: list[float], upper: list[float], order: int) -> float:
    rule = box_gauss_rule(lower, upper, order)
    volume = math.prod(hi - lo for lo, hi in zip(lower, upper, strict=True))
    return volume * rule.integrate(density.density(rule.nodes))


def test_identity_copula_is_the_product_of_marginals() -> None:
    marginals = [Marginal.beta(2.0, 5.0), Marginal.beta(3.0, 1.5)]
    copula = gaussian_copula_density(marginals, np.eye(2))
    points = np.random.default_rng(0).random((50, 2))

    np.testing.assert_allclose(copula.density(points), TensorDensity(marginals).density(points), rtol=1e-12)


def test_copula_density_integrates_to_one() -> None:
    copula = gaussian_copula_density([Marginal.beta(2.0, 5.0)] * 2, equicorrelation(2, 0.5))

    assert _box_integral(copula, [0.0, 0.0], [1.0, 1.0], 200) == pytest.approx(1.0, abs=1e-6)


def test_copula_density_is_zero_outside_the_support() -> None:
    copula = gaussian_copula_density([Marginal.beta(2.0, 5.0)] * 2, equicorrelation(2, -0.9))

    np.testing.assert_array_equal(copula.density([[1.5, 0.2], [0.0, 0.3], [-0.1, 0.5]]), 0.0)


def test_copula_sample_has_the_requested_gaussian_correlation() -> None:
    copula = gaussian_copula_density([Marginal.beta(2.0, 5.0)] * 2, equicorrelation(2, -0.9))
    samples = copula_sample(copula, 100_000, 4)

    gaussian = copula.to_gaussian(samples)

    assert np.corrcoef(gaussian.T)[0, 1] == pytest.approx(-0.9, abs=0.02)
    assert np.all(copula.in_support(samples))


def test_identity_copula_with_uniform_marginals_gives_uniform_samples() -> None:
    copula = gaussian_copula_density([Marginal.uniform()] * 2, np.eye(2))
    samples = copula.sample(100_000, 5)

    for axis in range(2):
        assert stats.kstest(samples[:, axis], "uniform").pvalue > 0.01


def test_copula_sample_is_seeded() -> None:
    copula = gaussian_copula_density([Marginal.beta(2.0, 5.0)] * 3, equicorrelation(3, 0.4))

    np.testing.assert_array_equal(copula.sample(100, 9), copula.sample(100, 9))


def test_cholesky_factor_rejects_indefinite_matrices() -> None:
    matrix = np.array([[1.0, 0.9, 0.9], [0.9, 1.0, -0.9], [0.9, -0.9, 1.0]])

    with pytest.raises(NotPositiveDefiniteError):
        cholesky_factor(matrix)
    with pytest.raises(InvalidArgumentError):
        cholesky_factor([[1.0, 0.2], [0.3, 1.0]])


def test_sign_flipped_equicorrelation_stays_positive_definite() -> None:
    flipped = sign_flipped(equicorrelation(10, 0.9), range(0, 10, 2))
    factor = cholesky_factor(flipped)

    assert flipped[0, 1] == pytest.approx(-0.9)
    assert flipped[0, 2] == pytest.approx(0.9)
    np.testing.assert_allclose(factor @ factor.T, flipped, atol=1e-12)


def test_banana_unnormalized_values() -> None:
    banana = banana_density()

    np.testing.assert_allclose(banana.unnormalized([[0.0, 0.0], [1.0, 0.5]]), [1.0, math.exp(-0.1)])
    assert banana.unnormalized([[4.0, 0.0]])[0] == 0.0


def test_banana_normalization_is_converged() -> None:
    assert banana_normalization(200) == pytest.approx(banana_normalization(300), rel=1e-8)
    assert _box_integral(banana_density(), [-3.0, -2.0], [3.0, 6.0], 200) == pytest.approx(1.0, abs=1e-8)


def test_banana_samples_are_centered_in_the_first_coordinate() -> None:
    samples = banana_density().sample(20_000, 6)
    standard_error = samples[:, 0].std() / math.sqrt(samples.shape[0])

    assert abs(samples[:, 0].mean()) < 3 * standard_error
    assert np.all(banana_density().in_support(samples))


def test_beta_mixture_is_symmetric_and_bimodal() -> None:
    mixture = beta_mixture_density([(0.5, 10.0, 4.0), (0.5, 4.0, 10.0)], 2)
    points = np.random.default_rng(1).random((20, 2))

    np.testing.assert_allclose(mixture.density(points), mixture.density(1 - points))
    mode = (10.0 - 1) / (10.0 + 4.0 - 2)
    assert mixture.density([[0.5, 0.5]])[0] < mixture.density([[mode, mode]])[0]
    assert _box_integral(mixture, [0.0, 0.0], [1.0, 1.0], 20) == pytest.approx(1.0, abs=1e-12)


def test_single_component_mixture_is_a_tensor_beta() -> None:
    mixture = beta_mixture_density([(1.0, 2.0, 5.0)], 3)
    tensor = TensorDensity([Marginal.beta(2.0, 5.0)] * 3)
    points = np.random.default_rng(2).random((10, 3))

    np.testing.assert_allclose(mixture.density(points), tensor.density(points))


def test_beta_mixture_weights_must_sum_to_one() -> None:
    with pytest.raises(InvalidArgumentError):
        beta_mixture_density([(0.5, 10.0, 4.0), (1.0, 4.0, 10.0)], 2)


def test_kde_integrates_to_one_over_its_box() -> None:
    samples = np.random.default_rng(3).standard_normal((200, 2))
    kde = zonotope_kde(samples)

    lower, upper = kde.lower.tolist(), kde.upper.tolist()
    assert _box_integral(kde, lower, upper, 80) == pytest.approx(1.0, abs=1e-3)


def test_kde_peaks_at_a_tight_cluster() -> None:
    cluster = np.random.default_rng(4).normal(scale=1e-3, size=(100, 2))
    kde = zonotope_kde(cluster)

    assert kde.density([[0.0, 0.0]])[0] > kde.density([[0.01, 0.01]])[0]
    assert np.all(kde.in_support(kde.sample(500, 5)))


def test_kde_rejects_degenerate_samples() -> None:
    flat = np.column_stack([np.linspace(0.0, 1.0, 10), np.zeros(10)])

    with pytest.raises(InvalidArgumentError):
        zonotope_kde(flat)


def test_chebyshev_candidates_follow_the_arcsine_law() -> None:
    samples = chebyshev_candidates([0.0], [1.0], 100_000, 7)[:, 0]

    def arcsine_cdf(x: np.ndarray) -> np.ndarray:
        return 2 / np.pi * np.arcsin(np.sqrt(np.clip(x, 0.0, 1.0)))

    counts, _ = np.histogram(samples, bins=10, range=(0.0, 1.0))
    assert stats.kstest(samples, arcsine_cdf).pvalue > 0.01
    assert counts[0] > counts[5]
    assert counts[-1] > counts[4]


def test_chebyshev_candidates_need_a_finite_box() -> None:
    with pytest.raises(UnsupportedError):
        chebyshev_candidates([-np.inf], [np.inf], 10)


def test_mixed_candidates_split_and_stay_in_the_box() -> None:
    density = TensorDensity([Marginal.beta(2.0, 5.0)] * 2)
    candidates = mixed_candidates(density, 1001, 8)

    assert candidates.shape == (1001, 2)
    assert np.all(density.in_support(candidates))
    np.testing.assert_array_equal(candidates, mixed_candidates(density, 1001, 8))
    pair = mixed_candidates(density, 2, 8)
    np.testing.assert_array_equal(pair[0], chebyshev_candidates([0, 0], [1, 1], 1, spawn_seeds(8, 2)[0])[0])


def test_mixed_candidates_fall_back_to_density_samples_when_unbounded() -> None:
    normal = TensorDensity([Marginal.normal()] * 2)

    assert mixed_candidates(normal, 10, 1).shape == (10, 2)


def test_rejection_sampling_of_the_proposal_accepts_everything() -> None:
    draw = rejection_sample(lambda points: np.ones(points.shape[0]), [0.0, 0.0], [1.0, 1.0], 1.0, 500, 1)

    assert draw.acceptance_rate == 1.0
    assert draw.samples.shape == (500, 2)


def test_rejection_sampling_validates_the_bound() -> None:
    bump = TensorDensity([Marginal.beta(10.0, 10.0)])

    with pytest.raises(InvalidArgumentError):
        rejection_sample(bump.density, [0.0], [1.0], 1.0, 10, 1)


def test_rejection_sampling_gives_up_on_tiny_acceptance() -> None:
    with pytest.raises(SamplingEfficiencyError):
        rejection_sample(lambda points: np.ones(points.shape[0]), [0.0], [1.0], 1e6, 10, 1)


def test_samples_csv_is_exact(tmp_path: Path) -> None:
    samples = np.random.default_rng(5).random((7, 3))
    path = tmp_path / "samples.csv"
    save_samples(path, samples)

    np.testing.assert_array_equal(load_samples(path), samples)
    assert path.read_text(encoding="utf-8").startswith("z_1,z_2,z_3\n")


def test_marginal_descriptions_rebuild_the_marginal() -> None:
    marginal = Marginal.from_description(Marginal.beta(2.0, 5.0, -1.0, 3.0).describe())

    assert marginal.mean == pytest.approx(-1.0 + 4.0 * 2.0 / 7.0)
    with pytest.raises(InvalidArgumentError):
        Marginal.from_description({"name": "gumbel", "params": [0, 1]})


def test_marginal_gaussian_map_round_trips() -> None:
    marginal = Marginal.beta(2.0, 5.0)
    x = np.linspace(0.01, 0.99, 9)

    np.testing.assert_allclose(marginal.from_gaussian(marginal.to_gaussian(x)), x, atol=1e-10)


def test_spawned_seeds_are_reproducible() -> None:
    first = [np.random.default_rng(child).random() for child in spawn_seeds(3, 2)]
    second = [np.random.default_rng(child).random() for child in spawn_seeds(3, 2)]

    assert first == second
    assert first[0] != first[1]
