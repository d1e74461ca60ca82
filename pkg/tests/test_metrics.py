"""Quality indicators: hypervolume, IGD, objective error, adjusted sets."""

import numpy as np
import pytest

from knnavg.core import ContractViolationError, RngStream, Solution
from knnavg.metrics import (
    DEFAULT_FRONT_SAMPLE_SIZE,
    DEFAULT_REFERENCE,
    MetricReport,
    adjusted_set,
    compute_report,
    delta_f,
    hypervolume_2d,
    igd,
)
from knnavg.problems import (
    NoiseSpec,
    ParetoFrontSample,
    ZdtProblem,
    evaluate_noisy,
    evaluate_true,
    true_front,
)


def monte_carlo_hv(points, reference, n_samples, seed):
    """Independent estimate: fraction of uniform box samples dominated."""
    rng = np.random.default_rng(seed)
    reference = np.asarray(reference, dtype=float)
    pts = np.asarray(points, dtype=float)
    samples = rng.random((n_samples, 2)) * reference
    dominated = np.zeros(n_samples, dtype=bool)
    for p in pts:
        dominated |= np.all(samples >= p, axis=1)
    box = float(reference[0] * reference[1])
    frac = dominated.mean()
    estimate = frac * box
    stderr = box * np.sqrt(frac * (1.0 - frac) / n_samples)
    return estimate, stderr


class TestHypervolume2d:
    def test_single_point_unit_square(self):
        assert hypervolume_2d([[0.0, 0.0]], (1.0, 1.0)) == 1.0

    def test_two_point_staircase(self):
        assert hypervolume_2d([[0.0, 0.5], [0.5, 0.0]], (1.0, 1.0)) == 0.75

    def test_empty_set(self):
        assert hypervolume_2d(np.empty((0, 2)), (1.0, 1.0)) == 0.0

    def test_point_at_reference_contributes_nothing(self):
        assert hypervolume_2d([[1.0, 1.0]], (1.0, 1.0)) == 0.0
        assert hypervolume_2d([[0.5, 1.0]], (1.0, 1.0)) == 0.0

    def test_point_beyond_reference_ignored(self):
        base = hypervolume_2d([[0.2, 0.2]], (1.0, 1.0))
        with_outlier = hypervolume_2d([[0.2, 0.2], [2.0, -5.0]], (1.0, 1.0))
        assert with_outlier == base

    def test_dominated_point_contributes_nothing(self):
        base = hypervolume_2d([[0.2, 0.2]], (1.0, 1.0))
        assert hypervolume_2d([[0.2, 0.2], [0.5, 0.5]], (1.0, 1.0)) == base

    def test_duplicate_points_counted_once(self):
        assert hypervolume_2d([[0.0, 0.0], [0.0, 0.0]], (1.0, 1.0)) == 1.0

    def test_permutation_invariance(self):
        rng = RngStream(71)
        for _ in range(30):
            pts = rng.random(10 * 2).reshape(10, 2)
            shuffled = pts[np.argsort(rng.random(10))]
            a = hypervolume_2d(pts, (1.0, 1.0))
            b = hypervolume_2d(shuffled, (1.0, 1.0))
            assert a == pytest.approx(b, abs=1e-15)

    def test_adding_a_point_never_shrinks(self):
        rng = RngStream(72)
        for _ in range(50):
            pts = rng.random(8 * 2).reshape(8, 2)
            extra = rng.random(2)
            a = hypervolume_2d(pts, (1.0, 1.0))
            b = hypervolume_2d(np.vstack((pts, extra)), (1.0, 1.0))
            assert b >= a - 1e-15

    def test_matches_monte_carlo_oracle(self):
        # light version of the large-scale check in the acceptance suite
        rng = RngStream(73)
        for trial in range(10):
            pts = rng.random(12 * 2).reshape(12, 2)
            exact = hypervolume_2d(pts, (1.0, 1.0))
            estimate, stderr = monte_carlo_hv(pts, (1.0, 1.0), 200_000, seed=trial)
            assert abs(exact - estimate) <= 3.0 * stderr + 1e-9

    def test_zdt1_front_value_at_standard_reference(self):
        # analytic value: 11*11 - integral of (1 - sqrt(f1)) related terms;
        # a dense front sample converges to 120.6667 from below
        pts = true_front(ZdtProblem("zdt1", 2), 100_000).points
        assert hypervolume_2d(pts, DEFAULT_REFERENCE) == pytest.approx(
            120.66666666666667, abs=1e-3
        )

    def test_reference_shape_validated(self):
        with pytest.raises(ContractViolationError):
            hypervolume_2d([[0.0, 0.0]], (1.0, 1.0, 1.0))

    def test_points_shape_validated(self):
        with pytest.raises(ContractViolationError):
            hypervolume_2d([[0.0, 0.0, 0.0]], (1.0, 1.0))


class TestIgd:
    def test_hand_value(self):
        front = ParetoFrontSample(np.array([[0.0, 0.0], [1.0, 1.0]]))
        # nearest to (0,0) is itself; nearest to (1,1) is (0,0) at sqrt(2)
        assert igd(front, [[0.0, 0.0]]) == pytest.approx(
            (0.0 + np.sqrt(2.0)) / 2.0, abs=1e-15
        )

    def test_zero_when_set_covers_front(self):
        front = true_front(ZdtProblem("zdt1", 2), 50)
        assert igd(front, front.points) == 0.0

    def test_adding_a_point_never_increases(self):
        front = true_front(ZdtProblem("zdt2", 2), 100)
        rng = RngStream(74)
        for _ in range(30):
            objs = rng.random(6 * 2).reshape(6, 2) * 2.0
            extra = rng.random(2) * 2.0
            a = igd(front, objs)
            b = igd(front, np.vstack((objs, extra)))
            assert b <= a + 1e-15

    def test_empty_set_rejected(self):
        front = true_front(ZdtProblem("zdt1", 2), 10)
        with pytest.raises(ContractViolationError):
            igd(front, np.empty((0, 2)))

    def test_dimension_mismatch_rejected(self):
        front = true_front(ZdtProblem("zdt1", 2), 10)
        with pytest.raises(ContractViolationError):
            igd(front, [[0.0, 0.0, 0.0]])


def make_pair(reported, expected):
    reported = np.asarray(reported, dtype=float)
    expected = np.asarray(expected, dtype=float)
    n_vars = 2
    sols = [
        Solution(variables=np.zeros(n_vars), objectives=r, raw_objectives=r.copy())
        for r in reported
    ]
    adj = [
        Solution(variables=np.zeros(n_vars), objectives=e, raw_objectives=r.copy())
        for e, r in zip(expected, reported)
    ]
    return sols, adj


class TestDeltaF:
    def test_hand_value_single_pair(self):
        sols, adj = make_pair([[3.0, 4.0]], [[0.0, 0.0]])
        assert delta_f(sols, adj) == 5.0

    def test_hand_value_mean_over_pairs(self):
        sols, adj = make_pair([[1.0, 0.0], [0.0, 3.0]], [[0.0, 0.0], [0.0, 0.0]])
        assert delta_f(sols, adj) == 2.0

    def test_zero_for_identical_sets(self):
        sols, adj = make_pair([[0.5, 0.5], [1.0, 2.0]], [[0.5, 0.5], [1.0, 2.0]])
        assert delta_f(sols, adj) == 0.0

    def test_translation_invariance(self):
        rng = RngStream(75)
        for _ in range(20):
            reported = rng.random(5 * 2).reshape(5, 2)
            expected = rng.random(5 * 2).reshape(5, 2)
            shift = rng.random(2) * 10.0
            sols, adj = make_pair(reported, expected)
            sols2, adj2 = make_pair(reported + shift, expected + shift)
            assert delta_f(sols2, adj2) == pytest.approx(delta_f(sols, adj), abs=1e-12)

    def test_symmetric_in_roles(self):
        sols, adj = make_pair([[1.0, 2.0]], [[4.0, 6.0]])
        assert delta_f(sols, adj) == delta_f(adj, sols)

    def test_size_mismatch_rejected(self):
        sols, adj = make_pair([[1.0, 2.0], [3.0, 4.0]], [[0.0, 0.0], [0.0, 0.0]])
        with pytest.raises(ContractViolationError):
            delta_f(sols, adj[:1])
        with pytest.raises(ContractViolationError):
            delta_f([], [])


class TestAdjustedSet:
    def test_replaces_objectives_with_expectation(self):
        problem = ZdtProblem("zdt1", 2)
        noise = NoiseSpec(0.5)
        rng = RngStream(76)
        batch = [evaluate_noisy(problem, noise, rng.random(2), rng) for _ in range(10)]
        adjusted = adjusted_set(batch, problem, noise)
        assert len(adjusted) == len(batch)
        for before, after in zip(batch, adjusted):
            assert np.array_equal(after.variables, before.variables)
            assert np.array_equal(after.raw_objectives, before.raw_objectives)
            assert np.array_equal(after.objectives, evaluate_true(problem, before.variables))

    def test_corner_point(self):
        problem = ZdtProblem("zdt1", 2)
        noise = NoiseSpec(1.0)
        s = evaluate_noisy(problem, noise, [0.0, 0.0], RngStream(77))
        (adjusted,) = adjusted_set([s], problem, noise)
        assert np.array_equal(adjusted.objectives, [0.0, 1.0])

    def test_noise_free_run_is_fixed_point(self):
        problem = ZdtProblem("zdt2", 3)
        noise = NoiseSpec(0.0)
        rng = RngStream(78)
        batch = [evaluate_noisy(problem, noise, rng.random(3), rng) for _ in range(5)]
        adjusted = adjusted_set(batch, problem, noise)
        for before, after in zip(batch, adjusted):
            assert np.array_equal(after.objectives, before.objectives)


class TestMetricReport:
    def test_value_lookup(self):
        report = MetricReport(
            hv_mean_adjusted=1.0,
            igd_mean_adjusted=0.5,
            delta_f=0.25,
            reference_point=(11.0, 11.0),
            front_sample_size=1000,
        )
        assert report.value("hv") == 1.0
        assert report.value("igd") == 0.5
        assert report.value("delta_f") == 0.25

    def test_unknown_metric_rejected(self):
        report = MetricReport(1.0, 0.5, 0.25, (11.0, 11.0), 1000)
        with pytest.raises(ContractViolationError):
            report.value("spread")

    def test_negative_indicator_rejected(self):
        with pytest.raises(ContractViolationError):
            MetricReport(-1.0, 0.5, 0.25, (11.0, 11.0), 1000)

    def test_non_finite_indicator_rejected(self):
        with pytest.raises(ContractViolationError):
            MetricReport(float("nan"), 0.5, 0.25, (11.0, 11.0), 1000)

    def test_reference_point_shape(self):
        with pytest.raises(ContractViolationError):
            MetricReport(1.0, 0.5, 0.25, (11.0,), 1000)


class TestComputeReport:
    def test_composes_the_three_indicators(self):
        problem = ZdtProblem("zdt1", 2)
        noise = NoiseSpec(0.1)
        rng = RngStream(79)
        batch = [evaluate_noisy(problem, noise, rng.random(2), rng) for _ in range(12)]
        report = compute_report(batch, problem, noise)
        adjusted = adjusted_set(batch, problem, noise)
        adjusted_objs = np.array([s.objectives for s in adjusted])
        front = true_front(problem, DEFAULT_FRONT_SAMPLE_SIZE)
        assert report.hv_mean_adjusted == hypervolume_2d(adjusted_objs, DEFAULT_REFERENCE)
        assert report.igd_mean_adjusted == igd(front, adjusted_objs)
        assert report.delta_f == delta_f(batch, adjusted)
        assert report.reference_point == DEFAULT_REFERENCE
        assert report.front_sample_size == DEFAULT_FRONT_SAMPLE_SIZE

    def test_custom_reference_and_sample_size(self):
        problem = ZdtProblem("zdt1", 2)
        noise = NoiseSpec(0.0)
        rng = RngStream(80)
        batch = [evaluate_noisy(problem, noise, rng.random(2), rng) for _ in range(5)]
        report = compute_report(batch, problem, noise, reference=(5.0, 5.0), front_sample_size=64)
        assert report.reference_point == (5.0, 5.0)
        assert report.front_sample_size == 64

    def test_empty_set_rejected(self):
        with pytest.raises(ContractViolationError):
            compute_report([], ZdtProblem("zdt1", 2), NoiseSpec(0.0))

    def test_noise_free_front_set_has_zero_error(self):
        # variables on the front (x2..xn = 0) with no noise: delta_f must be 0
        problem = ZdtProblem("zdt1", 2)
        noise = NoiseSpec(0.0)
        rng = RngStream(81)
        batch = [
            evaluate_noisy(problem, noise, [float(rng.random()), 0.0], rng) for _ in range(10)
        ]
        report = compute_report(batch, problem, noise)
        assert report.delta_f == 0.0
