"""Tests for the closed-form step bound, entropy barrier and MSE comparison."""

import math

import numpy as np
import pytest

from src.simplex_step.admissibility import (
    DEFAULT_BARRIER,
    BarrierConfig,
    backoff,
    barrier,
    ce_step,
    ce_step_bound,
    is_admissible,
    mse_compensate,
    mse_residual_after_ads,
    mse_step,
    mse_step_for,
    normalized_entropy,
)
from src.simplex_step.energy import mse_energy
from src.simplex_step.errors import DimensionMismatch, NegativeStep, OutOfRange
from src.simplex_step.simplex import make_belief, make_target, uniform
from tests.test_utils import random_belief


class TestStepBound:
    @pytest.mark.unit
    def test_binary_uniform(self):
        assert ce_step_bound(uniform(2)) == 1.0

    @pytest.mark.unit
    def test_peaked_belief(self):
        assert ce_step_bound(make_belief([0.9, 0.05, 0.05])) == pytest.approx(0.0055556, rel=1e-4)

    @pytest.mark.unit
    def test_uniform_over_c(self):
        for c in range(2, 11):
            assert ce_step_bound(uniform(c)) == pytest.approx(2.0 / c, rel=1e-12)

    @pytest.mark.unit
    def test_vanishes_at_the_boundary(self):
        assert ce_step_bound(make_belief([1.0, 0.0])) < 1e-20


class TestBarrier:
    @pytest.mark.unit
    def test_zero_entropy_has_no_backoff(self):
        assert barrier(0.0) == 0.0
        assert backoff(0.0) == 1.0

    @pytest.mark.unit
    def test_known_value(self):
        assert barrier(0.5) == pytest.approx(math.log(2.0), rel=1e-14)
        assert backoff(0.5) == pytest.approx(1.0 / (1.0 + math.log(2.0)), rel=1e-14)

    @pytest.mark.unit
    def test_full_entropy_is_clamped(self):
        alpha = barrier(1.0)
        assert math.isfinite(alpha)
        assert alpha == pytest.approx(-math.log(1.0 - DEFAULT_BARRIER.b_max), rel=1e-6)

    @pytest.mark.unit
    def test_backoff_decreases_with_entropy(self):
        values = [backoff(b) for b in np.linspace(0.0, 1.0, 51)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.unit
    def test_monotone_on_a_fine_grid(self):
        grid = np.linspace(0.0, DEFAULT_BARRIER.b_max, 1000)
        alphas = [barrier(float(b)) for b in grid]
        backoffs = [backoff(float(b)) for b in grid]
        assert all(after > before for before, after in zip(alphas, alphas[1:]))
        assert all(after < before for before, after in zip(backoffs, backoffs[1:]))

    @pytest.mark.unit
    @pytest.mark.parametrize("b", [-0.1, 1.2, math.nan])
    def test_out_of_range(self, b):
        with pytest.raises(OutOfRange):
            barrier(b)

    @pytest.mark.unit
    def test_config_validation(self):
        with pytest.raises(OutOfRange):
            BarrierConfig(b_max=1.0)
        with pytest.raises(OutOfRange):
            BarrierConfig(eta_floor=-1.0)

    @pytest.mark.unit
    def test_normalized_entropy_range(self, rng):
        assert normalized_entropy(uniform(5)) == pytest.approx(1.0, abs=1e-15)
        for _ in range(200):
            b = normalized_entropy(random_belief(rng, int(rng.integers(2, 11))))
            assert 0.0 < b <= 1.0


class TestCeStep:
    @pytest.mark.unit
    def test_never_exceeds_bound(self, rng):
        for _ in range(500):
            p = make_belief(rng.dirichlet(np.ones(int(rng.integers(2, 11)))))
            assert 0.0 < ce_step(p) <= ce_step_bound(p)

    @pytest.mark.unit
    def test_is_bound_times_backoff(self):
        p = make_belief([0.6, 0.3, 0.1])
        expected = ce_step_bound(p) * backoff(normalized_entropy(p))
        assert ce_step(p) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.unit
    def test_uniform_three_classes_backs_off_hard(self):
        expected = (2.0 / 3.0) / (1.0 + 9.0 * math.log(10.0))
        assert ce_step(uniform(3)) == pytest.approx(expected, rel=1e-6)
        assert ce_step(uniform(3)) == pytest.approx(0.0307, abs=1e-4)
        assert ce_step(uniform(3)) < 0.04

    @pytest.mark.unit
    def test_floor_is_capped_by_bound(self):
        cfg = BarrierConfig(eta_floor=0.5)
        assert ce_step(uniform(2), cfg) == 0.5
        peaked = make_belief([0.9, 0.05, 0.05])
        assert ce_step(peaked, cfg) == ce_step_bound(peaked)


class TestIsAdmissible:
    @pytest.mark.unit
    def test_interior_step(self):
        verdict = is_admissible(1.0 / 3.0, uniform(3))
        assert verdict.flag is True
        assert verdict.gap == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.unit
    def test_endpoint_is_excluded(self):
        p = uniform(3)
        verdict = is_admissible(ce_step_bound(p), p)
        assert verdict.flag is False
        assert verdict.gap == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.unit
    def test_zero_step_is_excluded(self):
        verdict = is_admissible(0.0, uniform(3))
        assert verdict.flag is False
        assert verdict.gap == 0.0

    @pytest.mark.unit
    def test_over_bound_has_negative_gap(self):
        verdict = is_admissible(2.0, make_belief([0.7, 0.2, 0.1]))
        assert verdict.flag is False
        assert verdict.gap < 0

    @pytest.mark.unit
    def test_flag_agrees_with_gap_sign(self, rng):
        for _ in range(500):
            p = random_belief(rng, int(rng.integers(2, 11)))
            eta = ce_step_bound(p) * rng.uniform(0.01, 2.0)
            verdict = is_admissible(eta, p)
            if abs(eta / ce_step_bound(p) - 1.0) > 1e-9:
                assert verdict.flag == (verdict.gap > 0)

    @pytest.mark.unit
    @pytest.mark.parametrize("eta", [-1e-3, math.nan])
    def test_negative_step(self, eta):
        with pytest.raises(NegativeStep):
            is_admissible(eta, uniform(3))


class TestMseComparison:
    @pytest.mark.unit
    def test_mse_step_is_backoff(self):
        assert mse_step(0.5) == backoff(0.5)
        assert mse_step(0.0) == 1.0
        assert mse_step_for(uniform(3)) == backoff(1.0)

    @pytest.mark.unit
    def test_compensation_endpoints(self):
        p = make_belief([0.5, 0.3, 0.2])
        y = make_target([0.1, 0.2, 0.7])
        assert mse_compensate(p, y, 0.0) == p
        np.testing.assert_allclose(mse_compensate(p, y, 1.0).probs, y.probs, atol=1e-15)
        np.testing.assert_allclose(mse_compensate(p, y, 0.5).probs, [0.3, 0.25, 0.45], atol=1e-15)

    @pytest.mark.unit
    @pytest.mark.parametrize("eta", [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0])
    def test_compensation_shrinks_energy_quadratically(self, eta):
        p = make_belief([0.5, 0.3, 0.2])
        y = make_target([0.1, 0.2, 0.7])
        moved = mse_compensate(p, y, eta)
        expected = (1.0 - eta) ** 2 * mse_energy(p, y)
        assert mse_energy(moved, y) == pytest.approx(expected, abs=1e-12)
        if eta == 1.0:
            assert mse_energy(moved, y) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.unit
    def test_compensation_rejects_bad_step(self):
        p, y = uniform(3), make_target([0.1, 0.2, 0.7])
        with pytest.raises(OutOfRange):
            mse_compensate(p, y, 1.5)
        with pytest.raises(DimensionMismatch):
            mse_compensate(p, make_target([0.5, 0.5]), 0.5)

    @pytest.mark.unit
    def test_residual_matches_compensated_point(self, rng):
        for _ in range(200):
            c = int(rng.integers(2, 8))
            p, y = random_belief(rng, c), make_target(rng.dirichlet(np.full(c, 2.0)) * 0.8 + 0.2 / c)
            b = float(rng.uniform(0.0, 1.0))
            moved = mse_compensate(p, y, mse_step(b))
            assert mse_energy(moved, y) == pytest.approx(mse_residual_after_ads(b, p, y), abs=1e-12)

    @pytest.mark.unit
    def test_residual_vanishes_without_entropy(self):
        p, y = uniform(3), make_target([0.1, 0.2, 0.7])
        assert mse_residual_after_ads(0.0, p, y) == 0.0
