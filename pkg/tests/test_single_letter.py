"""
Tests for the memoryless single-letter solver and the U_pred bound.
"""

import math

import numpy as np
import pytest

from fadecap.bounds import (
    asymptote_f,
    power_grid,
    prediction_gain,
    single_letter_mi_sup,
    solve_single_letter,
    solve_u_pred,
    u_pred_objective,
    upper_bound_U,
    upper_bound_U_pred,
)
from fadecap.channel import mi_quadrature_1d
from fadecap.config import configure_numerics, get_numerics, reset_numerics
from fadecap.exceptions import ConstraintError, ConvergenceError
from fadecap.models import GaussMarkovModel, IIDModel


class TestPowerGrid:
    """Tests for the power grid."""

    def test_grid_endpoints(self):
        grid = power_grid(2.0, size=5)
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(2.0)
        assert grid[1] == pytest.approx(2e-3)
        assert np.all(np.diff(grid) > 0)


class TestSingleLetter:
    """Tests for the memoryless Rayleigh capacity under peak and average power."""

    def teardown_method(self):
        reset_numerics()

    def test_zero_average_power(self):
        solution = solve_single_letter(1.0, 0.0)
        assert solution.value == 0.0
        assert solution.iterations == 0
        assert solution.support() == {0.0: 1.0}

    def test_beats_every_onoff_input(self):
        """Test rho = P = 1 against on-off inputs evaluated by quadrature."""
        value = single_letter_mi_sup(1.0, 1.0)
        onoff = max(mi_quadrature_1d(a, 1.0).value for a in np.linspace(0.05, 0.95, 19))
        assert value >= onoff - 1e-5
        assert value == pytest.approx(onoff, abs=1e-3)

    def test_at_least_onoff_at_low_power(self):
        """Test that the solver does no worse than full-peak on-off at the average power."""
        value = single_letter_mi_sup(1.0, 0.2)
        assert value >= mi_quadrature_1d(0.2, 1.0).value - 1e-5

    def test_monotone_in_average_power(self):
        """Test feasible-set nesting up to the certified accuracy of each solve."""
        values = [single_letter_mi_sup(1.0, p) for p in (0.1, 0.2, 0.4, 0.8, 1.0)]
        assert all(a <= b * (1 + 1e-4) for a, b in zip(values, values[1:]))
        assert values[0] < values[1] < values[2]

    @pytest.mark.parametrize("rho, p_ave", [(1.0, 1.0), (1e-2, 2.5e-3), (1e-3, 2.5e-4)])
    def test_converges_to_onoff(self, rho, p_ave):
        """Test convergence at unit and low SNR, where full-peak on-off is optimal."""
        solution = solve_single_letter(rho, p_ave)
        assert solution.converged
        assert solution.iterations < get_numerics().single_letter_max_iter
        if p_ave < rho:
            onoff = mi_quadrature_1d(p_ave / rho, rho).value
            assert solution.value >= onoff * (1 - 2e-4)
            assert solution.value == pytest.approx(onoff, rel=1e-3)

    def test_unit_snr_example(self):
        """Test rho = P = 1 against the finely swept on-off optimum."""
        value = single_letter_mi_sup(1.0, 1.0)
        onoff = max(mi_quadrature_1d(a, 1.0).value for a in np.linspace(0.20, 0.60, 81))
        assert value == pytest.approx(onoff, abs=1e-4)

    def test_average_constraint_respected(self):
        solution = solve_single_letter(2.0, 0.3)
        assert solution.mean_power <= 0.3 * (1 + 1e-9)
        assert solution.converged
        assert solution.multiplier >= 0

    def test_below_coherent_bound(self):
        assert single_letter_mi_sup(1.0, 1.0) < math.log(2.0)

    @pytest.mark.parametrize("rho, p_ave", [(0.0, 0.0), (-1.0, 0.5), (1.0, -0.1), (1.0, 1.5)])
    def test_invalid_powers(self, rho, p_ave):
        with pytest.raises(ConstraintError):
            solve_single_letter(rho, p_ave)

    def test_iteration_cap(self):
        """Test that hitting the cap raises with the best value found."""
        with pytest.raises(ConvergenceError) as exc_info:
            solve_single_letter(1.0, 0.5, tol=1e-15, gap_tol=1e-15, max_iter=2)
        assert exc_info.value.best_value > 0
        assert exc_info.value.iterations == 2

    def test_warm_start(self):
        cold = solve_single_letter(1.0, 0.5)
        warm = solve_single_letter(1.0, 0.5, initial=cold.masses)
        assert warm.value == pytest.approx(cold.value, rel=1e-8)
        assert warm.iterations <= cold.iterations


class TestUPred:
    """Tests for the prediction-based upper bound."""

    def test_no_gain_without_memory(self):
        """Test that i.i.d. fading has sigma^2 = 1 and no prediction gain."""
        assert prediction_gain(IIDModel(), 1.0, 0.5) == pytest.approx(0.0, abs=1e-14)
        result = solve_u_pred(IIDModel(), 1.0, 2.0)
        assert result.value == pytest.approx(single_letter_mi_sup(1.0, 0.5), rel=1e-6)
        assert result.p_ave == pytest.approx(0.5)
        assert result.converged

    def test_maximum_at_largest_average_power(self):
        """Test that no interior average power beats the endpoint rho/beta."""
        model = GaussMarkovModel(r=0.9)
        result = solve_u_pred(model, 0.1, 2.0)
        assert result.converged
        assert result.p_ave == pytest.approx(0.05)
        assert result.method == "endpoint"
        for p in (0.01, 0.025, 0.04):
            assert u_pred_objective(model, 0.1, p) <= result.value * (1 + 1e-4)

    def test_objective_nondecreasing(self):
        model = GaussMarkovModel(r=0.5)
        values = [u_pred_objective(model, 0.5, p) for p in (0.05, 0.1, 0.2)]
        assert values == sorted(values)

    def test_gain_positive_with_memory(self):
        assert prediction_gain(GaussMarkovModel(r=0.9), 1.0, 0.5) > 0

    def test_nonnegative(self):
        assert upper_bound_U_pred(GaussMarkovModel(r=0.5), 0.1, 4.0) >= 0

    def test_invalid_constraints(self):
        with pytest.raises(ConstraintError):
            upper_bound_U_pred(IIDModel(), 1.0, 0.5)

    @pytest.mark.slow
    def test_tight_at_low_snr(self):
        """Test U_pred/rho^2 within 10% of f for strongly correlated fading."""
        model = GaussMarkovModel(r=0.9)
        rho = 1e-2
        result = solve_u_pred(model, rho, 4.0)
        assert result.converged
        value = result.value
        assert value / rho ** 2 == pytest.approx(asymptote_f(model, 4.0), rel=0.10)

    @pytest.mark.slow
    def test_tighter_than_U_for_iid(self):
        """Test that the memoryless term dominates U_pred at moderate SNR."""
        configure_numerics(single_letter_grid=33)
        assert upper_bound_U_pred(IIDModel(), 1.0, 1.0) <= upper_bound_U(IIDModel(), 1.0, 1.0) + 1e-9
