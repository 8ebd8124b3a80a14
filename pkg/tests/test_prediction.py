"""
Tests for MMSE prediction errors of the fading process.
"""

import numpy as np
import pytest
from scipy.linalg import LinAlgError

import fadecap.prediction as prediction
from fadecap.exceptions import ConstraintError, NumericalError
from fadecap.models import BandlimitedModel, GaussMarkovModel, IIDModel
from fadecap.prediction import (
    PredictionError,
    asymptotic_error,
    causal_error,
    finite_window_error,
    interpolation_error,
    noncausal_error,
    window_offsets,
)

GM_HALF_CAUSAL = 0.8660254037844386


class TestWindowOffsets:
    """Tests for observation index sets."""

    def test_causal(self):
        np.testing.assert_array_equal(window_offsets(3, "causal"), [-3, -2, -1])

    def test_noncausal_odd_puts_extra_in_past(self):
        np.testing.assert_array_equal(window_offsets(3, "noncausal"), [-2, -1, 1])
        np.testing.assert_array_equal(window_offsets(4, "noncausal"), [-2, -1, 1, 2])

    def test_smoothing(self):
        np.testing.assert_array_equal(window_offsets(3, "smoothing"), [-1, 0, 1])
        np.testing.assert_array_equal(window_offsets(1, "smoothing"), [0])

    def test_invalid(self):
        with pytest.raises(ValueError):
            window_offsets(0, "causal")
        with pytest.raises(ValueError):
            window_offsets(2, "sideways")


class TestClosedForms:
    """Tests for infinite-window errors."""

    def test_causal_iid(self):
        assert causal_error(IIDModel(), 1.0) == pytest.approx(1.0)

    def test_causal_gauss_markov(self):
        assert causal_error(GaussMarkovModel(r=0.5), 1.0) == pytest.approx(GM_HALF_CAUSAL, abs=1e-9)

    def test_noncausal(self):
        assert noncausal_error(IIDModel(), 1.0) == pytest.approx(0.5)
        assert noncausal_error(BandlimitedModel(w=0.5), 1.0) == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_interpolation_iid(self):
        assert interpolation_error(IIDModel(), 2.0) == pytest.approx(1.0)

    def test_ordering(self):
        """Test smoothing <= interpolation <= causal."""
        model = GaussMarkovModel(r=0.9)
        rho = 0.5
        assert noncausal_error(model, rho) <= interpolation_error(model, rho) <= causal_error(model, rho)

    def test_invalid_rho(self):
        with pytest.raises(ConstraintError):
            causal_error(IIDModel(), 0.0)

    def test_asymptotic_dispatch(self):
        model = GaussMarkovModel(r=0.5)
        assert asymptotic_error(model, 1.0, "causal") == causal_error(model, 1.0)
        assert asymptotic_error(model, 1.0, "noncausal") == interpolation_error(model, 1.0)
        assert asymptotic_error(model, 1.0, "smoothing") == noncausal_error(model, 1.0)
        with pytest.raises(ValueError):
            asymptotic_error(model, 1.0, "both")


class TestFiniteWindow:
    """Tests for the finite-window normal equations."""

    def test_iid_learns_nothing(self):
        assert finite_window_error(IIDModel(), 1.0, 16).sigma2 == pytest.approx(1.0)

    def test_single_smoothing_observation(self):
        """Test sigma^2 = 1/(1 + rho) when only Y_0 is seen."""
        result = finite_window_error(GaussMarkovModel(r=0.9), 3.0, 1, mode="smoothing")
        assert result.sigma2 == pytest.approx(0.25)

    def test_converges_to_causal(self):
        result = finite_window_error(GaussMarkovModel(r=0.5), 1.0, 1024)
        assert result.sigma2 == pytest.approx(GM_HALF_CAUSAL, abs=1e-6)
        assert result.to_dict() == {"sigma2": result.sigma2, "window": 1024, "mode": "causal"}

    @pytest.mark.parametrize("mode", ["causal", "noncausal", "smoothing"])
    def test_converges_to_closed_form(self, mode):
        model = GaussMarkovModel(r=0.9)
        result = finite_window_error(model, 0.5, 2048, mode=mode)
        assert result.sigma2 == pytest.approx(asymptotic_error(model, 0.5, mode), abs=1e-3)

    def test_nonincreasing_in_window(self):
        model = GaussMarkovModel(r=0.9)
        errors = [finite_window_error(model, 1.0, n).sigma2 for n in (1, 2, 4, 8, 16)]
        assert all(a >= b - 1e-12 for a, b in zip(errors, errors[1:]))

    def test_noncausal_beats_causal(self):
        model = GaussMarkovModel(r=0.9)
        assert (finite_window_error(model, 1.0, 4, mode="noncausal").sigma2
                <= finite_window_error(model, 1.0, 4, mode="causal").sigma2)

    @pytest.mark.parametrize("mode", ["causal", "smoothing"])
    def test_levinson_matches_cholesky(self, mode):
        model = BandlimitedModel(w=0.5)
        chol = finite_window_error(model, 2.0, 64, mode=mode, solver="cholesky")
        lev = finite_window_error(model, 2.0, 64, mode=mode, solver="levinson")
        assert lev.sigma2 == pytest.approx(chol.sigma2, rel=1e-9, abs=1e-12)
        assert lev.solver == "levinson"

    def test_levinson_falls_back_for_noncausal(self):
        result = finite_window_error(GaussMarkovModel(r=0.5), 1.0, 4, mode="noncausal",
                                     solver="levinson")
        assert result.solver == "cholesky"

    def test_unknown_solver(self):
        with pytest.raises(ValueError):
            finite_window_error(IIDModel(), 1.0, 4, solver="qr")

    def test_factorization_failure(self, monkeypatch):
        def broken(*args, **kwargs):
            raise LinAlgError("not positive definite")

        monkeypatch.setattr(prediction, "cho_factor", broken)
        with pytest.raises(NumericalError) as exc_info:
            finite_window_error(GaussMarkovModel(r=0.5), 1.0, 8)
        assert exc_info.value.condition >= 1.0

    def test_result_type(self):
        result = finite_window_error(IIDModel(), 1.0, 2)
        assert isinstance(result, PredictionError)
        assert result.mode == "causal"
