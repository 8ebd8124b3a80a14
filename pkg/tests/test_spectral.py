"""
Tests for spectral functionals: I(rho), lambda_inf, nu_inf and their cache.
"""

import math

import numpy as np
import pytest

from fadecap.config import configure_numerics, reset_numerics
from fadecap.exceptions import ConstraintError, ModelError
from fadecap.models import (
    BandlimitedModel,
    CustomModel,
    FiniteMemoryModel,
    GaussMarkovModel,
    IIDModel,
)
from fadecap.spectral import (
    SpectralCache,
    compute_I,
    compute_I_with_error,
    compute_lambda_inf,
    compute_nu_inf,
    get_spectral_cache,
    lambda_inf_series,
    small_rho_diagnostics,
    spectral_functionals,
    taylor_I,
)


def gauss_markov_I(r, rho):
    """Closed form log c with c (1 + q^2) = 1 + r^2 + rho (1 - r^2), c q = r."""
    a = 1.0 + r * r + rho * (1.0 - r * r)
    return math.log((a + math.sqrt(a * a - 4.0 * r * r)) / 2.0)


class TestComputeI:
    """Tests for I(rho) = int log(1 + rho S) dw/2pi."""

    @pytest.mark.parametrize("rho", [1e-3, 0.1, 1.0, 10.0])
    def test_iid(self, rho):
        assert compute_I(IIDModel(), rho) == pytest.approx(math.log1p(rho), rel=1e-13)

    @pytest.mark.parametrize("r", [0.5, 0.9])
    @pytest.mark.parametrize("rho", [0.01, 1.0, 10.0])
    def test_gauss_markov_closed_form(self, r, rho):
        assert compute_I(GaussMarkovModel(r=r), rho) == pytest.approx(
            gauss_markov_I(r, rho), rel=1e-10
        )

    def test_gauss_markov_reference(self):
        """Test I(1) = log((2 + sqrt 3)/2) for r = 0.5."""
        assert compute_I(GaussMarkovModel(r=0.5), 1.0) == pytest.approx(0.623810, abs=1e-6)

    def test_bandlimited(self):
        """Test I = w log(1 + rho/w) for a flat band of width w."""
        model = BandlimitedModel(w=0.25)
        assert compute_I(model, 2.0) == pytest.approx(0.25 * math.log(9.0), rel=1e-12)

    def test_finite_memory(self):
        """Test the single-tap closed form log(((1 + rho) + sqrt(1 + 2 rho))/2)."""
        rho = 3.0
        expected = math.log(((1 + rho) + math.sqrt(1 + 2 * rho)) / 2)
        assert compute_I(FiniteMemoryModel(taps=(0.5,)), rho) == pytest.approx(expected, rel=1e-10)

    def test_zero_and_negative(self):
        assert compute_I(GaussMarkovModel(r=0.9), 0.0) == 0.0
        with pytest.raises(ConstraintError):
            compute_I(IIDModel(), -1.0)

    def test_bounded_by_rho(self):
        """Test I(rho) <= rho and I(rho) <= log(1 + rho)."""
        for model in (GaussMarkovModel(r=0.9), BandlimitedModel(w=0.5)):
            for rho in (0.01, 1.0):
                value = compute_I(model, rho)
                assert 0 < value <= math.log1p(rho) + 1e-15

    def test_error_estimate(self):
        result = compute_I_with_error(GaussMarkovModel(r=0.5), 1.0)
        assert result.error < 1e-12


class TestLambdaInf:
    """Tests for lambda_inf and nu_inf."""

    @pytest.mark.parametrize("model, expected", [
        (IIDModel(), 1.0),
        (GaussMarkovModel(r=0.5), 5.0 / 3.0),
        (GaussMarkovModel(r=0.9), 9.526315789473685),
        (BandlimitedModel(w=0.5), 2.0),
        (FiniteMemoryModel(taps=(0.5,)), 1.5),
    ])
    def test_values(self, model, expected):
        assert compute_lambda_inf(model) == pytest.approx(expected, rel=1e-9)

    def test_nu_inf_gauss_markov(self):
        """Test nu_inf = (1 + 4r^2 + r^4)/(1 - r^2)^2."""
        for r in (0.5, 0.9):
            expected = (1 + 4 * r ** 2 + r ** 4) / (1 - r ** 2) ** 2
            assert compute_nu_inf(GaussMarkovModel(r=r)) == pytest.approx(expected, rel=1e-9)

    def test_series_converges_quickly(self):
        series = lambda_inf_series(GaussMarkovModel(r=0.9))
        assert not series.capped
        assert series.tail_estimate == 0.0
        assert series.value == pytest.approx(9.526315789473685, abs=1e-10)
        assert series.lags < 1000

    def test_series_capped_with_tail(self):
        """Test that sinc autocorrelations hit the cap and get a tail estimate."""
        series = lambda_inf_series(BandlimitedModel(w=0.5))
        assert series.capped
        assert series.tail_estimate > 0
        assert series.value == pytest.approx(2.0, abs=1e-6)
        assert series.to_dict()["capped"] is True


class TestSeriesDivergence:
    """Autocorrelations that are not square summable."""

    def setup_method(self):
        reset_numerics()

    def teardown_method(self):
        reset_numerics()

    def test_divergent_series(self):
        """Test that |R(k)|^2 ~ 1/k is rejected."""
        configure_numerics(series_cap=10_000)
        model = CustomModel(
            R=lambda k: 1.0 / math.sqrt(1.0 + abs(k)),
            S=lambda w: np.ones_like(w),
            label="slow",
        )
        with pytest.raises(ModelError):
            lambda_inf_series(model)


class TestTaylorAndDiagnostics:
    """Small-rho expansions."""

    def test_taylor_second_order(self):
        model = GaussMarkovModel(r=0.5)
        rho = 1e-3
        assert taylor_I(model, rho) == pytest.approx(compute_I(model, rho), rel=1e-5)

    def test_taylor_third_order_is_closer(self):
        model = GaussMarkovModel(r=0.5)
        rho = 1e-2
        exact = compute_I(model, rho)
        assert abs(taylor_I(model, rho, order=3) - exact) < abs(taylor_I(model, rho) - exact)

    def test_taylor_order(self):
        with pytest.raises(ValueError):
            taylor_I(IIDModel(), 0.1, order=4)

    def test_inverse_gap(self):
        """Test 1/I - 1/rho -> lambda_inf/2."""
        diag = small_rho_diagnostics(GaussMarkovModel(r=0.5), 1e-3)
        assert diag.half_lambda == pytest.approx(5.0 / 6.0)
        assert diag.relative_gap < 1e-2

    def test_nu_sign(self):
        """Test that the +nu_inf term tracks I/rho - 1."""
        diag = small_rho_diagnostics(GaussMarkovModel(r=0.5), 1e-2)
        assert abs(diag.excess - diag.excess_nu_plus) < abs(diag.excess - diag.excess_nu_minus)

    def test_diagnostics_need_positive_rho(self):
        with pytest.raises(ConstraintError):
            small_rho_diagnostics(IIDModel(), 0.0)


class TestSpectralCache:
    """Tests for the thread-safe functional cache."""

    def test_equal_models_share_entry(self):
        cache = SpectralCache()
        first = cache.get(GaussMarkovModel(r=0.7), 1024)
        second = cache.get(GaussMarkovModel(r=0.7), 1024)
        assert first is second
        stats = cache.stats()
        assert stats["entries"] == 1
        assert stats["hits"] == 1
        assert stats["misses"] == 1
        assert stats["models"] == ["gauss_markov(r=0.7)"]

    def test_grid_size_is_part_of_key(self):
        cache = SpectralCache()
        assert cache.get(IIDModel(), 64) is not cache.get(IIDModel(), 128)

    def test_clear(self):
        cache = SpectralCache()
        cache.get(IIDModel(), 64)
        cache.clear()
        assert cache.stats()["entries"] == 0

    def test_memo_of_I(self):
        funcs = spectral_functionals(GaussMarkovModel(r=0.3))
        compute_I(GaussMarkovModel(r=0.3), 0.5)
        assert 0.5 in funcs.I_of_rho
        assert funcs.to_dict()["lambda_inf"] == pytest.approx((1 + 0.09) / (1 - 0.09))

    def test_global_cache(self):
        assert get_spectral_cache() is get_spectral_cache()
