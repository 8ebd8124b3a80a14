"""
Tests for fading models and the model registry.
"""

import numpy as np
import pytest

from fadecap.exceptions import ModelError
from fadecap.models import (
    BandlimitedModel,
    CustomModel,
    FiniteMemoryModel,
    GaussMarkovModel,
    IIDModel,
    check_consistency,
    eval_R,
    eval_S,
    get_model_class,
    list_models,
    make_model,
    parse_model_spec,
)
from fadecap.models.base import TWO_PI


class TestBuiltinModels:
    """Autocorrelations and spectra of the built-in families."""

    def test_iid(self):
        model = IIDModel()
        assert eval_R(model, 0) == 1
        assert eval_R(model, 3) == 0
        assert eval_S(model, 1.234) == 1.0
        assert model.name == "iid"

    def test_gauss_markov(self):
        """Test R(k) = r^|k| and S(0) = (1 + r)/(1 - r)."""
        model = GaussMarkovModel(r=0.5)
        assert eval_R(model, 2) == pytest.approx(0.25)
        assert eval_R(model, -2) == pytest.approx(0.25)
        assert eval_S(model, 0.0) == pytest.approx(3.0)
        assert eval_S(model, np.pi) == pytest.approx(1.0 / 3.0)
        assert model.name == "gauss_markov(r=0.5)"
        assert model.closed_form_lambda_inf() == pytest.approx(5.0 / 3.0)

    def test_bandlimited(self):
        """Test sinc autocorrelation and flat spectrum."""
        model = BandlimitedModel(w=0.5)
        assert eval_R(model, 1) == pytest.approx(np.sinc(0.5))
        assert eval_R(model, 2) == pytest.approx(0.0, abs=1e-15)
        assert eval_S(model, 0.1) == 2.0
        assert eval_S(model, -0.1) == 2.0
        assert eval_S(model, np.pi) == 0.0
        assert model.breakpoints() == pytest.approx((np.pi / 2, TWO_PI - np.pi / 2))
        assert BandlimitedModel(w=1.0).breakpoints() == ()

    def test_finite_memory(self):
        """Test taps as R(1..K) with a trigonometric-polynomial spectrum."""
        model = FiniteMemoryModel(taps=(0.5,))
        assert eval_R(model, 1) == 0.5
        assert eval_R(model, 2) == 0
        assert eval_S(model, 0.0) == pytest.approx(2.0)
        assert eval_S(model, np.pi) == pytest.approx(0.0, abs=1e-15)

    def test_complex_taps_are_hermitian(self):
        """Test R(-k) = conj(R(k))."""
        model = FiniteMemoryModel(taps=(0.3j,))
        assert eval_R(model, 1) == pytest.approx(0.3j)
        assert eval_R(model, -1) == pytest.approx(-0.3j)
        assert eval_S(model, np.pi / 2) == pytest.approx(1.6)

    def test_psd_periodic(self):
        model = GaussMarkovModel(r=0.9)
        assert eval_S(model, 0.3) == pytest.approx(eval_S(model, 0.3 + TWO_PI))


class TestModelValidation:
    """Out-of-range parameters are rejected."""

    @pytest.mark.parametrize("r", [-0.1, 1.0, 1.5])
    def test_gauss_markov_range(self, r):
        with pytest.raises(ModelError):
            GaussMarkovModel(r=r)

    @pytest.mark.parametrize("w", [0.0, 1.2])
    def test_bandlimited_range(self, w):
        with pytest.raises(ModelError):
            BandlimitedModel(w=w)

    def test_finite_memory_negative_spectrum(self):
        """Test that the offending frequency is reported."""
        with pytest.raises(ModelError) as exc_info:
            FiniteMemoryModel(taps=(0.6,))
        assert exc_info.value.context["omega"] == pytest.approx(np.pi, abs=1e-3)

    def test_custom_model_checks(self):
        """Test R(0), sign and unit-mass checks of custom models."""
        with pytest.raises(ModelError):
            CustomModel(R=lambda k: 0.5 if k == 0 else 0.0, S=lambda w: np.ones_like(w))
        with pytest.raises(ModelError):
            CustomModel(R=lambda k: 1.0 if k == 0 else 0.0, S=lambda w: 2.0 * np.ones_like(w))
        with pytest.raises(ModelError):
            CustomModel(R=lambda k: 1.0 if k == 0 else 0.0, S=lambda w: np.cos(w) + 1.0 - 1.5)

    def test_custom_model_accepts_valid(self):
        model = CustomModel(
            R=lambda k: 1.0 if k == 0 else 0.0,
            S=lambda w: np.ones_like(w),
            label="white",
            lambda_inf=1.0,
        )
        assert model.name == "white"
        assert eval_R(model, 5) == 0
        assert model.closed_form_lambda_inf() == 1.0


class TestQuadrature:
    """Quadrature rules on the circle."""

    @pytest.mark.parametrize("model", [
        IIDModel(), GaussMarkovModel(r=0.9), BandlimitedModel(w=0.3),
    ])
    def test_weights_sum_to_one(self, model):
        nodes, weights = model.quadrature(1024)
        assert weights.sum() == pytest.approx(1.0, abs=1e-13)
        assert np.all((nodes >= 0) & (nodes < TWO_PI))

    def test_unit_mass(self):
        """Test int S dw/2pi = R(0) = 1."""
        for model in (GaussMarkovModel(r=0.9), BandlimitedModel(w=0.3),
                      FiniteMemoryModel(taps=(0.4, 0.1))):
            nodes, weights = model.quadrature(4096)
            assert weights @ model.psd(nodes) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("model", [
        GaussMarkovModel(r=0.5), BandlimitedModel(w=0.5), FiniteMemoryModel(taps=(0.3, -0.1j)),
    ])
    def test_consistency(self, model):
        """Test that R and S form a Fourier pair."""
        report = check_consistency(model, n_terms=16)
        assert report.max_abs_error < 1e-9
        assert report.to_dict()["model"] == model.name


class TestRegistry:
    """Tests for the model registry and spec parsing."""

    def test_builtin_kinds(self):
        kinds = list_models()
        for kind in ("iid", "gauss_markov", "ar1", "bandlimited", "finite_memory", "custom"):
            assert kind in kinds
        assert get_model_class("GAUSS_MARKOV") is GaussMarkovModel
        assert get_model_class("nope") is None

    def test_make_model(self):
        assert make_model("gauss_markov", r=0.5) == GaussMarkovModel(r=0.5)
        assert make_model("bandlimited", {"w": "0.25"}) == BandlimitedModel(w=0.25)

    def test_unknown_kind(self):
        with pytest.raises(ModelError) as exc_info:
            make_model("rician")
        assert "gauss_markov" in exc_info.value.suggestion

    def test_unexpected_parameter(self):
        with pytest.raises(ModelError):
            make_model("gauss_markov", r=0.5, w=0.1)

    @pytest.mark.parametrize("spec, expected", [
        ("iid", IIDModel()),
        ("gauss_markov?r=0.9", GaussMarkovModel(r=0.9)),
        ("gauss_markov://?r=0.9", GaussMarkovModel(r=0.9)),
        ("ar1?r=0.5", GaussMarkovModel(r=0.5)),
        ("bandlimited?w=0.5", BandlimitedModel(w=0.5)),
        ("finite_memory?taps=0.5,0.2", FiniteMemoryModel(taps=(0.5, 0.2))),
        ("finite_memory?taps=0.1-0.2i", FiniteMemoryModel(taps=(0.1 - 0.2j,))),
    ])
    def test_parse_model_spec(self, spec, expected):
        assert parse_model_spec(spec) == expected

    def test_parse_model_passthrough(self):
        model = GaussMarkovModel(r=0.5)
        assert parse_model_spec(model) is model

    def test_custom_not_from_spec(self):
        with pytest.raises(ModelError):
            parse_model_spec("custom?x=1")
