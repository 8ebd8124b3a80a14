"""
Tests for fadecap exception classes.
"""

import pytest

from fadecap.exceptions import (
    ConfigurationError,
    ConstraintError,
    ConvergenceError,
    FadeCapError,
    ModelError,
    NumericalError,
    QuadratureError,
)


class TestErrorCodes:
    """Each exception carries a stable code."""

    @pytest.mark.parametrize("cls, code", [
        (ModelError, "E001"),
        (ConstraintError, "E002"),
        (ConvergenceError, "E003"),
        (NumericalError, "E004"),
        (QuadratureError, "E005"),
        (ConfigurationError, "E006"),
    ])
    def test_codes(self, cls, code):
        """Test error codes and base class."""
        err = cls("boom")
        assert err.error_code == code
        assert isinstance(err, FadeCapError)
        assert str(err).startswith(f"[{code}] boom")


class TestErrorContext:
    """Context and suggestions rendered into the message."""

    def test_model_error_context(self):
        """Test that kind and omega land in the context."""
        err = ModelError("negative spectrum", kind="finite_memory", omega=3.14)
        assert err.context == {"kind": "finite_memory", "omega": 3.14}
        assert "Context: kind=finite_memory, omega=3.14" in str(err)
        assert "finite_memory" in err.suggestion

    def test_convergence_error_best_value(self):
        """Test that the best value survives on the exception."""
        err = ConvergenceError("no luck", best_value=0.25, iterations=10)
        assert err.best_value == 0.25
        assert err.iterations == 10
        assert err.context["best_value"] == 0.25

    def test_numerical_error_condition(self):
        """Test that the condition estimate is reported."""
        err = NumericalError("singular", condition=1e17)
        assert err.condition == 1e17
        assert "1e+17" in err.suggestion

    def test_custom_suggestion_wins(self):
        """Test that an explicit suggestion replaces the default."""
        err = ConfigurationError("bad", setting="rho", suggestion="Use a positive grid.")
        assert err.suggestion == "Use a positive grid."
        assert err.context == {"setting": "rho"}

    def test_to_dict(self):
        """Test dictionary serialization."""
        err = ConstraintError("beta too small", parameter="beta", value=0.5)
        data = err.to_dict()
        assert data["error_code"] == "E002"
        assert data["message"] == "beta too small"
        assert data["context"] == {"parameter": "beta", "value": 0.5}
        assert data["suggestion"]
