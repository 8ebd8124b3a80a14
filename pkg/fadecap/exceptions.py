"""
Error types raised by fadecap.

Every error carries a stable code (E000-E006), an optional hint for the
caller, and a context dict naming the model, parameter or setting involved.
The CLI prints ``str(error)`` and exits with status 1.
"""

from typing import Any, Dict, Optional


class FadeCapError(Exception):
    """
    Root of the fadecap error hierarchy.

    Attributes:
        message: What went wrong
        error_code: Stable code such as "E003"
        suggestion: Hint on how to recover, if one is known
        context: Offending values keyed by name
    """

    error_code: str = "E000"

    def __init__(
        self,
        message: str,
        suggestion: str = None,
        context: Dict[str, Any] = None,
        **kwargs
    ):
        self.message = message
        self.suggestion = suggestion
        self.context = dict(context) if context else {}
        super().__init__(self._render())

    def _render(self) -> str:
        lines = [f"[{self.error_code}] {self.message}"]
        if self.context:
            pairs = ", ".join(f"{key}={value}" for key, value in self.context.items())
            lines.append(f"  Context: {pairs}")
        if self.suggestion:
            lines.append(f"  Suggestion: {self.suggestion}")
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-dict form for logs and JSON output."""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "suggestion": self.suggestion,
            "context": self.context,
        }


class ModelError(FadeCapError):
    """Fading model rejected: bad parameters, invalid spectrum or divergent functional."""

    error_code = "E001"

    def __init__(self, message: str, kind: str = None, omega: float = None, **kwargs):
        suggestion = kwargs.pop("suggestion", None) or (
            f"Check the parameters of the '{kind}' model against its documented ranges."
            if kind else "Check the fading model parameters."
        )
        context = kwargs.pop("context", {})
        if kind:
            context["kind"] = kind
        if omega is not None:
            context["omega"] = omega
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


class ConstraintError(FadeCapError):
    """Power constraint or input distribution violates its admissible range."""

    error_code = "E002"

    def __init__(self, message: str, parameter: str = None, value: Any = None, **kwargs):
        suggestion = kwargs.pop("suggestion", None) or (
            "Peak power must be positive, the peak-to-average ratio at least 1, "
            "and P_ave may not exceed P_peak."
        )
        context = kwargs.pop("context", {})
        if parameter:
            context["parameter"] = parameter
        if value is not None:
            context["value"] = value
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


class ConvergenceError(FadeCapError):
    """
    Iterative computation stopped before meeting its tolerance.

    Carries the best value found so callers can flag instead of failing.
    """

    error_code = "E003"

    def __init__(
        self,
        message: str,
        best_value: float = None,
        iterations: int = None,
        **kwargs
    ):
        self.best_value = best_value
        self.iterations = iterations
        suggestion = kwargs.pop("suggestion", None) or (
            "Increase the iteration cap or loosen the tolerance in NumericsConfig."
        )
        context = kwargs.pop("context", {})
        if best_value is not None:
            context["best_value"] = best_value
        if iterations is not None:
            context["iterations"] = iterations
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


class NumericalError(FadeCapError):
    """Linear algebra failure: non-positive-definite covariance or singular system."""

    error_code = "E004"

    def __init__(self, message: str, condition: float = None, **kwargs):
        self.condition = condition
        suggestion = kwargs.pop("suggestion", None) or (
            f"The system is ill-conditioned (condition estimate {condition:.3g}); "
            "reduce the window or the peak power."
            if condition is not None else
            "Check that the covariance is Hermitian positive definite."
        )
        context = kwargs.pop("context", {})
        if condition is not None:
            context["condition"] = condition
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


class QuadratureError(FadeCapError):
    """Integral could not be evaluated, e.g. a spectrum with a non-integrable tail."""

    error_code = "E005"

    def __init__(self, message: str, model: str = None, **kwargs):
        suggestion = kwargs.pop("suggestion", None) or (
            "The spectral density must decay fast enough for its integral to be finite."
        )
        context = kwargs.pop("context", {})
        if model:
            context["model"] = model
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


class ConfigurationError(FadeCapError):
    """Bad numerics setting, config file or output path."""

    error_code = "E006"

    def __init__(self, message: str, setting: str = None, **kwargs):
        suggestion = kwargs.pop("suggestion", None) or (
            f"Check the configuration setting '{setting}'."
            if setting else "Review the sweep configuration file and command-line flags."
        )
        context = kwargs.pop("context", {})
        if setting:
            context["setting"] = setting
        super().__init__(message, suggestion=suggestion, context=context, **kwargs)


__all__ = [
    "FadeCapError",
    "ModelError",
    "ConstraintError",
    "ConvergenceError",
    "NumericalError",
    "QuadratureError",
    "ConfigurationError",
]
