"""
Model Registry - Central registry for fading model families
"""

import logging
from typing import Any, Dict, Optional, Type, Union
from urllib.parse import parse_qs

import numpy as np

from fadecap.exceptions import ModelError
from fadecap.models.base import ConsistencyReport, FadingModel

logger = logging.getLogger(__name__)

# Global model registry
_MODEL_REGISTRY: Dict[str, Type[FadingModel]] = {}


def register_model(kind: str, model_class: Type[FadingModel]):
    """
    Register a model class.

    Args:
        kind: Model kind (used in spec strings and config files)
        model_class: FadingModel subclass exposing ``from_params``
    """
    _MODEL_REGISTRY[kind.lower()] = model_class


def get_model_class(kind: str) -> Optional[Type[FadingModel]]:
    """Get a model class by kind, or None."""
    return _MODEL_REGISTRY.get(kind.lower())


def list_models() -> list:
    """List all registered model kinds."""
    return list(_MODEL_REGISTRY.keys())


def make_model(kind: str, params: Dict[str, Any] = None, **kwargs) -> FadingModel:
    """
    Instantiate a fading model.

    Args:
        kind: Registered model kind ("iid", "gauss_markov", ...)
        params: Parameters as a dict; string values are parsed
        **kwargs: Parameters as keywords (merged over ``params``)

    Examples:
        >>> make_model("gauss_markov", r=0.5).psd(0.0)
        array(3.)
    """
    model_class = get_model_class(kind)
    if model_class is None:
        raise ModelError(
            f"Unknown model kind '{kind}'",
            kind=kind,
            suggestion=f"Available kinds: {', '.join(list_models())}",
        )
    merged = {**(params or {}), **kwargs}
    if model_class.kind == "custom":
        try:
            return model_class(**merged)
        except TypeError as e:
            raise ModelError(
                f"Bad parameters for custom model: {e}",
                kind="custom",
                suggestion="Construct CustomModel(R=..., S=...) from Python code.",
            )
    return model_class.from_params(merged)


def parse_model_spec(spec: Union[str, FadingModel]) -> FadingModel:
    """
    Parse a model spec string such as ``gauss_markov?r=0.9``.

    The part before ``?`` is the kind; the query string carries parameters.
    A ``kind://`` prefix is accepted too.
    """
    if isinstance(spec, FadingModel):
        return spec
    text = str(spec).strip().strip("\"'")
    kind, _, query = text.replace("://", "", 1).partition("?")
    params = {k: v[0] if len(v) == 1 else ",".join(v) for k, v in parse_qs(query).items()}
    logger.debug("Parsed model spec: kind=%s, params=%s", kind, params)
    return make_model(kind.strip(), params)


def eval_R(model: FadingModel, k: int) -> complex:
    """R_H(k) as a Python complex."""
    return complex(model.autocorrelation(np.array([int(k)]))[0])


def eval_S(model: FadingModel, omega: float) -> float:
    """S_H(omega) as a Python float."""
    return float(model.psd(np.array([float(omega)]))[0])


def check_consistency(
    model: FadingModel, n_terms: int = 32, quad_points: int = 8192
) -> ConsistencyReport:
    """
    Compare R_H(k) against the quadrature of S_H(w) exp(i w k) for |k| <= n_terms.

    Returns:
        ConsistencyReport with the largest absolute discrepancy and its lag
    """
    if n_terms < 1:
        raise ModelError("n_terms must be at least 1", kind=model.kind)
    nodes, weights = model.quadrature(quad_points)
    spectrum = weights * model.psd(nodes)
    lags = np.arange(-n_terms, n_terms + 1)
    from_spectrum = np.exp(1j * np.outer(lags, nodes)) @ spectrum
    errors = np.abs(model.autocorrelation(lags) - from_spectrum)
    worst = int(np.argmax(errors))
    report = ConsistencyReport(
        model=model.name,
        n_terms=n_terms,
        quad_points=quad_points,
        max_abs_error=float(errors[worst]),
        worst_lag=int(lags[worst]),
    )
    logger.debug("Consistency check %s: max error %.3e at lag %d",
                 model.name, report.max_abs_error, report.worst_lag)
    return report


# Auto-register built-in models
def _register_builtin_models():
    """Register all built-in model families."""
    from fadecap.models.builtin import (
        BandlimitedModel,
        CustomModel,
        FiniteMemoryModel,
        GaussMarkovModel,
        IIDModel,
    )

    register_model("iid", IIDModel)
    register_model("gauss_markov", GaussMarkovModel)
    register_model("ar1", GaussMarkovModel)
    register_model("bandlimited", BandlimitedModel)
    register_model("finite_memory", FiniteMemoryModel)
    register_model("custom", CustomModel)


_register_builtin_models()
