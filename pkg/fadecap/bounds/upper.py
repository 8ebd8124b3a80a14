"""
Closed-form upper bounds and low-SNR asymptotes.

    theta(rho, beta) = min(1/beta, 1/I(rho) - 1/rho)
    U(rho, beta)     = log(1 + rho theta) - theta I(rho)
    C_u(rho, beta)   = (rho - I(rho)) / beta
    f(beta)          = lambda^2/8                       if lambda/2 <= 1/beta
                       lambda/(2 beta) - 1/(2 beta^2)   otherwise
"""

from __future__ import annotations

import logging
import math
from typing import Tuple

from fadecap.bounds.models import validate_constraints
from fadecap.exceptions import ConstraintError
from fadecap.models.base import FadingModel
from fadecap.spectral import compute_I, compute_lambda_inf

logger = logging.getLogger(__name__)


def _check_beta(beta: float):
    if not beta >= 1:
        raise ConstraintError(f"Peak-to-average ratio must be >= 1, got {beta}",
                              parameter="beta", value=beta)


def lemma_bound(rho: float, beta: float, J: float) -> Tuple[float, float]:
    """
    Maximize log(1 + rho theta) - theta J over theta in [0, 1/beta].

    J is log(1 + rho sigma^2) for the prediction error sigma^2 of the fading
    given the conditioning outputs; J = I(rho) gives U.

    Returns:
        (value, theta) with theta the maximizer
    """
    validate_constraints(rho, beta)
    if J < 0:
        raise ConstraintError(f"J must be nonnegative, got {J}", parameter="J", value=J)
    unclamped = math.inf if J == 0 else 1.0 / J - 1.0 / rho
    theta = min(1.0 / beta, max(unclamped, 0.0))
    value = math.log1p(rho * theta) - theta * J
    return max(value, 0.0), theta


def theta_star(model: FadingModel, rho: float, beta: float) -> float:
    """Duty cycle attaining U(rho, beta); lies in [0, 1/beta]."""
    validate_constraints(rho, beta)
    return lemma_bound(rho, beta, compute_I(model, rho))[1]


def upper_bound_U(model: FadingModel, rho: float, beta: float) -> float:
    """
    U(rho, beta) in nats per symbol.

    Examples:
        >>> upper_bound_U(IIDModel(), 1.0, 1.0)
        0.0596601...
    """
    value, theta = lemma_bound(rho, beta, compute_I(model, rho))
    logger.debug("U(%s, rho=%g, beta=%g) = %.12g (theta=%.6g)",
                 model.name, rho, beta, value, theta)
    return value


def upper_bound_window(model: FadingModel, rho: float, beta: float, n: int) -> float:
    """
    Per-symbol bound when only the ``n`` most recent outputs are observed.

    Uses the all-peak prediction error of the causal window of length n; it is
    at most U and increases to U as n grows.
    """
    from fadecap.prediction import finite_window_error

    validate_constraints(rho, beta)
    sigma2 = finite_window_error(model, rho, n, mode="causal").sigma2
    return lemma_bound(rho, beta, math.log1p(rho * sigma2))[0]


def bound_Cu(model: FadingModel, rho: float, beta: float) -> float:
    """C_u(rho, beta) = (rho - I(rho)) / beta."""
    validate_constraints(rho, beta)
    return (rho - compute_I(model, rho)) / beta


def f_coefficient(lambda_inf: float, beta: float) -> float:
    """f(beta) from a given lambda; both branches meet at lambda/2 = 1/beta."""
    _check_beta(beta)
    if lambda_inf / 2.0 <= 1.0 / beta:
        return lambda_inf * lambda_inf / 8.0
    return lambda_inf / (2.0 * beta) - 1.0 / (2.0 * beta * beta)


def asymptote_f(model: FadingModel, beta: float) -> float:
    """Exact rho^2 coefficient of capacity as rho -> 0."""
    return f_coefficient(compute_lambda_inf(model), beta)


def asymptote_Cll(model: FadingModel, beta: float) -> float:
    """rho^2 coefficient of the QPSK-with-prediction lower bound: (lambda - 1)/(2 beta)."""
    _check_beta(beta)
    return (compute_lambda_inf(model) - 1.0) / (2.0 * beta)


def asymptote_Cu(model: FadingModel, beta: float) -> float:
    """rho^2 coefficient of C_u: lambda/(2 beta)."""
    _check_beta(beta)
    return compute_lambda_inf(model) / (2.0 * beta)


def closed_form_U_peak_limited(model: FadingModel, rho: float) -> float:
    """
    U when the duty-cycle constraint is inactive: -log(I/rho) - 1 + I/rho.

    Valid whenever 1/beta >= 1/I - 1/rho.
    """
    ratio = compute_I(model, rho) / rho
    return -math.log(ratio) - 1.0 + ratio
