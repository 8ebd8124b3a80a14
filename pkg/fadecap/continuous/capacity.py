"""
Continuous-time capacity under peak and average power

    I(P) = int log(1 + P S_H(w)) dw/2pi                      (nats/s)
    C(P_ave, P_peak) = P_ave - (P_ave / P_peak) I(P_peak)

Integrals over the real line use w = scale * tan(u), which maps it onto
(-pi/2, pi/2), with composite Gauss-Legendre panels split at the images of
the spectrum's breakpoints.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from fadecap.config import get_numerics
from fadecap.continuous.models import MASS_TOL, CTFadingModel
from fadecap.exceptions import ConstraintError, ModelError, QuadratureError
from fadecap.models.base import TWO_PI, panel_quadrature
from fadecap.spectral import QuadratureResult

logger = logging.getLogger(__name__)

# Relative error above which an I(P) evaluation is reported
REPORT_TOL = 1e-7


def _check_tail(model: CTFadingModel):
    """Reject spectra decaying no faster than 1/|w|."""
    near, far = 1e3 * model.scale, 1e6 * model.scale
    values = model.evaluate(np.array([-far, -near, near, far]))
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"PSD of {model.name} is not finite in the tail", model=model.name)
    if np.any(values < 0):
        raise ModelError(f"PSD of {model.name} is negative", kind=model.name)
    for inner, outer in ((values[1], values[0]), (values[2], values[3])):
        if outer > 0 and far * outer >= 0.5 * near * inner:
            raise QuadratureError(
                f"PSD of {model.name} decays like 1/|w| or slower; its integral diverges",
                model=model.name,
            )


def _transformed(model: CTFadingModel, fn: Callable[[np.ndarray], np.ndarray], n_points: int) -> float:
    cuts = sorted(math.atan(b / model.scale) for b in model.breakpoints)
    edges = np.array([-0.5 * math.pi] + cuts + [0.5 * math.pi])
    u, weights = panel_quadrature(edges, n_points, TWO_PI)
    omega = model.scale * np.tan(u)
    jacobian = model.scale / np.cos(u) ** 2
    return float(np.sum(weights * fn(model.evaluate(omega)) * jacobian))


def ct_integrate(
    model: CTFadingModel,
    fn: Callable[[np.ndarray], np.ndarray],
    n_points: int = None,
) -> QuadratureResult:
    """int fn(S_H(w)) dw/2pi with the half-rule difference as error estimate."""
    n_points = n_points or get_numerics().ct_panels
    _check_tail(model)
    full = _transformed(model, fn, n_points)
    half = _transformed(model, fn, max(n_points // 2, 16))
    return QuadratureResult(value=full, error=abs(full - half))


def ct_unit_mass(model: CTFadingModel, n_points: int = None) -> float:
    """int S_H dw/2pi, which must equal 1."""
    return ct_integrate(model, lambda s: s, n_points).value


def validate_ct_model(model: CTFadingModel, n_points: int = None) -> CTFadingModel:
    mass = ct_unit_mass(model, n_points)
    if abs(mass - 1.0) > MASS_TOL:
        raise ModelError(
            f"PSD of {model.name} has mass {mass:.9g}, expected 1",
            kind=model.name,
            suggestion="Normalize the spectrum so that E|H(t)|^2 = 1.",
        )
    return model


def ct_I_with_error(model: CTFadingModel, P_peak: float, n_points: int = None) -> QuadratureResult:
    if P_peak < 0:
        raise ConstraintError(f"P_peak must be nonnegative, got {P_peak}",
                              parameter="P_peak", value=P_peak)
    if P_peak == 0:
        return QuadratureResult(0.0, 0.0)
    result = ct_integrate(model, lambda s: np.log1p(P_peak * s), n_points)
    if result.error > REPORT_TOL * max(abs(result.value), 1e-300):
        logger.warning("ct_I(%s, P=%g): quadrature error estimate %.3g",
                       model.name, P_peak, result.error)
    return result


def ct_I(model: CTFadingModel, P_peak: float, n_points: int = None) -> float:
    """
    I(P_peak) in nats per second.

    Examples:
        >>> ct_I(make_ct_model("ornstein_uhlenbeck", gamma=1.0), 2.0)
        1.2360679...
    """
    return ct_I_with_error(model, P_peak, n_points).value


def ct_capacity(model: CTFadingModel, P_ave: float, P_peak: float, n_points: int = None) -> float:
    """
    Capacity per unit time, nats per second.

    Raises:
        ConstraintError: P_ave outside [0, P_peak]
    """
    if not P_peak > 0:
        raise ConstraintError(f"P_peak must be positive, got {P_peak}",
                              parameter="P_peak", value=P_peak)
    if P_ave < 0 or P_ave > P_peak:
        raise ConstraintError(
            f"Average power {P_ave} must lie in [0, P_peak={P_peak}]",
            parameter="P_ave", value=P_ave,
        )
    ratio = ct_I(model, P_peak, n_points) / P_peak
    return P_ave * (1.0 - ratio)
