"""
MMSE prediction of the fading from all-peak observations Y_k = sqrt(rho) H_k + W_k.

Closed forms for infinite observation sets:

    causal (past only)        (exp(I(rho)) - 1) / rho
    smoothing (all indices)   1 - rho int S^2 / (1 + rho S)
    interpolation (all but 0) (1 / int (1 + rho S)^-1 - 1) / rho

and a finite-window oracle solving the normal equations of the window.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, solve_toeplitz

from fadecap.exceptions import ConstraintError, NumericalError
from fadecap.models.base import FadingModel
from fadecap.spectral import compute_I, spectral_functionals

logger = logging.getLogger(__name__)

MODES = ("causal", "noncausal", "smoothing")
SOLVERS = ("cholesky", "levinson")


@dataclass(frozen=True)
class PredictionError:
    """Mean-squared error of the fading estimate at index 0."""
    sigma2: float
    window: Union[int, str]
    mode: str
    solver: Optional[str] = None

    def to_dict(self):
        return {"sigma2": self.sigma2, "window": self.window, "mode": self.mode}


def _check_rho(rho: float):
    if not rho > 0:
        raise ConstraintError(f"rho must be positive, got {rho}", parameter="rho", value=rho)


def causal_error(model: FadingModel, rho: float) -> float:
    """One-step prediction error from the infinite past: expm1(I(rho)) / rho."""
    _check_rho(rho)
    return math.expm1(compute_I(model, rho)) / rho


def noncausal_error(model: FadingModel, rho: float) -> float:
    """Error given every observation including index 0: 1 - rho int S^2/(1 + rho S)."""
    _check_rho(rho)
    funcs = spectral_functionals(model)
    return 1.0 - rho * funcs.integrate(lambda s: s * s / (1.0 + rho * s)).value


def interpolation_error(model: FadingModel, rho: float) -> float:
    """Error given every observation except index 0."""
    _check_rho(rho)
    funcs = spectral_functionals(model)
    harmonic = funcs.integrate(lambda s: 1.0 / (1.0 + rho * s)).value
    return (1.0 / harmonic - 1.0) / rho


def asymptotic_error(model: FadingModel, rho: float, mode: str) -> float:
    """Closed-form limit of ``finite_window_error`` for the given mode."""
    if mode == "causal":
        return causal_error(model, rho)
    if mode == "noncausal":
        return interpolation_error(model, rho)
    if mode == "smoothing":
        return noncausal_error(model, rho)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def window_offsets(n: int, mode: str) -> np.ndarray:
    """
    Observation indices relative to the estimated symbol, in ascending order.

    causal: -n..-1; noncausal: n indices split around 0 (extra one in the
    past when n is odd), 0 excluded; smoothing: n indices centred on 0.
    """
    if n < 1:
        raise ValueError(f"window must be at least 1, got {n}")
    if mode == "causal":
        return np.arange(-n, 0)
    if mode == "noncausal":
        past = (n + 1) // 2
        return np.concatenate((np.arange(-past, 0), np.arange(1, n - past + 1)))
    if mode == "smoothing":
        past = (n - 1) // 2
        return np.arange(-past, n - past)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def finite_window_error(
    model: FadingModel,
    rho: float,
    n: int,
    mode: str = "causal",
    solver: str = "cholesky",
) -> PredictionError:
    """
    Error of the MMSE estimate of H_0 from the window's observations.

    sigma^2 = 1 - rho g^H (rho R_F + I)^-1 g with R_F[k, l] = R_H(f_k - f_l)
    and g_k = R_H(f_k).

    Args:
        model: Fading model
        rho: Peak (and observation) power
        n: Number of observations
        mode: "causal", "noncausal" or "smoothing"
        solver: "cholesky" (any window) or "levinson" (contiguous windows)

    Raises:
        NumericalError: factorization failure, with a condition estimate
    """
    _check_rho(rho)
    if solver not in SOLVERS:
        raise ValueError(f"solver must be one of {SOLVERS}, got {solver!r}")
    offsets = window_offsets(n, mode)
    span = int(offsets[-1] - offsets[0])
    reach = max(span, int(np.abs(offsets).max()))
    table = model.autocorrelation(np.arange(-reach, reach + 1))
    if np.all(table.imag == 0):
        table = table.real
    g = table[offsets + reach]

    if solver == "levinson" and mode == "noncausal":
        logger.debug("Levinson needs a contiguous window; using Cholesky for noncausal")
        solver = "cholesky"

    try:
        if solver == "levinson":
            # Ascending contiguous offsets make R_F Toeplitz: column R(k), row R(-k)
            column = rho * table[reach:reach + len(offsets)]
            row = rho * table[reach::-1][:len(offsets)]
            column[0] += 1.0
            row[0] += 1.0
            x = solve_toeplitz((column, row), g)
        else:
            diffs = offsets[:, None] - offsets[None, :]
            A = rho * table[diffs + reach]
            A[np.diag_indices_from(A)] += 1.0
            x = cho_solve(cho_factor(A, lower=True), g)
    except (LinAlgError, ValueError) as e:
        diffs = offsets[:, None] - offsets[None, :]
        A = rho * table[diffs + reach] + np.eye(len(offsets))
        condition = float(np.linalg.cond(A))
        raise NumericalError(
            f"Window solve failed for {model.name} (n={n}, mode={mode}): {e}",
            condition=condition,
        )

    sigma2 = 1.0 - rho * float(np.real(np.vdot(g, x)))
    if sigma2 < -1e-9 or sigma2 > 1 + 1e-9:
        logger.warning("Window error %.3g outside [0, 1] for %s n=%d", sigma2, model.name, n)
    return PredictionError(
        sigma2=float(np.clip(sigma2, 0.0, 1.0)), window=n, mode=mode, solver=solver
    )
