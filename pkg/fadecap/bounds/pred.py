"""
Prediction-based upper bound U_pred.

    U_pred(rho, beta) = max_{P <= rho/beta} { C_1(rho, P) + log((1 + P) / (1 + P sigma^2)) }

C_1 is the capacity of the memoryless Rayleigh channel Y = X H + W under a
peak power rho and an average power P, and sigma^2 = (exp(I(rho)) - 1)/rho is
the causal prediction error at peak power.

C_1 is computed on a power grid. Only |X|^2 matters: given |X|^2 = p the
output |Y|^2 is exponential with mean 1 + p, so

    I = sum_i q_i D(Exp(1 + p_i) || sum_j q_j Exp(1 + p_j))

The masses q are found by exponentiated-gradient ascent (a Blahut-Arimoto
update with an adaptive step), each step projected onto E[p] <= P by an
exponential tilt whose exponent is the average-power Lagrange multiplier.
The duality gap max_i(D_i - s (p_i - P)) - I bounds how far I is from the
capacity on the grid; iteration stops once it is small relative to I.

The objective is nondecreasing in the average power, so the outer
maximization is a single solve at P = rho/beta.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.optimize import brentq
from scipy.special import logsumexp

from fadecap.bounds.models import SingleLetterSolution, UPredResult, validate_constraints
from fadecap.config import get_numerics
from fadecap.exceptions import ConstraintError, ConvergenceError
from fadecap.models.base import FadingModel
from fadecap.spectral import compute_I

logger = logging.getLogger(__name__)

# Smallest grid power relative to rho
GRID_FLOOR = 1e-3

# Gap, in units of gap_tol, accepted once I has stopped moving
SETTLED_GAP_FACTOR = 100.0


def power_grid(rho: float, size: int = None) -> np.ndarray:
    """{0} plus a geometric grid from rho*1e-3 up to rho."""
    size = size or get_numerics().single_letter_grid
    return np.concatenate(([0.0], np.geomspace(rho * GRID_FLOOR, rho, size - 1)))


class _MemorylessRayleigh:
    """Divergences D_i of the exponential output laws against their q-mixture."""

    def __init__(self, powers: np.ndarray, laguerre_nodes: int):
        self.powers = powers
        t, self.weights = laggauss(laguerre_nodes)
        log1p_p = np.log1p(powers)
        # exponent[i, k, j] = log f_j(v) - log f_i(v) at v = (1 + p_i) t_k
        self.exponent = (
            t[None, :, None] * ((powers[None, None, :] - powers[:, None, None])
                                / (1.0 + powers[None, None, :]))
            + (log1p_p[:, None, None] - log1p_p[None, None, :])
        )

    def divergences(self, log_q: np.ndarray) -> np.ndarray:
        log_ratio = logsumexp(self.exponent + log_q[None, None, :], axis=2)
        return -(log_ratio @ self.weights)


def _project(log_q: np.ndarray, powers: np.ndarray, p_ave: float):
    """KL projection onto {sum q = 1, sum q p <= p_ave}; returns (log q, tilt)."""
    log_q = log_q - logsumexp(log_q)
    if np.exp(logsumexp(log_q, b=powers)) <= p_ave:
        return log_q, 0.0
    scale = powers[-1]

    def excess(u):
        tilted = log_q - u * powers / scale
        return math.exp(logsumexp(tilted, b=powers) - logsumexp(tilted)) - p_ave

    hi = 1.0
    while excess(hi) > 0 and hi < 1e300:
        hi *= 2.0
    u = brentq(excess, 0.0, hi, xtol=1e-14, rtol=1e-12)
    tilted = log_q - u * powers / scale
    return tilted - logsumexp(tilted), u / scale


def _duality_gap(D: np.ndarray, value: float, powers: np.ndarray, p_ave: float):
    """min over s >= 0 of max_i (D_i - s (p_i - p_ave)) - value, and its minimizer s."""
    dp = powers[:, None] - powers[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        kinks = (D[:, None] - D[None, :]) / dp
    candidates = np.concatenate(([0.0], kinks[(dp > 0) & (kinks > 0)]))
    envelope = np.max(D[None, :] - candidates[:, None] * (powers[None, :] - p_ave), axis=1)
    best = int(np.argmin(envelope))
    return float(envelope[best] - value), float(candidates[best])


def solve_single_letter(
    rho: float,
    p_ave: float,
    initial: Optional[np.ndarray] = None,
    tol: float = None,
    gap_tol: float = None,
    max_iter: int = None,
) -> SingleLetterSolution:
    """
    Capacity of the memoryless Rayleigh channel under peak rho and average p_ave.

    The iteration stops when the duality gap is within ``gap_tol`` of I, or
    when I changes by at most ``tol`` (relative) between iterations while the
    gap is within ``SETTLED_GAP_FACTOR * gap_tol``. A step size collapse at
    that gap level is the floating-point limit and also counts as converged.

    Args:
        rho: Peak power
        p_ave: Average power, 0 <= p_ave <= rho
        initial: Optional warm-start masses on ``power_grid(rho)``
        tol: Relative change of I between iterations (config default)
        gap_tol: Relative duality gap (config default)
        max_iter: Iteration cap (config default)

    Raises:
        ConvergenceError: carrying the best value found when the cap is hit
    """
    numerics = get_numerics()
    tol = tol or numerics.single_letter_tol
    gap_tol = gap_tol or numerics.single_letter_gap_tol
    max_iter = max_iter or numerics.single_letter_max_iter
    if not rho > 0:
        raise ConstraintError(f"Peak power must be positive, got {rho}", parameter="rho", value=rho)
    if p_ave < 0 or p_ave > rho * (1.0 + 1e-12):
        raise ConstraintError(
            f"Average power must lie in [0, rho], got {p_ave}", parameter="p_ave", value=p_ave
        )
    powers = power_grid(rho)
    if p_ave == 0:
        masses = np.zeros_like(powers)
        masses[0] = 1.0
        return SingleLetterSolution(0.0, powers, masses, 0.0, 0, True)
    p_ave = min(p_ave, rho)

    channel = _MemorylessRayleigh(powers, numerics.laguerre_nodes)
    start = np.full(len(powers), 1.0 / len(powers)) if initial is None else np.asarray(initial)
    with np.errstate(divide="ignore"):
        log_q, _ = _project(np.log(np.maximum(start, 1e-300)), powers, p_ave)
    D = channel.divergences(log_q)
    value = float(np.exp(log_q) @ D)
    eta = eta0 = 1.0 / max(float(np.ptp(D)), 1e-300)

    # Absolute slack for I ~ rho^2 at low SNR
    floor = 1e-12 * rho * rho
    previous = -math.inf
    for iteration in range(1, max_iter + 1):
        gap, multiplier = _duality_gap(D, value, powers, p_ave)
        settled = gap <= SETTLED_GAP_FACTOR * gap_tol * value + floor
        if gap <= gap_tol * value + floor or (settled and value - previous <= tol * value):
            logger.debug("Single-letter rho=%g P=%g converged in %d iterations "
                         "(I=%.12g, gap=%.3g)", rho, p_ave, iteration, value, gap)
            return SingleLetterSolution(value, powers, np.exp(log_q), multiplier, iteration, True)

        while True:
            cand_log_q, _ = _project(log_q + eta * D, powers, p_ave)
            cand_D = channel.divergences(cand_log_q)
            cand_value = float(np.exp(cand_log_q) @ cand_D)
            if cand_value >= value - 1e-3 * floor:
                break
            eta *= 0.5
            if eta < 1e-10 * eta0:
                if settled:
                    logger.debug("Single-letter rho=%g P=%g stopped at the rounding limit "
                                 "after %d iterations (gap=%.3g)", rho, p_ave, iteration, gap)
                    return SingleLetterSolution(
                        value, powers, np.exp(log_q), multiplier, iteration, True
                    )
                raise ConvergenceError(
                    f"Single-letter solver stalled for rho={rho:g}, P_ave={p_ave:g} "
                    f"with duality gap {gap:.3g}",
                    best_value=value,
                    iterations=iteration,
                )
        previous = value
        log_q, D, value = cand_log_q, cand_D, cand_value
        eta *= 1.25

    raise ConvergenceError(
        f"Single-letter solver did not converge for rho={rho:g}, P_ave={p_ave:g}",
        best_value=value,
        iterations=max_iter,
    )


def single_letter_mi_sup(rho: float, p_ave: float) -> float:
    """Supremum of I(X; Y) for the memoryless Rayleigh channel; see solve_single_letter."""
    return solve_single_letter(rho, p_ave).value


def prediction_gain(model: FadingModel, rho: float, p_ave: float) -> float:
    """log((1 + P) / (1 + P sigma^2)) with sigma^2 the causal prediction error at peak rho."""
    sigma2 = math.expm1(compute_I(model, rho)) / rho
    return math.log1p(p_ave) - math.log1p(p_ave * sigma2)


def u_pred_objective(model: FadingModel, rho: float, p_ave: float) -> float:
    """The quantity maximized over the average power in U_pred."""
    return single_letter_mi_sup(rho, p_ave) + prediction_gain(model, rho, p_ave)


def solve_u_pred(model: FadingModel, rho: float, beta: float) -> UPredResult:
    """
    Maximize the U_pred objective over P in [0, rho/beta].

    Both terms are nondecreasing in P: the single-letter capacity because a
    larger P only relaxes E|X|^2 <= P, and the prediction gain because its
    derivative is (1 - sigma^2) / ((1 + P)(1 + P sigma^2)) >= 0. The maximum
    is therefore attained at P = rho/beta and needs a single inner solve. A
    non-converged inner solve contributes its best value and the result is
    flagged.
    """
    validate_constraints(rho, beta)
    p_max = rho / beta
    try:
        inner = solve_single_letter(rho, p_max).value
        converged = True
    except ConvergenceError as e:
        logger.warning("U_pred inner solve at P=%g did not converge; using best value", p_max)
        inner = e.best_value
        converged = False
    value = inner + prediction_gain(model, rho, p_max)
    return UPredResult(value=max(value, 0.0), p_ave=p_max, converged=converged)


def upper_bound_U_pred(model: FadingModel, rho: float, beta: float) -> float:
    """U_pred(rho, beta) in nats per symbol."""
    return solve_u_pred(model, rho, beta).value
