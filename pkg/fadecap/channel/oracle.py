"""
Mutual information oracle - exact conditional densities, Monte Carlo and 1-D quadrature

Given Z = z the row vector Y has density

    q(y | z) = exp(-y K_Y^-1 y^H) / (pi^n det K_Y),   K_Y = rho K_z + I

and I(Z; Y) = E[log q(Y | Z) - log sum_k mu_k q(Y | z_k)].
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np
from scipy import integrate
from scipy.linalg import LinAlgError, cholesky, solve_triangular
from scipy.special import logsumexp

from fadecap.channel.vector import InputDistribution, k_of_z
from fadecap.exceptions import ConfigurationError, ConstraintError, NumericalError
from fadecap.models.base import FadingModel
from fadecap.utils.sweep import ParallelSweeper, batch_sizes

logger = logging.getLogger(__name__)

MIN_SAMPLES = 1000


@dataclass(frozen=True)
class MIEstimate:
    """Mutual information estimate in nats."""
    value: float
    stderr: float
    samples: int = 0
    method: str = "monte_carlo"

    def within(self, target: float, sigmas: float = 3.0, slack: float = 0.0) -> bool:
        """True if |value - target| <= sigmas * stderr + slack."""
        return abs(self.value - target) <= sigmas * self.stderr + slack

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "method": self.method,
        }


def conditional_covariance(z, model: FadingModel, rho: float) -> np.ndarray:
    """K_Y = rho K_z + I."""
    if rho < 0:
        raise ConstraintError("rho must be nonnegative", parameter="rho", value=rho)
    K = rho * k_of_z(z, model)
    return K + np.eye(K.shape[0])


def _cholesky(K_Y: np.ndarray) -> np.ndarray:
    try:
        return cholesky(K_Y, lower=True)
    except (LinAlgError, ValueError) as e:
        raise NumericalError(
            f"Conditional covariance is not positive definite: {e}",
            condition=float(np.linalg.cond(K_Y)),
        )


def _log_density_factored(y: np.ndarray, L: np.ndarray) -> np.ndarray:
    """log q(y) for rows of y given the lower Cholesky factor of K_Y."""
    n = L.shape[0]
    w = solve_triangular(L, np.conj(y).T, lower=True)
    quad = np.sum(np.abs(w) ** 2, axis=0)
    log_det = 2.0 * np.sum(np.log(np.real(np.diag(L))))
    return -quad - n * math.log(math.pi) - log_det


def log_conditional_density(y, K_Y: np.ndarray):
    """
    log of exp(-y K_Y^-1 y^H) / (pi^n det K_Y) for a row vector y or a stack of rows.

    Raises:
        NumericalError: K_Y not positive definite
    """
    y = np.asarray(y, dtype=complex)
    single = y.ndim == 1
    values = _log_density_factored(np.atleast_2d(y), _cholesky(np.asarray(K_Y, dtype=complex)))
    return float(values[0]) if single else values


def sample_output(rng: np.random.Generator, K_Y: np.ndarray, size: int) -> np.ndarray:
    """Rows y with E[conj(y_i) y_j] = K_Y[i, j]."""
    L = _cholesky(K_Y)
    n = L.shape[0]
    g = (rng.standard_normal((n, size)) + 1j * rng.standard_normal((n, size))) / math.sqrt(2.0)
    return np.conj(L @ g).T


def _group_atoms(mu: InputDistribution, model: FadingModel, rho: float):
    """Merge atoms sharing a conditional covariance (only K_Y enters the channel law)."""
    groups: Dict[bytes, List] = {}
    for z, p in mu.atoms:
        K_Y = conditional_covariance(z, model, rho)
        key = np.round(K_Y, 12).tobytes()
        if key in groups:
            groups[key][1] += p
        else:
            groups[key] = [K_Y, p]
    covariances = [K for K, _ in groups.values()]
    probs = np.array([p for _, p in groups.values()])
    return covariances, probs / probs.sum()


def mi_monte_carlo(
    mu: InputDistribution,
    model: FadingModel,
    rho: float,
    samples: int = 100_000,
    seed: int = 0,
    workers: int = None,
) -> MIEstimate:
    """
    Estimate I(Z; Y) by exact sampling.

    Samples are split into batches of ``mc_batch_size`` with seeded
    substreams; the result depends only on (seed, samples, batch size).
    """
    if samples < MIN_SAMPLES:
        raise ConfigurationError(f"samples must be at least {MIN_SAMPLES}", setting="samples")
    if rho < 0:
        raise ConstraintError("rho must be nonnegative", parameter="rho", value=rho)
    if rho == 0:
        return MIEstimate(0.0, 0.0, samples, "monte_carlo")

    covariances, probs = _group_atoms(mu, model, rho)
    factors = [_cholesky(K) for K in covariances]
    log_probs = np.log(probs)
    n = mu.n
    logger.debug("MI Monte Carlo: %d atoms in %d covariance groups, %d samples",
                 len(mu), len(factors), samples)

    def run_batch(rng: np.random.Generator, size: int):
        labels = rng.choice(len(factors), size=size, p=probs)
        g = (rng.standard_normal((n, size)) + 1j * rng.standard_normal((n, size))) / math.sqrt(2.0)
        y = np.empty((size, n), dtype=complex)
        for k, L in enumerate(factors):
            mask = labels == k
            y[mask] = np.conj(L @ g[:, mask]).T
        log_q = np.stack([_log_density_factored(y, L) for L in factors])
        log_mix = logsumexp(log_q + log_probs[:, None], axis=0)
        terms = log_q[labels, np.arange(size)] - log_mix
        return float(terms.sum()), float(np.sum(terms * terms)), size

    sweeper = ParallelSweeper(workers)
    partials = sweeper.map_seeded(run_batch, seed, batch_sizes(samples))
    total = sum(p[0] for p in partials)
    total_sq = sum(p[1] for p in partials)
    mean = total / samples
    variance = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return MIEstimate(mean, math.sqrt(variance / samples), samples, "monte_carlo")


def mi_quadrature_1d(a: float, rho: float) -> MIEstimate:
    """
    Exact MI of the scalar on-off channel by adaptive quadrature.

    |Y|^2 is Exp(1) when off and Exp(1 + rho) when on; the log-ratios are
    formed with log1p/expm1 so the O(rho^2) result survives cancellation.
    """
    if not 0.0 <= a <= 1.0:
        raise ConstraintError(f"duty cycle must lie in [0, 1], got {a}", parameter="a", value=a)
    if rho < 0:
        raise ConstraintError("rho must be nonnegative", parameter="rho", value=rho)
    if a in (0.0, 1.0) or rho == 0:
        return MIEstimate(0.0, 0.0, 0, "quadrature_1d")

    log1p_rho = math.log1p(rho)
    slope = rho / (1.0 + rho)

    def integrand(v: float) -> float:
        log_r = log1p_rho - v * slope                 # log(f_off / f_on)
        log_mix = math.log1p((1.0 - a) * math.expm1(log_r))  # log(f_mix / f_on)
        f_on = math.exp(-v / (1.0 + rho)) / (1.0 + rho)
        f_off = math.exp(-v)
        return -a * f_on * log_mix + (1.0 - a) * f_off * (log_r - log_mix)

    value, error = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-15, epsrel=1e-11, limit=500)
    return MIEstimate(float(value), float(error), 0, "quadrature_1d")
