"""
Monte Carlo diagnostic for the QPSK lower bound

    C_ll(rho, beta) = I(X_0; Y_0 | past inputs and outputs) / beta

with i.i.d. QPSK inputs at peak power. Given the past, H_0 is CN(H_hat, sigma^2)
with sigma^2 the causal prediction error and H_hat ~ CN(0, 1 - sigma^2), so

    Y_0 | Z, H_hat ~ CN(sqrt(rho) Z H_hat, 1 + rho sigma^2)

This is a diagnostic estimate, not a certified bound.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.special import logsumexp

from fadecap.bounds.models import validate_constraints
from fadecap.channel.oracle import MIN_SAMPLES, MIEstimate
from fadecap.exceptions import ConfigurationError
from fadecap.models.base import FadingModel
from fadecap.prediction import causal_error
from fadecap.utils.sweep import ParallelSweeper, batch_sizes

logger = logging.getLogger(__name__)

QPSK = np.exp(0.5j * np.pi * np.arange(4))


def _complex_normal(rng: np.random.Generator, size: int) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)


def cll_monte_carlo(
    model: FadingModel,
    rho: float,
    beta: float,
    samples: int = 100_000,
    seed: int = 0,
    workers: int = None,
) -> MIEstimate:
    """
    Estimate C_ll(rho, beta) in nats per symbol.

    The stderr is scaled by 1/beta along with the value.
    """
    validate_constraints(rho, beta)
    if samples < MIN_SAMPLES:
        raise ConfigurationError(f"samples must be at least {MIN_SAMPLES}", setting="samples")
    sigma2 = causal_error(model, rho)
    noise = 1.0 + rho * sigma2
    amplitude = math.sqrt(rho)
    spread = math.sqrt(max(1.0 - sigma2, 0.0))
    logger.debug("C_ll Monte Carlo for %s: rho=%g sigma2=%.6g", model.name, rho, sigma2)

    def run_batch(rng: np.random.Generator, size: int):
        h_hat = spread * _complex_normal(rng, size)
        labels = rng.integers(0, len(QPSK), size=size)
        y = amplitude * QPSK[labels] * h_hat + math.sqrt(noise) * _complex_normal(rng, size)
        # log p(y | z') up to the common -log(pi * noise)
        log_p = -np.abs(y[None, :] - amplitude * QPSK[:, None] * h_hat[None, :]) ** 2 / noise
        terms = log_p[labels, np.arange(size)] - logsumexp(log_p, axis=0) + math.log(len(QPSK))
        return float(terms.sum()), float(np.sum(terms * terms))

    partials = ParallelSweeper(workers).map_seeded(run_batch, seed, batch_sizes(samples))
    total = sum(p[0] for p in partials)
    total_sq = sum(p[1] for p in partials)
    mean = total / samples
    variance = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return MIEstimate(
        value=mean / beta,
        stderr=math.sqrt(variance / samples) / beta,
        samples=samples,
        method="monte_carlo",
    )
