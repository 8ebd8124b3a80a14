"""
On-off lower bound - block on-off signalling and its low-SNR coefficient

A block of n symbols is switched on (all at peak, independent phases) with
probability a and off otherwise. Its mutual information per symbol is

    (a lambda_n - a^2) / 2 * rho^2 + o(rho^2)

with lambda_n = sum_{|i|<n} |R_H(i)|^2 (1 - |i|/n), the Cesaro mean that
converges to lambda_inf.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import pyarrow as pa

from fadecap.exceptions import ConstraintError
from fadecap.models.base import FadingModel
from fadecap.spectral import compute_lambda_inf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OnOffScheme:
    """Optimized on-off scheme for block length n."""
    n: int
    beta: float
    a: float
    lambda_n: float
    coeff: float

    def to_dict(self):
        return {"n": self.n, "lambda_n": self.lambda_n, "a": self.a, "coeff": self.coeff}


def _check_n(n: int):
    if n < 1:
        raise ConstraintError(f"block length must be >= 1, got {n}", parameter="n", value=n)


def lambda_n(model: FadingModel, n: int) -> float:
    """Cesaro-weighted sum 1 + 2 sum_{i=1}^{n-1} |R_H(i)|^2 (1 - i/n)."""
    _check_n(n)
    if n == 1:
        return 1.0
    lags = np.arange(1, n)
    weights = 1.0 - lags / n
    return 1.0 + 2.0 * float(np.sum(np.abs(model.autocorrelation(lags)) ** 2 * weights))


def lambda_n_double_sum(model: FadingModel, n: int) -> float:
    """(1/n) sum_{i,j} |R_H(i - j)|^2, the O(n^2) form of ``lambda_n``."""
    _check_n(n)
    idx = np.arange(n)
    values = np.abs(model.autocorrelation(idx[:, None] - idx[None, :])) ** 2
    return float(values.sum()) / n


def optimal_duty(lambda_value: float, beta: float) -> float:
    """a = lambda/2 when that meets the average constraint, else 1/beta."""
    if lambda_value < 1:
        raise ConstraintError(f"lambda_n must be >= 1, got {lambda_value}",
                              parameter="lambda_n", value=lambda_value)
    if not beta >= 1:
        raise ConstraintError(f"beta must be >= 1, got {beta}", parameter="beta", value=beta)
    half = lambda_value / 2.0
    return half if half <= 1.0 / beta else 1.0 / beta


def onoff_scheme(model: FadingModel, n: int, beta: float) -> OnOffScheme:
    lam = lambda_n(model, n)
    a = optimal_duty(lam, beta)
    return OnOffScheme(n=n, beta=beta, a=a, lambda_n=lam, coeff=(a * lam - a * a) / 2.0)


def ln_coefficient(model: FadingModel, n: int, beta: float) -> float:
    """rho^2 coefficient of the per-symbol on-off rate L_n(rho, beta)."""
    return onoff_scheme(model, n, beta).coeff


def onoff_distribution(model: FadingModel, n: int, beta: float, phases: int = 2):
    """Explicit block on-off input of the optimized scheme (small n only)."""
    from fadecap.channel.vector import coupled_onoff

    return coupled_onoff(n, onoff_scheme(model, n, beta).a, phases=phases, beta=beta)


def lambda_convergence_report(model: FadingModel, n_list: Iterable[int]) -> pa.Table:
    """
    Table of (n, lambda_n, gap = lambda_inf - lambda_n).

    Gaps are nonnegative up to rounding and shrink to 0 as n grows.
    """
    lam_inf = compute_lambda_inf(model)
    ns = [int(n) for n in n_list]
    values = [lambda_n(model, n) for n in ns]
    gaps = [lam_inf - v for v in values]
    if any(g < -1e-12 for g in gaps):
        logger.warning("lambda_n exceeds lambda_inf for %s: min gap %.3g", model.name, min(gaps))
    return pa.table({
        "n": pa.array(ns, type=pa.int64()),
        "lambda_n": pa.array(values, type=pa.float64()),
        "gap": pa.array(gaps, type=pa.float64()),
    })
