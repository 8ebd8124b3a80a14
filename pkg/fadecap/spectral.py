"""
Spectral Functionals - I(rho), lambda_inf, nu_inf and their small-rho expansion

All integrals are against dw/2pi over one period:

    I(rho)     = int log(1 + rho S_H)
    lambda_inf = int S_H^2 = sum_k |R_H(k)|^2
    nu_inf     = int S_H^3

Values are computed once per (model, quadrature size) and shared through an
in-memory ``SpectralCache``.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

import numpy as np

from fadecap.config import get_numerics
from fadecap.exceptions import ConstraintError, ModelError
from fadecap.models.base import FadingModel

logger = logging.getLogger(__name__)

# Lags evaluated per block of the lambda_inf series
SERIES_BLOCK = 65_536


@dataclass(frozen=True)
class QuadratureResult:
    """Quadrature value with the |Q_N - Q_{N/2}| error estimate."""
    value: float
    error: float


@dataclass(frozen=True)
class SeriesResult:
    """Direct summation of sum_k |R_H(k)|^2."""
    value: float
    lags: int
    tail_estimate: float
    capped: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "lags": self.lags,
            "tail_estimate": self.tail_estimate,
            "capped": self.capped,
        }


class SpectralFunctionals:
    """
    Spectral functionals of one model on one quadrature grid.

    ``I(rho)`` is memoized in ``I_of_rho``; ``lambda_inf`` and ``nu_inf`` are
    computed on first access. ``lambda_inf`` cross-checks the direct series
    and raises ModelError if the two disagree or the series diverges.
    """

    def __init__(self, model: FadingModel, quad_points: int):
        self.model = model
        self.quad_points = quad_points
        self.I_of_rho: Dict[float, float] = {}
        self._errors: Dict[str, float] = {}
        self._lock = threading.Lock()

        self._nodes, self._weights = model.quadrature(quad_points)
        self._psd = model.psd(self._nodes)
        half_nodes, self._half_weights = model.quadrature(max(quad_points // 2, 1))
        self._half_psd = model.psd(half_nodes)

    def integrate(self, fn) -> QuadratureResult:
        """Integrate fn(S_H(w)) dw/2pi with an error estimate from the half grid."""
        full = float(self._weights @ fn(self._psd))
        half = float(self._half_weights @ fn(self._half_psd))
        return QuadratureResult(value=full, error=abs(full - half))

    def I_with_error(self, rho: float) -> QuadratureResult:
        if rho == 0:
            return QuadratureResult(0.0, 0.0)
        result = self.integrate(lambda s: np.log1p(rho * s))
        with self._lock:
            self.I_of_rho[float(rho)] = result.value
            self._errors[f"I({rho:g})"] = result.error
        return result

    def I(self, rho: float) -> float:
        cached = self.I_of_rho.get(float(rho))
        if cached is not None:
            return cached
        return self.I_with_error(rho).value

    @cached_property
    def lambda_quadrature(self) -> QuadratureResult:
        result = self.integrate(np.square)
        self._errors["lambda_inf"] = result.error
        return result

    @cached_property
    def series(self) -> SeriesResult:
        return lambda_inf_series(self.model)

    @cached_property
    def lambda_inf(self) -> float:
        quad = self.lambda_quadrature.value
        series = self.series
        tol = get_numerics().lambda_agreement_tol
        if abs(series.value - quad) > tol:
            raise ModelError(
                f"lambda_inf series ({series.value:.9g}) and quadrature ({quad:.9g}) "
                f"disagree by {abs(series.value - quad):.3g}",
                kind=self.model.kind,
                suggestion="Increase quad_points or series_cap, or check that R_H and S_H "
                           "form a Fourier pair.",
            )
        return quad

    @cached_property
    def nu_inf(self) -> float:
        result = self.integrate(lambda s: s ** 3)
        self._errors["nu_inf"] = result.error
        return result.value

    @property
    def quad_error_estimate(self) -> float:
        return max(self._errors.values(), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.name,
            "quad_points": self.quad_points,
            "lambda_inf": self.lambda_inf,
            "nu_inf": self.nu_inf,
            "quad_error_estimate": self.quad_error_estimate,
            "I_of_rho": dict(self.I_of_rho),
        }

    def __repr__(self) -> str:
        return f"<SpectralFunctionals {self.model.name} N={self.quad_points}>"


class SpectralCache:
    """
    Thread-safe in-memory cache of SpectralFunctionals keyed by (model, quad_points).

    Models are frozen dataclasses, so equal parameters share one entry.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: Dict[Tuple[FadingModel, int], SpectralFunctionals] = {}
        self._hits = 0
        self._misses = 0

    def get(self, model: FadingModel, quad_points: int) -> SpectralFunctionals:
        key = (model, quad_points)
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._hits += 1
                return entry
            self._misses += 1
        # Grid evaluation happens outside the lock; a duplicate build is harmless
        entry = SpectralFunctionals(model, quad_points)
        with self._lock:
            entry = self._entries.setdefault(key, entry)
        logger.debug("Built spectral grid for %s (N=%d)", model.name, quad_points)
        return entry

    def clear(self):
        with self._lock:
            self._entries.clear()
            self._hits = 0
            self._misses = 0
        logger.debug("Cleared spectral cache")

    def stats(self) -> Dict[str, Any]:
        with self._lock:
            return {
                "entries": len(self._entries),
                "hits": self._hits,
                "misses": self._misses,
                "models": sorted({m.name for m, _ in self._entries}),
            }


_cache = SpectralCache()


def get_spectral_cache() -> SpectralCache:
    """Get the process-wide spectral cache."""
    return _cache


def spectral_functionals(model: FadingModel, quad_points: int = None) -> SpectralFunctionals:
    """Cached functionals of ``model`` on a grid of ``quad_points`` (config default)."""
    n = quad_points or get_numerics().quad_points
    return _cache.get(model, n)


def _check_rho(rho: float):
    if rho < 0 or not np.isfinite(rho):
        raise ConstraintError(f"rho must be a finite nonnegative number, got {rho}",
                              parameter="rho", value=rho)


def compute_I(model: FadingModel, rho: float, quad_points: int = None) -> float:
    """
    I(rho) = int log(1 + rho S_H(w)) dw/2pi in nats.

    Examples:
        >>> compute_I(IIDModel(), 1.0)  # log 2
        0.6931471805599453
    """
    _check_rho(rho)
    if rho == 0:
        return 0.0
    return spectral_functionals(model, quad_points).I(rho)


def compute_I_with_error(model: FadingModel, rho: float, quad_points: int = None) -> QuadratureResult:
    """I(rho) together with its quadrature error estimate."""
    _check_rho(rho)
    return spectral_functionals(model, quad_points).I_with_error(rho)


def compute_lambda_inf(model: FadingModel, quad_points: int = None) -> float:
    """lambda_inf = int S_H^2 dw/2pi, verified against the direct series."""
    return spectral_functionals(model, quad_points).lambda_inf


def compute_nu_inf(model: FadingModel, quad_points: int = None) -> float:
    """nu_inf = int S_H^3 dw/2pi."""
    return spectral_functionals(model, quad_points).nu_inf


def lambda_inf_series(model: FadingModel) -> SeriesResult:
    """
    Sum 1 + 2 sum_{k>=1} |R_H(k)|^2 directly.

    Summation stops at the end of the first window of ``series_window`` lags
    whose contribution is below ``series_tol``. Models that reach
    ``series_cap`` get a tail correction 2 mean(k^2 |R_H(k)|^2) / K fitted to
    the last block, which matches the 1/k^2 decay of spectra with jumps.
    Raises ModelError if the window sums stop shrinking.
    """
    numerics = get_numerics()
    window, tol, cap = numerics.series_window, numerics.series_tol, numerics.series_cap
    block = max(window, (SERIES_BLOCK // window) * window)

    total = 0.0
    window_sums = []
    last_lags = last_vals = None
    start = 1
    while start <= cap:
        lags = np.arange(start, min(start + block, cap + 1))
        vals = np.abs(model.autocorrelation(lags)) ** 2
        pad = (-len(vals)) % window
        sums = np.concatenate((vals, np.zeros(pad))).reshape(-1, window).sum(axis=1)
        small = np.flatnonzero(sums < tol)
        if small.size:
            stop = (small[0] + 1) * window
            total += float(vals[:stop].sum())
            lags_used = int(lags[0]) + min(stop, len(vals)) - 1
            logger.debug("lambda_inf series for %s converged after %d lags",
                         model.name, lags_used)
            return SeriesResult(1.0 + 2.0 * total, lags_used, 0.0, False)
        total += float(vals.sum())
        window_sums.append(sums[: len(vals) // window])
        last_lags, last_vals = lags, vals
        start += block

    sums = np.concatenate(window_sums)
    if sums.size and sums[-1] > 0.45 * sums[len(sums) // 2]:
        raise ModelError(
            "lambda_inf series is not converging: sum |R_H(k)|^2 tail does not shrink",
            kind=model.kind,
            suggestion="The asymptote needs int S_H^2 < infinity; this model has too "
                       "much low-frequency concentration.",
        )
    tail = 2.0 * float(np.mean(last_lags.astype(float) ** 2 * last_vals)) / cap
    logger.warning(
        "lambda_inf series for %s hit the %d-lag cap; added tail estimate %.3e",
        model.name, cap, tail,
    )
    return SeriesResult(1.0 + 2.0 * total + tail, cap, tail, True)


def taylor_I(model: FadingModel, rho: float, order: int = 2) -> float:
    """Small-rho expansion rho - rho^2 lambda_inf/2 (+ rho^3 nu_inf/3 for order 3)."""
    _check_rho(rho)
    if order not in (2, 3):
        raise ValueError(f"order must be 2 or 3, got {order}")
    if rho == 0:
        return 0.0
    value = rho - 0.5 * rho * rho * compute_lambda_inf(model)
    if order == 3:
        value += rho ** 3 * compute_nu_inf(model) / 3.0
    return value


@dataclass(frozen=True)
class SmallRhoDiagnostics:
    """
    Quantities that converge as rho -> 0.

    ``inverse_gap`` = 1/I - 1/rho tends to lambda_inf/2. ``excess`` = I/rho - 1
    is compared with -rho lambda_inf/2 plus or minus rho^2 nu_inf/3; only the
    plus sign is consistent with the Taylor series of log(1 + rho S).
    """
    rho: float
    inverse_gap: float
    half_lambda: float
    excess: float
    excess_nu_plus: float
    excess_nu_minus: float

    @property
    def relative_gap(self) -> float:
        return abs(self.inverse_gap - self.half_lambda) / self.half_lambda


def small_rho_diagnostics(model: FadingModel, rho: float) -> SmallRhoDiagnostics:
    if not rho > 0:
        raise ConstraintError("rho must be positive", parameter="rho", value=rho)
    value = compute_I(model, rho)
    lam = compute_lambda_inf(model)
    nu = compute_nu_inf(model)
    second = -0.5 * rho * lam
    return SmallRhoDiagnostics(
        rho=rho,
        inverse_gap=1.0 / value - 1.0 / rho,
        half_lambda=0.5 * lam,
        excess=value / rho - 1.0,
        excess_nu_plus=second + rho * rho * nu / 3.0,
        excess_nu_minus=second - rho * rho * nu / 3.0,
    )


__all__ = [
    "QuadratureResult",
    "SeriesResult",
    "SpectralFunctionals",
    "SpectralCache",
    "SmallRhoDiagnostics",
    "get_spectral_cache",
    "spectral_functionals",
    "compute_I",
    "compute_I_with_error",
    "compute_lambda_inf",
    "compute_nu_inf",
    "lambda_inf_series",
    "taylor_I",
    "small_rho_diagnostics",
]
