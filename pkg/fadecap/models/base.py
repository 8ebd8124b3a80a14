"""
Base Model - Abstract base class for stationary fading processes

A fading model describes a unit-variance proper complex Gaussian process by
its autocorrelation sequence and power spectral density:

    R_H(k) = E[H_{t+k} conj(H_t)]
    S_H(w) = sum_k R_H(k) exp(-i w k),   R_H(k) = int S_H(w) exp(i w k) dw/2pi

Models are responsible for:
1. Evaluating R_H on integer lags (Hermitian by construction)
2. Evaluating S_H on [0, 2pi)
3. Supplying a quadrature rule on the circle suited to their spectrum
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

TWO_PI = 2.0 * np.pi

# Nodes per Gauss-Legendre panel for spectra with breakpoints
PANEL_NODES = 16


class FadingModel(ABC):
    """
    Abstract base class for fading models.

    Subclasses must implement:
    - _autocorrelation(): R_H(k) for k >= 0
    - _psd(): S_H(w) for w already reduced to [0, 2pi)

    Optional overrides:
    - breakpoints(): frequencies where S_H is discontinuous
    - closed_form_lambda_inf(): exact lambda_inf for oracle checks
    """

    # Model metadata
    kind: str = "base"

    @abstractmethod
    def _autocorrelation(self, k: np.ndarray) -> np.ndarray:
        """R_H(k) for a nonnegative integer array k."""
        pass

    @abstractmethod
    def _psd(self, omega: np.ndarray) -> np.ndarray:
        """S_H(w) for w in [0, 2pi)."""
        pass

    @property
    def params(self) -> Dict[str, Any]:
        return {}

    @property
    def name(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={_format_param(v)}" for k, v in self.params.items())
        return f"{self.kind}({inner})"

    def autocorrelation(self, k) -> np.ndarray:
        """R_H at integer lags (any sign); negative lags are conjugated."""
        k = np.asarray(k, dtype=np.int64)
        values = np.asarray(self._autocorrelation(np.abs(k)), dtype=complex)
        return np.where(k < 0, np.conj(values), values)

    def psd(self, omega) -> np.ndarray:
        """S_H at angular frequencies, reduced modulo 2pi."""
        omega = np.mod(np.asarray(omega, dtype=float), TWO_PI)
        return np.asarray(self._psd(omega), dtype=float)

    def breakpoints(self) -> Tuple[float, ...]:
        return ()

    def closed_form_lambda_inf(self) -> Optional[float]:
        return None

    def quadrature(self, n_points: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Nodes and weights on [0, 2pi) for integrals against dw/2pi.

        Weights sum to 1. Smooth periodic spectra use the uniform grid, which
        converges spectrally; spectra with breakpoints get composite
        Gauss-Legendre panels between consecutive breakpoints.
        """
        cuts = sorted({float(np.mod(b, TWO_PI)) for b in self.breakpoints()} - {0.0})
        if not cuts:
            nodes = TWO_PI * np.arange(n_points) / n_points
            return nodes, np.full(n_points, 1.0 / n_points)
        return panel_quadrature([0.0, *cuts, TWO_PI], n_points, total=TWO_PI)

    def __repr__(self) -> str:
        return f"<FadingModel {self.name}>"


def panel_quadrature(edges, n_points: int, total: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre rule over consecutive intervals of ``edges``.

    Panels are distributed in proportion to interval length; weights are
    divided by ``total`` so the rule integrates against d(x)/total.
    """
    base_x, base_w = leggauss(PANEL_NODES)
    n_panels = max(1, n_points // PANEL_NODES)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        length = hi - lo
        if length <= 0:
            continue
        count = max(1, int(round(n_panels * length / (edges[-1] - edges[0]))))
        panel_edges = np.linspace(lo, hi, count + 1)
        half = 0.5 * np.diff(panel_edges)
        mid = 0.5 * (panel_edges[:-1] + panel_edges[1:])
        nodes.append((mid[:, None] + half[:, None] * base_x[None, :]).ravel())
        weights.append((half[:, None] * base_w[None, :]).ravel() / total)
    return np.concatenate(nodes), np.concatenate(weights)


def _format_param(value: Any) -> str:
    if isinstance(value, (tuple, list)):
        return ";".join(_format_param(v) for v in value)
    if isinstance(value, complex):
        return f"{value.real:g}{value.imag:+g}j" if value.imag else f"{value.real:g}"
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


@dataclass(frozen=True)
class ConsistencyReport:
    """Result of comparing R_H against the quadrature of S_H."""
    model: str
    n_terms: int
    quad_points: int
    max_abs_error: float
    worst_lag: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "n_terms": self.n_terms,
            "quad_points": self.quad_points,
            "max_abs_error": self.max_abs_error,
            "worst_lag": self.worst_lag,
        }
