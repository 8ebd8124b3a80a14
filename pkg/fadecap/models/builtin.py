"""
Built-in fading models: i.i.d., Gauss-Markov, bandlimited, finite memory, custom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from fadecap.exceptions import ModelError
from fadecap.models.base import TWO_PI, FadingModel

# Grid used to certify that a spectrum stays nonnegative
PSD_CHECK_POINTS = 10_000


def _float_param(params: Dict[str, Any], key: str, kind: str) -> float:
    if key not in params:
        raise ModelError(f"Missing parameter '{key}' for model '{kind}'", kind=kind)
    try:
        return float(params[key])
    except (TypeError, ValueError):
        raise ModelError(f"Parameter '{key}' must be a number, got {params[key]!r}", kind=kind)


def _reject_extra(params: Dict[str, Any], allowed, kind: str):
    extra = set(params) - set(allowed)
    if extra:
        raise ModelError(
            f"Unknown parameter(s) for '{kind}': {', '.join(sorted(extra))}", kind=kind
        )


@dataclass(frozen=True)
class IIDModel(FadingModel):
    """Memoryless fading: R_H(k) = 1{k=0}, S_H = 1."""

    kind = "iid"

    def _autocorrelation(self, k):
        return (k == 0).astype(complex)

    def _psd(self, omega):
        return np.ones_like(omega)

    def closed_form_lambda_inf(self) -> float:
        return 1.0

    @classmethod
    def from_params(cls, params: Dict[str, Any]) -> "IIDModel":
        _reject_extra(params, (), cls.kind)
        return cls()


@dataclass(frozen=True)
class GaussMarkovModel(FadingModel):
    """First-order autoregressive fading: R_H(k) = r^|k|."""

    r: float = 0.0
    kind = "gauss_markov"

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise ModelError(f"r must satisfy 0 <= r < 1, got {self.r}", kind=self.kind)

    @property
    def params(self):
        return {"r": self.r}

    def _autocorrelation(self, k):
        return np.power(self.r, k.astype(float)).astype(complex)

    def _psd(self, omega):
        r = self.r
        return (1.0 - r * r) / (1.0 + r * r - 2.0 * r * np.cos(omega))

    def closed_form_lambda_inf(self) -> float:
        r2 = self.r * self.r
        return (1.0 + r2) / (1.0 - r2)

    @classmethod
    def from_params(cls, params):
        _reject_extra(params, ("r",), cls.kind)
        return cls(r=_float_param(params, "r", cls.kind))


@dataclass(frozen=True)
class BandlimitedModel(FadingModel):
    """
    Ideally bandlimited fading occupying a fraction w of the band.

    S_H = 1/w on |w| <= pi*w (wrapped around 0), so R_H(k) = sinc(w k).
    """

    w: float = 1.0
    kind = "bandlimited"

    def __post_init__(self):
        if not 0.0 < self.w <= 1.0:
            raise ModelError(f"w must satisfy 0 < w <= 1, got {self.w}", kind=self.kind)

    @property
    def params(self):
        return {"w": self.w}

    @property
    def half_band(self) -> float:
        return np.pi * self.w

    def _autocorrelation(self, k):
        return np.sinc(self.w * k.astype(float)).astype(complex)

    def _psd(self, omega):
        inside = (omega <= self.half_band) | (omega >= TWO_PI - self.half_band)
        return np.where(inside, 1.0 / self.w, 0.0)

    def breakpoints(self):
        if self.w >= 1.0:
            return ()
        return (self.half_band, TWO_PI - self.half_band)

    def closed_form_lambda_inf(self) -> float:
        return 1.0 / self.w

    @classmethod
    def from_params(cls, params):
        _reject_extra(params, ("w",), cls.kind)
        return cls(w=_float_param(params, "w", cls.kind))


@dataclass(frozen=True)
class FiniteMemoryModel(FadingModel):
    """
    Fading with autocorrelation supported on |k| <= K.

    ``taps`` are R_H(1), ..., R_H(K); R_H(0) = 1 is implicit and the spectrum
    is the trigonometric polynomial 1 + 2 Re sum_k R_H(k) exp(-i w k).
    """

    taps: Tuple[complex, ...] = ()
    kind = "finite_memory"

    def __post_init__(self):
        taps = tuple(complex(t) for t in self.taps)
        object.__setattr__(self, "taps", taps)
        if any(abs(t) > 1.0 for t in taps):
            raise ModelError("finite_memory taps must satisfy |R_H(k)| <= 1", kind=self.kind)
        if not taps:
            return
        n_check = max(PSD_CHECK_POINTS, 64 * len(taps))
        grid = TWO_PI * np.arange(n_check) / n_check
        values = self._trig_poly(grid)
        worst = int(np.argmin(values))
        if values[worst] < -1e-12:
            raise ModelError(
                f"finite_memory taps give a spectral density of {values[worst]:.6g} < 0",
                kind=self.kind,
                omega=float(grid[worst]),
                suggestion="Choose taps forming a positive semidefinite autocorrelation "
                           "(e.g. |R_H(1)| <= 0.5 for a single tap).",
            )

    @property
    def params(self):
        return {"taps": self.taps}

    @property
    def memory(self) -> int:
        return len(self.taps)

    def _autocorrelation(self, k):
        table = np.concatenate(([1.0 + 0j], np.asarray(self.taps, dtype=complex), [0j]))
        return table[np.minimum(k, self.memory + 1)]

    def _trig_poly(self, omega):
        values = np.ones_like(omega, dtype=float)
        for lag, tap in enumerate(self.taps, start=1):
            values += 2.0 * np.real(tap * np.exp(-1j * lag * omega))
        return values

    def _psd(self, omega):
        return np.maximum(self._trig_poly(omega), 0.0)

    @classmethod
    def from_params(cls, params):
        _reject_extra(params, ("taps",), cls.kind)
        raw = params.get("taps", "")
        if isinstance(raw, str):
            tokens = [tok for tok in raw.replace(";", ",").split(",") if tok.strip()]
            try:
                taps = tuple(complex(tok.strip().replace("i", "j")) for tok in tokens)
            except ValueError:
                raise ModelError(f"Malformed taps {raw!r}", kind=cls.kind)
        else:
            taps = tuple(raw)
        return cls(taps=taps)


@dataclass(frozen=True)
class CustomModel(FadingModel):
    """
    User-supplied autocorrelation and spectrum.

    Both callables are required; they are verified against each other's
    invariants rather than derived, so a wrong spectral factorization is
    caught at construction.
    """

    R: Callable[[int], complex] = field(default=None)
    S: Callable[[float], float] = field(default=None)
    label: str = "custom"
    cuts: Tuple[float, ...] = ()
    lambda_inf: Optional[float] = None
    kind = "custom"

    def __post_init__(self):
        if self.R is None or self.S is None:
            raise ModelError("custom models need both an R and an S callable", kind=self.kind)
        r0 = complex(self.R(0))
        if abs(r0 - 1.0) > 1e-9:
            raise ModelError(f"custom R(0) must be 1, got {r0}", kind=self.kind)
        grid = TWO_PI * np.arange(PSD_CHECK_POINTS) / PSD_CHECK_POINTS
        values = self._psd(grid)
        worst = int(np.argmin(values))
        if values[worst] < 0:
            raise ModelError(
                f"custom spectral density is negative ({values[worst]:.6g})",
                kind=self.kind,
                omega=float(grid[worst]),
            )
        nodes, weights = self.quadrature(8192)
        mass = float(weights @ self._psd(nodes))
        if abs(mass - 1.0) > 1e-6:
            raise ModelError(
                f"custom spectral density has mass {mass:.9f}, expected 1", kind=self.kind
            )

    @property
    def name(self) -> str:
        return self.label

    def _autocorrelation(self, k):
        return np.array([complex(self.R(int(i))) for i in np.ravel(k)]).reshape(np.shape(k))

    def _psd(self, omega):
        try:
            values = np.asarray(self.S(omega), dtype=float)
            if values.shape == np.shape(omega):
                return values
        except (TypeError, ValueError):
            pass
        return np.vectorize(lambda x: float(self.S(x)), otypes=[float])(omega)

    def breakpoints(self):
        return self.cuts

    def closed_form_lambda_inf(self):
        return self.lambda_inf
