"""
Continuous-time fading models described by a PSD on the real line.

    E|H(t)|^2 = int S_H(w) dw/2pi = 1
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple
from urllib.parse import parse_qs

import numpy as np

from fadecap.exceptions import ModelError

logger = logging.getLogger(__name__)

MASS_TOL = 1e-6


@dataclass(frozen=True)
class CTFadingModel:
    """
    Continuous-time fading model.

    Attributes:
        psd: S_H(w) for an array of angular frequencies (rad/s)
        name: Display name, e.g. "ornstein_uhlenbeck(gamma=1)"
        closed_form_I: Optional exact I(P) in nats/s for oracle checks
        breakpoints: Frequencies where S_H is discontinuous
        scale: Frequency scale of the spectrum; the quadrature maps w = scale * tan(u)
    """
    psd: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    name: str
    closed_form_I: Optional[Callable[[float], float]] = field(default=None, compare=False)
    breakpoints: Tuple[float, ...] = ()
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ModelError(f"Frequency scale must be positive, got {self.scale}", kind=self.name)

    def evaluate(self, omega) -> np.ndarray:
        return np.asarray(self.psd(np.asarray(omega, dtype=float)), dtype=float)

    def __repr__(self) -> str:
        return f"<CTFadingModel {self.name}>"


def ornstein_uhlenbeck(gamma: float = 1.0) -> CTFadingModel:
    """R_H(t) = exp(-gamma |t|), S_H(w) = 2 gamma / (gamma^2 + w^2)."""
    gamma = float(gamma)
    if not gamma > 0:
        raise ModelError(f"gamma must be positive, got {gamma}", kind="ornstein_uhlenbeck")
    return CTFadingModel(
        psd=lambda w: 2.0 * gamma / (gamma * gamma + w * w),
        name=f"ornstein_uhlenbeck(gamma={gamma:g})",
        closed_form_I=lambda p: math.sqrt(gamma * gamma + 2.0 * gamma * p) - gamma,
        scale=gamma,
    )


def bandlimited(W: float = 1.0) -> CTFadingModel:
    """Flat spectrum S_H = pi/W on |w| <= W; I(P) = (W/pi) log(1 + pi P / W)."""
    W = float(W)
    if not W > 0:
        raise ModelError(f"bandwidth W must be positive, got {W}", kind="bandlimited")
    level = math.pi / W
    return CTFadingModel(
        psd=lambda w: np.where(np.abs(w) <= W, level, 0.0),
        name=f"bandlimited(W={W:g})",
        closed_form_I=lambda p: W / math.pi * math.log1p(level * p),
        breakpoints=(-W, W),
        scale=W,
    )


_CT_MODELS: Dict[str, Callable[..., CTFadingModel]] = {
    "ornstein_uhlenbeck": ornstein_uhlenbeck,
    "ou": ornstein_uhlenbeck,
    "bandlimited": bandlimited,
}


def list_ct_models():
    return sorted(_CT_MODELS)


def make_ct_model(kind: str, **params) -> CTFadingModel:
    """
    Build a built-in continuous-time model.

    Examples:
        >>> make_ct_model("ornstein_uhlenbeck", gamma=1.0)
        <CTFadingModel ornstein_uhlenbeck(gamma=1)>
    """
    builder = _CT_MODELS.get(kind.lower())
    if builder is None:
        raise ModelError(
            f"Unknown continuous-time model '{kind}'",
            kind=kind,
            suggestion=f"Available models: {', '.join(list_ct_models())}",
        )
    try:
        return builder(**params)
    except TypeError as e:
        raise ModelError(f"Bad parameters for '{kind}': {e}", kind=kind)


def parse_ct_model_spec(spec: str) -> CTFadingModel:
    """Parse ``ornstein_uhlenbeck?gamma=1`` or ``bandlimited?W=2``."""
    kind, _, query = str(spec).strip().strip("\"'").partition("?")
    params = {}
    for key, values in parse_qs(query).items():
        try:
            params[key] = float(values[-1])
        except ValueError:
            raise ModelError(f"Parameter {key} must be a number, got {values[-1]!r}", kind=kind)
    return make_ct_model(kind.strip(), **params)
