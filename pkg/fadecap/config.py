"""
Configuration - numeric knobs and sweep settings.

``NumericsConfig`` collects every tolerance and grid size used by the
numerical routines; a process-wide instance is managed with
``configure_numerics`` / ``get_numerics``. ``SweepConfig`` describes one
CLI sweep and is loaded from a flat ``key = value`` file merged with
command-line overrides.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from fadecap.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


def _default_workers() -> int:
    raw = os.environ.get("FADECAP_WORKERS")
    if raw is None:
        return 4
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigurationError(
            f"FADECAP_WORKERS must be an integer, got {raw!r}", setting="FADECAP_WORKERS"
        )
    if workers < 1:
        raise ConfigurationError("FADECAP_WORKERS must be at least 1", setting="FADECAP_WORKERS")
    return workers


@dataclass(frozen=True)
class NumericsConfig:
    """Configuration for quadrature, series and optimizer numerics."""

    # Points of the periodic frequency grid
    quad_points: int = 8192

    # lambda_inf series: window of lags whose sum must fall below series_tol
    series_window: int = 64
    series_tol: float = 1e-12
    series_cap: int = 1_000_000

    # Allowed |series - quadrature| for lambda_inf
    lambda_agreement_tol: float = 1e-6

    # Single-letter memoryless capacity solver
    single_letter_grid: int = 65
    single_letter_tol: float = 1e-9
    single_letter_gap_tol: float = 1e-6
    single_letter_max_iter: int = 5000
    laguerre_nodes: int = 64

    # Continuous-time quadrature points on the compactified axis
    ct_panels: int = 4096

    # Monte Carlo samples per batch
    mc_batch_size: int = 100_000

    # Worker threads for sweeps and Monte Carlo batches
    workers: int = field(default_factory=_default_workers)

    def __post_init__(self):
        for name in ("quad_points", "series_window", "series_cap", "single_letter_grid",
                     "single_letter_max_iter", "laguerre_nodes",
                     "ct_panels", "mc_batch_size", "workers"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be a positive integer", setting=name)
        for name in ("series_tol", "lambda_agreement_tol", "single_letter_tol",
                     "single_letter_gap_tol"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive", setting=name)
        if self.single_letter_grid < 2:
            raise ConfigurationError(
                "single_letter_grid needs at least the two points {0, rho}",
                setting="single_letter_grid",
            )

    def with_overrides(self, **overrides) -> "NumericsConfig":
        """Return a copy with the given non-None fields replaced."""
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigurationError(
                f"Unknown numerics setting(s): {', '.join(sorted(unknown))}",
                setting=sorted(unknown)[0],
            )
        updates = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **updates) if updates else self


_numerics: Optional[NumericsConfig] = None


def get_numerics() -> NumericsConfig:
    """Get the process-wide numerics configuration."""
    global _numerics
    if _numerics is None:
        _numerics = NumericsConfig()
    return _numerics


def configure_numerics(config: NumericsConfig = None, **overrides) -> NumericsConfig:
    """
    Replace the process-wide numerics configuration.

    Either pass a full ``NumericsConfig`` or keyword overrides applied to the
    current one. Cached spectral values keyed by grid size stay valid.
    """
    global _numerics
    base = config if config is not None else get_numerics()
    _numerics = base.with_overrides(**overrides)
    logger.debug("Numerics configured: %s", _numerics)
    return _numerics


def reset_numerics():
    """Restore default numerics (useful for testing)."""
    global _numerics
    _numerics = None


# ---------------------------------------------------------------------------
# Sweep configuration
# ---------------------------------------------------------------------------

SUITES = ("all", "asymptotes", "mi", "prediction", "lambda", "ct")


def parse_rho_grid(text: str) -> List[float]:
    """
    Parse a rho grid.

    Accepts a comma list (``1e-3,1e-2,0.1``) or ``logspace:START:STOP:NUM`` where
    START and STOP are decimal exponents.
    """
    text = str(text).strip()
    if not text:
        raise ConfigurationError("rho grid is empty", setting="rho")
    if text.startswith("logspace:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigurationError(
                f"Expected logspace:START:STOP:NUM, got {text!r}", setting="rho"
            )
        try:
            start, stop, num = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise ConfigurationError(f"Malformed logspace grid {text!r}", setting="rho")
        if num < 1:
            raise ConfigurationError("logspace grid needs at least one point", setting="rho")
        return [float(x) for x in np.logspace(start, stop, num)]
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigurationError(f"Malformed rho grid {text!r}", setting="rho")


def parse_int_list(text: str, setting: str = "n") -> List[int]:
    """Parse a comma list of integers."""
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError:
        raise ConfigurationError(f"Malformed integer list {text!r}", setting=setting)


def _unquote(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    return value


def read_config_file(path: str) -> Dict[str, str]:
    """
    Read a flat ``key = value`` file.

    Blank lines and ``#`` comments are ignored, values may be quoted, and
    several assignments may share a line when separated by commas outside a
    value list (``model = "gauss_markov", r = 0.9``).
    """
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigurationError(f"Config file not found: {path}", setting="config")

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(file_path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for chunk in _split_assignments(line):
            if "=" not in chunk:
                raise ConfigurationError(
                    f"Line {lineno}: expected key = value, got {chunk!r}", setting="config"
                )
            key, value = chunk.split("=", 1)
            values[key.strip().lower().replace("-", "_")] = _unquote(value)
    logger.debug("Read %d settings from %s", len(values), path)
    return values


def _split_assignments(line: str) -> List[str]:
    # A comma starts a new assignment only if what follows looks like "key ="
    chunks: List[str] = []
    current = ""
    for piece in line.split(","):
        head = piece.split("=", 1)[0].strip()
        if current and "=" in piece and head.isidentifier():
            chunks.append(current)
            current = piece
        else:
            current = f"{current},{piece}" if current else piece
    if current:
        chunks.append(current)
    return chunks


_NUMERIC_FIELDS = {f.name: {"int": int, "float": float}[f.type] for f in fields(NumericsConfig)}


@dataclass
class SweepConfig:
    """Settings for one CLI sweep."""

    model: str = "iid"
    beta: float = 1.0
    rho_grid: List[float] = field(default_factory=lambda: [1e-3, 1e-2, 1e-1, 1.0])
    n_values: List[int] = field(default_factory=lambda: [1024])
    seed: int = 42
    samples: int = 100_000
    output_path: Optional[str] = None
    units: str = "nats"

    # Extra keys from a config file that belong to the model spec
    model_params: Dict[str, str] = field(default_factory=dict)

    # NumericsConfig overrides (quad_points, workers, ...)
    numerics: Dict[str, Any] = field(default_factory=dict)

    @property
    def model_spec(self) -> str:
        """Model spec string with any loose parameters folded in."""
        if not self.model_params:
            return self.model
        sep = "&" if "?" in self.model else "?"
        extra = "&".join(f"{k}={v}" for k, v in self.model_params.items())
        return f"{self.model}{sep}{extra}"

    def validate(self) -> "SweepConfig":
        if not self.rho_grid:
            raise ConfigurationError("rho grid must not be empty", setting="rho")
        if any(not (rho > 0) for rho in self.rho_grid):
            raise ConfigurationError("every rho must be strictly positive", setting="rho")
        if not self.beta >= 1:
            raise ConfigurationError(f"beta must be >= 1, got {self.beta}", setting="beta")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ConfigurationError("n values must be positive integers", setting="n")
        if self.samples < 1:
            raise ConfigurationError("samples must be positive", setting="samples")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer", setting="seed")
        if self.units not in ("nats", "bits"):
            raise ConfigurationError(
                f"units must be 'nats' or 'bits', got {self.units!r}", setting="units"
            )
        return self

    def apply(self, settings: Dict[str, Any]) -> "SweepConfig":
        """Apply raw settings (strings from a file or parsed CLI values); None is skipped."""
        for key, value in settings.items():
            if value is None:
                continue
            key = key.lower().replace("-", "_")
            try:
                if key == "model":
                    self.model = str(value)
                elif key == "beta":
                    self.beta = float(value)
                elif key in ("rho", "rho_grid"):
                    self.rho_grid = (
                        [float(v) for v in value] if isinstance(value, (list, tuple))
                        else parse_rho_grid(value)
                    )
                elif key in ("n", "n_values"):
                    self.n_values = (
                        [int(v) for v in value] if isinstance(value, (list, tuple))
                        else parse_int_list(value)
                    )
                elif key == "seed":
                    self.seed = int(value)
                elif key == "samples":
                    self.samples = int(float(value))
                elif key in ("output", "output_path"):
                    self.output_path = str(value)
                elif key == "units":
                    self.units = str(value).lower()
                elif key in _NUMERIC_FIELDS:
                    caster = _NUMERIC_FIELDS[key]
                    self.numerics[key] = int(float(value)) if caster is int else caster(value)
                else:
                    self.model_params[key] = str(value)
            except ValueError:
                raise ConfigurationError(f"Invalid value {value!r} for {key}", setting=key)
        return self

    @classmethod
    def load(cls, path: str = None, **overrides) -> "SweepConfig":
        """Build a config from an optional file, then command-line overrides."""
        config = cls()
        if path:
            config.apply(read_config_file(path))
        config.apply(overrides)
        return config.validate()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model_spec,
            "beta": self.beta,
            "rho_grid": list(self.rho_grid),
            "n_values": list(self.n_values),
            "seed": self.seed,
            "samples": self.samples,
            "output_path": self.output_path,
            "units": self.units,
            "numerics": dict(self.numerics),
        }


__all__ = [
    "NumericsConfig",
    "SweepConfig",
    "SUITES",
    "configure_numerics",
    "get_numerics",
    "reset_numerics",
    "parse_rho_grid",
    "parse_int_list",
    "read_config_file",
]
