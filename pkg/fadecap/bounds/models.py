"""
Data models for capacity bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from fadecap.exceptions import ConstraintError


@dataclass(frozen=True)
class PowerConstraints:
    """
    Peak power rho and peak-to-average ratio beta.

    Inputs satisfy |Z_i|^2 <= 1 and E|Z_i|^2 <= 1/beta with X = sqrt(rho) Z.
    """
    rho: float
    beta: float = 1.0

    def __post_init__(self):
        if not (self.rho > 0 and np.isfinite(self.rho)):
            raise ConstraintError(
                f"Peak power must be positive and finite, got {self.rho}",
                parameter="rho", value=self.rho,
            )
        if not self.beta >= 1 or not np.isfinite(self.beta):
            raise ConstraintError(
                f"Peak-to-average ratio must be >= 1, got {self.beta}",
                parameter="beta", value=self.beta,
            )

    @property
    def p_ave(self) -> float:
        """Average power rho / beta."""
        return self.rho / self.beta

    @property
    def max_duty(self) -> float:
        return 1.0 / self.beta


@dataclass
class SingleLetterSolution:
    """Optimized input of the memoryless Rayleigh channel under peak/average power."""
    value: float
    powers: np.ndarray
    masses: np.ndarray
    multiplier: float
    iterations: int
    converged: bool = True

    @property
    def mean_power(self) -> float:
        return float(self.masses @ self.powers)

    def support(self, threshold: float = 1e-6) -> Dict[float, float]:
        """Power points carrying more than ``threshold`` probability."""
        keep = self.masses > threshold
        return dict(zip(self.powers[keep].tolist(), self.masses[keep].tolist()))

    def __repr__(self) -> str:
        return (
            f"<SingleLetterSolution I={self.value:.6g} support={len(self.support())} "
            f"iterations={self.iterations} converged={self.converged}>"
        )


@dataclass(frozen=True)
class UPredResult:
    """Outcome of the outer maximization over the average power."""
    value: float
    p_ave: float
    converged: bool = True
    method: str = "endpoint"


@dataclass
class BoundSet:
    """All bounds and asymptotes at one (rho, beta) point, in nats per symbol."""
    rho: float
    beta: float
    U: float
    U_pred: float
    C_u: float
    L_n: float
    f_beta_rho2: float
    theta: float
    n: int = 1
    U_pred_converged: bool = True
    extras: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0 / self.beta + 1e-15:
            raise ConstraintError(
                f"theta={self.theta} outside [0, 1/beta]", parameter="theta", value=self.theta
            )

    def to_dict(self) -> Dict[str, Any]:
        row = {
            "rho": self.rho,
            "U": self.U,
            "U_pred": self.U_pred,
            "C_u": self.C_u,
            "L_n": self.L_n,
            "f_beta_rho2": self.f_beta_rho2,
            "theta": self.theta,
        }
        row.update(self.extras)
        return row

    @classmethod
    def from_dict(cls, data: Dict[str, Any], beta: float = 1.0, n: int = 1) -> "BoundSet":
        core = ("rho", "U", "U_pred", "C_u", "L_n", "f_beta_rho2", "theta")
        return cls(
            beta=data.get("beta", beta),
            n=data.get("n", n),
            extras={k: v for k, v in data.items() if k not in core + ("beta", "n")},
            **{k: data[k] for k in core},
        )

    def __repr__(self) -> str:
        return (
            f"<BoundSet rho={self.rho:g} beta={self.beta:g} U={self.U:.6g} "
            f"U_pred={self.U_pred:.6g} C_u={self.C_u:.6g}>"
        )


def validate_constraints(rho: float, beta: float) -> PowerConstraints:
    return PowerConstraints(rho=float(rho), beta=float(beta))
