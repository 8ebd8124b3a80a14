"""
Vector channel - quadratic low-SNR mutual information of block inputs

For a block input Z (|Z_i| <= 1) sent as X = sqrt(rho) Z over the fading
channel, Y given Z is proper Gaussian with covariance rho K_Z + I where

    (K_Z)_ij = conj(z_i) z_j R_H(j - i)

and, with K_mu = E[K_Z],

    I(Z; Y) = rho^2 (E Tr K_Z^2 - Tr K_mu^2) / 2
              - rho^3 (E Tr K_Z^3 - Tr K_mu^3) / 3 + o(rho^3)

Trace computations use explicit dense matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from fadecap.exceptions import ConstraintError
from fadecap.models.base import FadingModel


PROB_TOL = 1e-12


class InputDistribution:
    """
    Finite-support distribution over complex input blocks of length n.

    Attributes:
        n: Block length
        points: (m, n) complex array of atoms
        probs: (m,) probabilities
        beta: Optional peak-to-average ratio the distribution must satisfy
    """

    def __init__(
        self,
        atoms: Iterable[Tuple[Sequence[complex], float]],
        beta: Optional[float] = None,
    ):
        atoms = list(atoms)
        if not atoms:
            raise ConstraintError("an input distribution needs at least one atom")
        self.points = np.array([np.atleast_1d(np.asarray(z, dtype=complex)) for z, _ in atoms])
        self.probs = np.array([float(p) for _, p in atoms])
        self.n = self.points.shape[1]
        self.beta = beta
        self._validate()

    def _validate(self):
        if np.any(self.probs <= 0):
            raise ConstraintError("atom probabilities must be positive", parameter="p")
        total = float(self.probs.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise ConstraintError(f"atom probabilities sum to {total!r}, expected 1",
                                  parameter="p", value=total)
        peak = float(np.abs(self.points).max())
        if peak > 1.0 + PROB_TOL:
            raise ConstraintError(f"atom amplitude {peak:.6g} exceeds the unit peak",
                                  parameter="z", value=peak)
        if self.beta is not None:
            average = self.mean_power()
            worst = int(np.argmax(average))
            if average[worst] > 1.0 / self.beta + PROB_TOL:
                raise ConstraintError(
                    f"coordinate {worst} has average power {average[worst]:.6g} > 1/beta",
                    parameter="beta", value=self.beta,
                )

    @property
    def atoms(self):
        return list(zip(self.points, self.probs))

    def __len__(self) -> int:
        return len(self.probs)

    def mean_power(self) -> np.ndarray:
        """E|Z_i|^2 for each coordinate."""
        return self.probs @ (np.abs(self.points) ** 2)

    def moments(self) -> Dict[str, np.ndarray]:
        """Moments of V_i = |Z_i|^2 and the phase correlation E[conj(Z_i) Z_j]."""
        V = np.abs(self.points) ** 2
        return {
            "EV": self.probs @ V,
            "EVV": np.einsum("m,mi,mj->ij", self.probs, V, V),
            "EZZ": np.einsum("m,mi,mj->ij", self.probs, np.conj(self.points), self.points),
        }

    def __repr__(self) -> str:
        return f"<InputDistribution n={self.n} atoms={len(self)}>"


@dataclass(frozen=True)
class QuadraticMI:
    """rho^2 coefficient of the low-SNR mutual information."""
    coefficient: float

    def value_at(self, rho: float) -> float:
        return self.coefficient * rho * rho


# ---------------------------------------------------------------------------
# Input builders
# ---------------------------------------------------------------------------

def point_mass(z: Sequence[complex], beta: Optional[float] = None) -> InputDistribution:
    return InputDistribution([(z, 1.0)], beta=beta)


def _psk(phases: int) -> np.ndarray:
    if phases < 1:
        raise ConstraintError(f"phases must be >= 1, got {phases}", parameter="phases")
    return np.exp(2j * np.pi * np.arange(phases) / phases)


def iid_onoff(n: int, a: float, phases: int = 2, beta: Optional[float] = None) -> InputDistribution:
    """Each coordinate independently off w.p. 1-a, else one of ``phases`` PSK points."""
    if not 0.0 < a <= 1.0:
        raise ConstraintError(f"duty cycle must lie in (0, 1], got {a}", parameter="a", value=a)
    symbols = [(0j, 1.0 - a)] if a < 1.0 else []
    symbols += [(s, a / phases) for s in _psk(phases)]
    atoms = []
    for combo in itertools.product(symbols, repeat=n):
        atoms.append(([s for s, _ in combo], float(np.prod([p for _, p in combo]))))
    return InputDistribution(atoms, beta=beta)


def coupled_onoff(n: int, a: float, phases: int = 2, beta: Optional[float] = None) -> InputDistribution:
    """Whole block off w.p. 1-a; otherwise every coordinate on with independent PSK phases."""
    if not 0.0 < a <= 1.0:
        raise ConstraintError(f"duty cycle must lie in (0, 1], got {a}", parameter="a", value=a)
    psk = _psk(phases)
    patterns = list(itertools.product(psk, repeat=n))
    atoms = [([0j] * n, 1.0 - a)] if a < 1.0 else []
    atoms += [(list(pattern), a / len(patterns)) for pattern in patterns]
    return InputDistribution(atoms, beta=beta)


# ---------------------------------------------------------------------------
# Covariances and coefficients
# ---------------------------------------------------------------------------

def _correlation_matrix(model: FadingModel, n: int) -> np.ndarray:
    """C[i, j] = E[conj(H_i) H_j] = R_H(j - i)."""
    idx = np.arange(n)
    return model.autocorrelation(idx[None, :] - idx[:, None])


def k_of_z(z: Sequence[complex], model: FadingModel) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.abs(z).max(initial=0.0) > 1.0 + PROB_TOL:
        raise ConstraintError("input exceeds the unit peak", parameter="z")
    return np.conj(z)[:, None] * z[None, :] * _correlation_matrix(model, len(z))


def _all_k(mu: InputDistribution, model: FadingModel) -> np.ndarray:
    C = _correlation_matrix(model, mu.n)
    Z = mu.points
    return np.conj(Z)[:, :, None] * Z[:, None, :] * C[None, :, :]


def k_of_mu(mu: InputDistribution, model: FadingModel) -> np.ndarray:
    return np.tensordot(mu.probs, _all_k(mu, model), axes=1)


def _hermitian_power_trace(K: np.ndarray, power: int) -> np.ndarray:
    eig = np.linalg.eigvalsh(K)
    return np.sum(eig ** power, axis=-1)


def mi_quadratic(mu: InputDistribution, model: FadingModel, rho: float = None) -> QuadraticMI:
    """(E Tr K_Z^2 - Tr K_mu^2) / 2 as a QuadraticMI."""
    if rho is not None and rho < 0:
        raise ConstraintError("rho must be nonnegative", parameter="rho", value=rho)
    Ks = _all_k(mu, model)
    K_mu = np.tensordot(mu.probs, Ks, axes=1)
    # Tr K^2 = sum |K_ij|^2 for Hermitian K
    e_tr = float(mu.probs @ np.sum(np.abs(Ks) ** 2, axis=(1, 2)))
    tr_mu = float(np.sum(np.abs(K_mu) ** 2))
    return QuadraticMI(coefficient=0.5 * (e_tr - tr_mu))


def mi_cubic_coefficient(mu: InputDistribution, model: FadingModel) -> float:
    """rho^3 coefficient -(E Tr K_Z^3 - Tr K_mu^3) / 3."""
    Ks = _all_k(mu, model)
    K_mu = np.tensordot(mu.probs, Ks, axes=1)
    e_tr = float(mu.probs @ _hermitian_power_trace(Ks, 3))
    tr_mu = float(_hermitian_power_trace(K_mu, 3))
    return -(e_tr - tr_mu) / 3.0


def moment_coefficient(mu: InputDistribution, model: FadingModel, n: int = None) -> float:
    """
    rho^2 coefficient from joint moments and |R_H| only.

    (sum_i E V_i^2 + 2 sum_{i<j} |R(i-j)|^2 E V_i V_j
     - sum_i (E V_i)^2 - 2 sum_{i<j} |R(i-j)|^2 |E conj(Z_i) Z_j|^2) / 2
    """
    if n is not None and n != mu.n:
        raise ConstraintError(f"block length {n} does not match distribution ({mu.n})",
                              parameter="n", value=n)
    m = mu.moments()
    R2 = np.abs(_correlation_matrix(model, mu.n)) ** 2
    upper = np.triu(np.ones((mu.n, mu.n), dtype=bool), k=1)
    diag_EVV = np.diag(m["EVV"])
    total = (
        diag_EVV.sum()
        + 2.0 * np.sum(R2[upper] * m["EVV"][upper])
        - np.sum(m["EV"] ** 2)
        - 2.0 * np.sum(R2[upper] * np.abs(m["EZZ"][upper]) ** 2)
    )
    return float(total) / 2.0


def min_eigenvalue(K: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(K).min())
