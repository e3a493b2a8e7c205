"""Quasistationary Floquet occupations and the Boltzmann equilibrium reference."""

from dataclasses import dataclass

import numpy as np

from .bath import RateMatrix
from .spin_ops import SpinSystem

__all__ = ["OccupationDistribution", "solve_steady_state", "boltzmann_reference"]

_CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class OccupationDistribution:
    """Normalized occupation probabilities and the master-equation residual."""

    p: np.ndarray
    residual: float


def _finalize(p: np.ndarray, generator: np.ndarray) -> OccupationDistribution:
    if np.any(p < -_CLAMP_TOL):
        raise ValueError(
            f"steady-state solver produced negative occupation {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    residual = float(np.max(np.abs(generator @ p)))
    p.setflags(write=False)
    return OccupationDistribution(p=p, residual=residual)


def solve_steady_state(r: RateMatrix) -> OccupationDistribution:
    """Stationary distribution of the Pauli master equation.

    Builds the generator L with L_nm = Gamma_nm (n != m) and column sums
    zero, then solves L p = 0 with one row replaced by the normalization
    constraint; falls back to the SVD null vector when that system is
    ill-conditioned.
    """
    gamma = np.asarray(r.gamma_total, dtype=float)
    dim = gamma.shape[0]
    gen = gamma.copy()
    np.fill_diagonal(gen, 0.0)
    gen -= np.diag(gen.sum(axis=0))

    a = gen.copy()
    a[-1, :] = 1.0
    b = np.zeros(dim)
    b[-1] = 1.0
    if np.linalg.cond(a) < 1e12:
        p = np.linalg.solve(a, b)
        return _finalize(p, gen)

    # Near-degenerate generator: fall back to the singular vector of the
    # smallest singular value, and flag a genuinely multi-dimensional kernel.
    u_, s_, vh = np.linalg.svd(gen)
    scale = s_[0] if s_[0] > 0 else 1.0
    null_dims = int(np.count_nonzero(s_ / scale < 1e-12))
    if null_dims > 1:
        raise ValueError(
            f"degenerate steady state: generator kernel has dimension {null_dims}; "
            f"singular values {s_}")
    p = vh[-1].real
    if p.sum() < 0:
        p = -p
    return _finalize(p, gen)


def boltzmann_reference(s: SpinSystem, omega0: float, beta: float) -> OccupationDistribution:
    """Equilibrium distribution p_m = exp(-beta*omega0*m)/Z over the static levels."""
    if beta <= 0.0:
        raise ValueError(f"beta must be > 0, got {beta}")
    log_w = -beta * omega0 * s.m_values()
    log_w -= log_w.max()  # overflow-safe
    p = np.exp(log_w)
    p = p / p.sum()
    p.setflags(write=False)
    return OccupationDistribution(p=p, residual=0.0)
