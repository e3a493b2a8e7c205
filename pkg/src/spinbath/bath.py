"""Bath spectral densities, Bose occupation factors, and golden-rule rates.

The overall rate scale drops out of the steady state, so rho0 = 1 is fixed
and 2*pi/hbar^2 becomes a bare 2*pi in scaled units.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .floquet import DEFAULT_L_MAX, FourierElements

__all__ = [
    "DensityKind",
    "BathSpec",
    "RateDiagnostics",
    "RateMatrix",
    "ResonanceError",
    "spectral_density",
    "occupation",
    "rate_matrix",
]


class ResonanceError(ValueError):
    """Transition frequency below the resonance tolerance; N(omega) diverges."""


class DensityKind(enum.Enum):
    CONSTANT = "constant"
    QUADRATIC = "quadratic"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class BathSpec:
    """Spectral density choice, inverse temperature, and coupling vector."""

    density: DensityKind
    beta_hbar_omega: float
    gamma: tuple = (1.0, 0.0, 0.0)
    omega_c_over_omega: float = 5.0
    l_max: int = DEFAULT_L_MAX
    freq_tolerance: float = 1e-9

    def __post_init__(self):
        if self.beta_hbar_omega <= 0.0:
            raise ValueError(f"beta_hbar_omega must be > 0, got {self.beta_hbar_omega}")
        if not (0.0 < self.freq_tolerance <= 1e-3):
            raise ValueError(f"freq_tolerance must lie in (0, 1e-3], got {self.freq_tolerance}")
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))


@dataclass(frozen=True)
class RateDiagnostics:
    skipped_terms: int
    largest_partial_rate: float
    l_min_contributing: int
    l_max_contributing: int


@dataclass(frozen=True)
class RateMatrix:
    """Total Floquet-state transition rates; entry (f, i) is i -> f."""

    gamma_total: np.ndarray
    diagnostics: RateDiagnostics


def spectral_density(b: BathSpec, abs_freq: float) -> float:
    """Bath mode density at |omega~|, with rho0 = 1."""
    if abs_freq < 0.0:
        raise ValueError(f"spectral density takes |frequency| >= 0, got {abs_freq}")
    if b.density is DensityKind.CONSTANT:
        return 1.0
    if b.density is DensityKind.QUADRATIC:
        return float(abs_freq) ** 2
    return float(np.exp(-0.5 * (abs_freq - b.omega_c_over_omega) ** 2))


def occupation(b: BathSpec, freq: float) -> float:
    """Bose factor N(omega~): 1/(e^{beta w} - 1) for w > 0, emission branch
    -1/(e^{beta w} - 1) = 1 + N(|w|) for w < 0.  Always positive."""
    if abs(freq) < b.freq_tolerance:
        raise ResonanceError(
            f"transition frequency {freq} within resonance tolerance {b.freq_tolerance}")
    return float(1.0 / np.expm1(b.beta_hbar_omega * freq)) if freq > 0 \
        else float(-1.0 / np.expm1(b.beta_hbar_omega * freq))


def rate_matrix(fe: FourierElements, b: BathSpec) -> RateMatrix:
    """Total rates Gamma_fi = 2*pi sum_l |V_fi^(l)|^2 N(w_fi^(l)) rho(|w_fi^(l)|).

    Ladder terms whose transition frequency falls below the resonance
    tolerance are skipped (and counted); diagonal f = i entries are
    excluded since they never enter the master equation.
    """
    dim = fe.dim
    w = fe.frequencies
    absw = np.abs(w)
    beta = b.beta_hbar_omega

    offdiag = ~np.eye(dim, dtype=bool)[:, :, None] & np.ones_like(w, dtype=bool)
    resonant = absw < b.freq_tolerance
    keep = offdiag & ~resonant

    n = np.zeros_like(w)
    np.divide(1.0, np.expm1(beta * w), out=n, where=keep & (w > 0))
    np.divide(-1.0, np.expm1(beta * w), out=n, where=keep & (w < 0))

    if b.density is DensityKind.CONSTANT:
        rho = np.ones_like(w)
    elif b.density is DensityKind.QUADRATIC:
        rho = absw ** 2
    else:
        rho = np.exp(-0.5 * (absw - b.omega_c_over_omega) ** 2)

    partial = np.where(keep, 2.0 * np.pi * np.abs(fe.coefficients) ** 2 * n * rho, 0.0)
    total = partial.sum(axis=2)

    skipped = int(np.count_nonzero(offdiag & resonant))
    largest = float(partial.max()) if partial.size else 0.0
    contributing = np.nonzero(partial.sum(axis=(0, 1)) > 0.0)[0]
    ells = np.arange(-fe.l_max, fe.l_max + 1)
    if contributing.size:
        l_lo, l_hi = int(ells[contributing[0]]), int(ells[contributing[-1]])
    else:
        l_lo = l_hi = 0

    if not np.any(total[~np.eye(dim, dtype=bool)] > 0.0):
        raise ValueError("bath cannot equilibrate system: every off-diagonal rate is zero")

    total.setflags(write=False)
    diag = RateDiagnostics(skipped_terms=skipped, largest_partial_rate=largest,
                           l_min_contributing=l_lo, l_max_contributing=l_hi)
    return RateMatrix(gamma_total=total, diagnostics=diag)
