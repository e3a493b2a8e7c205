"""One-cycle-averaged expectation values and the quasithermal magnetization."""

from dataclasses import dataclass

import numpy as np

from .floquet import FloquetSolution
from .spin_ops import SpinSystem
from .steady_state import OccupationDistribution, boltzmann_reference

__all__ = ["MagnetizationRecord", "cycle_averaged_sz", "quasithermal_magnetization",
           "magnetization_record"]


@dataclass(frozen=True)
class MagnetizationRecord:
    time_averaged_sz: np.ndarray
    quasithermal_m: float
    equilibrium_m: float


def cycle_averaged_sz(fs: FloquetSolution, s: SpinSystem) -> np.ndarray:
    """Per-state cycle average of <u_m(t)|Sz|u_m(t)>.

    Uniform periodic sampling is spectrally exact here: the integrand is a
    trigonometric polynomial whose bandwidth is far below the grid Nyquist.
    """
    u = fs.floquet_functions
    vals = np.einsum("mka,ab,mkb->mk", u.conj(), s.sz, u).real
    return vals.mean(axis=1)


def quasithermal_magnetization(fs: FloquetSolution, s: SpinSystem,
                               p: OccupationDistribution) -> float:
    """Occupation-weighted sum of cycle-averaged Sz over the Floquet states."""
    if len(p.p) != fs.dim:
        raise ValueError(
            f"occupation vector length {len(p.p)} does not match dim {fs.dim}")
    return float(cycle_averaged_sz(fs, s) @ p.p)


def magnetization_record(fs: FloquetSolution, s: SpinSystem, p: OccupationDistribution,
                         omega0: float, beta: float) -> MagnetizationRecord:
    sz_avg = cycle_averaged_sz(fs, s)
    eq = boltzmann_reference(s, omega0, beta)
    return MagnetizationRecord(
        time_averaged_sz=sz_avg,
        quasithermal_m=float(sz_avg @ p.p),
        equilibrium_m=float(s.m_values() @ eq.p),
    )
