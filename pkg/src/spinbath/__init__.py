"""Periodic thermodynamics of a driven spin coupled to a thermal oscillator bath.

Units throughout: hbar = 1 and drive angular frequency omega = 1.
"""

from .bath import BathSpec, DensityKind, RateMatrix, ResonanceError, occupation, \
    rate_matrix, spectral_density
from .floquet import (DriveConfig, FloquetSolution, FourierElements, Polarization,
                      bessel_j0_collapse_points, fourier_elements, rabi_frequency,
                      solve_circular_analytic, solve_numeric)
from .observables import MagnetizationRecord, cycle_averaged_sz, magnetization_record, \
    quasithermal_magnetization
from .spin_ops import SpinSystem, build_spin_system, coupling_operator
from .steady_state import OccupationDistribution, boltzmann_reference, solve_steady_state
from .sweep import SolverKind, SweepPlan, SweepResult, run_sweep, track_branches, write_csv

__version__ = "0.1.0"

__all__ = [
    "BathSpec", "DensityKind", "RateMatrix", "ResonanceError",
    "DriveConfig", "FloquetSolution", "FourierElements", "Polarization",
    "MagnetizationRecord", "OccupationDistribution", "SolverKind", "SpinSystem",
    "SweepPlan", "SweepResult",
    "bessel_j0_collapse_points", "boltzmann_reference", "build_spin_system",
    "coupling_operator", "cycle_averaged_sz", "fourier_elements",
    "magnetization_record", "occupation", "quasithermal_magnetization",
    "rabi_frequency", "rate_matrix", "run_sweep", "solve_circular_analytic",
    "solve_numeric", "solve_steady_state", "spectral_density", "track_branches",
    "write_csv",
]
