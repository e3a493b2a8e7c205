"""Exact spin operator matrices for arbitrary integer and half-integer J.

The spin size is carried around as the integer 2J so that half-integer
values stay exact; the basis is ordered by descending magnetic quantum
number m = J, J-1, ..., -J.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["SpinSystem", "build_spin_system", "coupling_operator"]


@dataclass(frozen=True)
class SpinSystem:
    """Spin operators for a single spin J in the descending-m basis."""

    two_j: int
    dim: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers J, J-1, ..., -J (the sz diagonal)."""
        return np.arange(self.two_j, -self.two_j - 1, -2) / 2.0


def build_spin_system(two_j: int) -> SpinSystem:
    """Construct the (2J+1)-dimensional matrices Sx, Sy, Sz.

    Ladder matrix elements are <m+1|S+|m> = sqrt(J(J+1) - m(m+1)).
    two_j = 0 is rejected: a single level carries no dynamics.
    """
    if not isinstance(two_j, (int, np.integer)):
        raise TypeError(f"two_j must be an integer, got {two_j!r}")
    if two_j == 0:
        raise ValueError("two_j = 0 is a trivial one-level system; need two_j >= 1")
    if two_j < 0:
        raise ValueError(f"two_j must be nonnegative, got {two_j}")

    dim = two_j + 1
    j = two_j / 2.0
    m = np.arange(two_j, -two_j - 1, -2) / 2.0

    # S+ raises m; in descending-m ordering it sits on the superdiagonal.
    sp = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        sp[i - 1, i] = np.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    sm = sp.conj().T

    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    sz = np.diag(m).astype(complex)

    sx.setflags(write=False)
    sy.setflags(write=False)
    sz.setflags(write=False)
    return SpinSystem(two_j=int(two_j), dim=dim, sx=sx, sy=sy, sz=sz)


def coupling_operator(s: SpinSystem, gamma) -> np.ndarray:
    """Hermitian bath-coupling operator gamma_x Sx + gamma_y Sy + gamma_z Sz."""
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (3,):
        raise ValueError(f"gamma must be a 3-vector, got shape {gamma.shape}")
    if np.all(gamma == 0.0):
        raise ValueError("all-zero coupling vector: no bath coupling, steady state undefined")
    return gamma[0] * s.sx + gamma[1] * s.sy + gamma[2] * s.sz
