"""Floquet solvers for a spin in a static field plus a monochromatic drive.

Units: hbar = 1 and the drive angular frequency omega = 1, so the drive
period is 2*pi and all quasienergies are folded into [-1/2, 1/2).

Two solver routes are provided:

* ``solve_circular_analytic`` uses the rotating-frame diagonalization that
  is exact for circularly polarized driving,
* ``solve_numeric`` composes the one-period propagator from midpoint-frozen
  step exponentials and works for any polarization.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import j0 as _scipy_j0

from .spin_ops import SpinSystem

__all__ = [
    "Polarization",
    "DriveConfig",
    "FloquetSolution",
    "FourierElements",
    "rabi_frequency",
    "solve_circular_analytic",
    "solve_numeric",
    "fourier_elements",
    "bessel_j0_collapse_points",
]

T_DRIVE = 2.0 * np.pi

DEFAULT_N_T = 128
DEFAULT_N_STEPS = 4096
DEFAULT_L_MAX = 32


class Polarization(enum.Enum):
    RIGHT_CIRCULAR = "right"
    LEFT_CIRCULAR = "left"
    LINEAR = "linear"

    @property
    def is_circular(self) -> bool:
        return self is not Polarization.LINEAR


@dataclass(frozen=True)
class DriveConfig:
    """Drive polarization and scaled field strengths F/omega, omega0/omega."""

    polarization: Polarization
    f_over_omega: float
    omega0_over_omega: float

    def __post_init__(self):
        if self.f_over_omega < 0.0:
            raise ValueError(f"f_over_omega must be >= 0, got {self.f_over_omega}")


@dataclass(frozen=True)
class FloquetSolution:
    """Quasienergies and time-sampled Floquet functions at one parameter point.

    ``floquet_functions[m, k, :]`` is the state vector u_m(t_k) at
    t_k = 2*pi*k/n_t.  ``quasienergies`` are the folded representatives in
    [-1/2, 1/2) paired consistently with the stored u_m, so that
    psi_m(t) = u_m(t) exp(-i eps_m t) solves the Schroedinger equation.
    ``canonical_quasienergies`` lie on the unfolded branch connecting to the
    static energies E_m = omega0*m at F = 0 (analytic solver; the numeric
    solver has no continuation path and reports the folded values).
    """

    dim: int
    n_t: int
    quasienergies: np.ndarray
    canonical_quasienergies: np.ndarray
    floquet_functions: np.ndarray

    def times(self) -> np.ndarray:
        return T_DRIVE * np.arange(self.n_t) / self.n_t


@dataclass(frozen=True)
class FourierElements:
    """Fourier data V_fi^(l) of <u_f(t)|V|u_i(t)> and the ladder frequencies.

    ``coefficients[f, i, l + l_max]`` is the coefficient of exp(+i*l*t);
    ``frequencies[f, i, l + l_max] = eps_f - eps_i + l`` uses the folded
    quasienergy representatives for every l.
    """

    dim: int
    l_max: int
    coefficients: np.ndarray
    frequencies: np.ndarray

    def coefficient(self, f: int, i: int, ell: int) -> complex:
        return self.coefficients[f, i, ell + self.l_max]

    def frequency(self, f: int, i: int, ell: int) -> float:
        return self.frequencies[f, i, ell + self.l_max]


def rabi_frequency(d: DriveConfig) -> float:
    """Rabi frequency of a circular drive in units of omega.

    Right circular: sqrt((omega0 - 1)^2 + F^2).  Left circular maps to
    right-circular driving with reversed static field, giving
    sqrt((omega0 + 1)^2 + F^2).
    """
    if not d.polarization.is_circular:
        raise ValueError("Rabi frequency is defined for circular polarization only")
    sgn = -1.0 if d.polarization is Polarization.RIGHT_CIRCULAR else 1.0
    return float(np.hypot(d.omega0_over_omega + sgn, d.f_over_omega))


def fold(eps) -> np.ndarray:
    """Fold quasienergies into the Brillouin zone [-1/2, 1/2)."""
    eps = np.asarray(eps, dtype=float)
    return eps - np.floor(eps + 0.5)


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Deterministic global phase: largest-magnitude component real positive."""
    out = vecs.copy()
    for col in range(out.shape[1]):
        idx = int(np.argmax(np.abs(out[:, col])))
        phase = out[idx, col] / abs(out[idx, col])
        out[:, col] /= phase
    return out


def _drive_sign(p: Polarization) -> float:
    return -1.0 if p is Polarization.RIGHT_CIRCULAR else 1.0


def solve_circular_analytic(s: SpinSystem, d: DriveConfig, n_t: int = DEFAULT_N_T) -> FloquetSolution:
    """Exact Floquet solution for circularly polarized driving.

    Transforming to the frame co-rotating with the drive leaves the static
    Hamiltonian H_rot = (omega0 -/+ 1) Sz + F Sx (upper sign: right
    circular).  Its eigenpairs (Omega*k, chi) give the quasienergies
    eps_m = omega0*m + (lambda_m - lambda_m(F=0)) on the canonical branch,
    and the Floquet functions are rigid rotations of the chi_m.
    """
    if not d.polarization.is_circular:
        raise ValueError("linear polarization has no analytic solution; use solve_numeric")
    if n_t < 4:
        raise ValueError(f"n_t must be >= 4, got {n_t}")

    sgn = _drive_sign(d.polarization)
    omega0 = d.omega0_over_omega
    f = d.f_over_omega
    detuning = omega0 + sgn

    h_rot = detuning * s.sz + f * s.sx
    lam, chi = np.linalg.eigh(h_rot)  # ascending eigenvalues Omega*k, k = -J..J
    chi = _fix_phases(chi)

    # Label each rotating-frame eigenstate by the m it connects to at F = 0,
    # where lambda = detuning*m: ascending lambda means ascending or
    # descending m depending on the sign of the detuning.
    k = np.arange(s.dim) - s.two_j / 2.0
    axis = 1.0 if detuning >= 0.0 else -1.0
    m_labels = axis * k

    canonical = lam + (omega0 - detuning) * m_labels  # equals omega0*m at F = 0
    folded = fold(canonical)

    # Reorder to descending m so the state index matches the sz basis.
    order = np.argsort(-m_labels)
    m_labels = m_labels[order]
    lam = lam[order]
    canonical = canonical[order]
    folded = folded[order]
    chi = chi[:, order]

    t = T_DRIVE * np.arange(n_t) / n_t
    m_diag = s.m_values()  # sz eigenvalues in basis order
    u = np.empty((s.dim, n_t, s.dim), dtype=complex)
    for i in range(s.dim):
        # u_m(t) = exp(sgn*i*t*Sz) chi_m * exp(i*(eps - lambda)*t); the
        # exponent combination is integer-valued so u is 2*pi-periodic.
        alpha = folded[i] - lam[i]
        phases = np.exp(1j * np.outer(t, sgn * m_diag) + 1j * alpha * t[:, None])
        u[i] = phases * chi[:, i][None, :]

    u.setflags(write=False)
    folded.setflags(write=False)
    canonical.setflags(write=False)
    return FloquetSolution(dim=s.dim, n_t=n_t, quasienergies=folded,
                           canonical_quasienergies=canonical, floquet_functions=u)


def _hamiltonian_samples(s: SpinSystem, d: DriveConfig, t: np.ndarray) -> np.ndarray:
    """Stack of H(t) matrices, shape (len(t), dim, dim)."""
    omega0 = d.omega0_over_omega
    f = d.f_over_omega
    cos = np.cos(t)[:, None, None]
    sin = np.sin(t)[:, None, None]
    if d.polarization is Polarization.RIGHT_CIRCULAR:
        osc = f * (cos * s.sx + sin * s.sy)
    elif d.polarization is Polarization.LEFT_CIRCULAR:
        osc = f * (cos * s.sx - sin * s.sy)
    else:
        osc = f * cos * s.sx
    return omega0 * s.sz[None, :, :] + osc


def _orthonormalize_eigenbasis(eps: np.ndarray, vecs: np.ndarray, sz: np.ndarray,
                               degeneracy_tol: float = 1e-10):
    """Stabilize eigenvectors of the monodromy matrix.

    Within (near-)degenerate eigenphase clusters the raw eigenvectors are an
    arbitrary, possibly non-orthogonal mixture; orthonormalize them and pick
    the basis that diagonalizes Sz inside the cluster so the result is
    reproducible at collapse points.
    """
    dim = len(eps)
    order = np.argsort(eps)
    eps = eps[order]
    vecs = vecs[:, order]

    clusters = []
    start = 0
    for i in range(1, dim):
        if eps[i] - eps[i - 1] > degeneracy_tol:
            clusters.append(list(range(start, i)))
            start = i
    clusters.append(list(range(start, dim)))
    # Degeneracy can also wrap across the +-1/2 zone seam; merge the first
    # and last clusters when the circular gap closes.
    if dim > 1 and (eps[0] + 1.0) - eps[-1] <= degeneracy_tol and len(clusters) > 1:
        clusters = clusters[1:-1] + [clusters[-1] + clusters[0]]

    for cl in clusters:
        idx = np.array(cl)
        if len(idx) == 1:
            v = vecs[:, idx[0]]
            vecs[:, idx[0]] = v / np.linalg.norm(v)
            continue
        block = vecs[:, idx]
        q, _ = np.linalg.qr(block)
        sz_sub = q.conj().T @ sz @ q
        _, w = np.linalg.eigh(sz_sub)
        vecs[:, idx] = q @ w

    return eps, _fix_phases(vecs)


def solve_numeric(s: SpinSystem, d: DriveConfig, n_t: int = DEFAULT_N_T,
                  n_steps: int = DEFAULT_N_STEPS) -> FloquetSolution:
    """Floquet solution from the one-period propagator, any polarization.

    The propagator is composed from per-step exact exponentials of the
    midpoint-frozen Hamiltonian (second-order, exactly unitary per step).
    Eigenphases of U(T) give the folded quasienergies; the Floquet
    functions are sampled as u_m(t_k) = exp(+i eps_m t_k) U(t_k, 0) v_m.
    """
    if n_t < 4:
        raise ValueError(f"n_t must be >= 4, got {n_t}")
    if n_steps < 100:
        raise ValueError(f"n_steps must be >= 100, got {n_steps}")
    if n_steps % n_t != 0:
        raise ValueError(f"n_steps ({n_steps}) must be an integer multiple of n_t ({n_t})")

    dt = T_DRIVE / n_steps
    t_mid = dt * (np.arange(n_steps) + 0.5)
    h = _hamiltonian_samples(s, d, t_mid)
    w, v = np.linalg.eigh(h)
    phase = np.exp(-1j * w * dt)
    steps = np.einsum("kab,kb,kcb->kac", v, phase, v.conj())

    stride = n_steps // n_t
    u_samples = np.empty((n_t, s.dim, s.dim), dtype=complex)
    acc = np.eye(s.dim, dtype=complex)
    for k in range(n_steps):
        if k % stride == 0:
            u_samples[k // stride] = acc
        acc = steps[k] @ acc
    monodromy = acc

    unitarity = np.max(np.abs(monodromy.conj().T @ monodromy - np.eye(s.dim)))
    if unitarity > 1e-8:
        raise ValueError(
            f"one-period propagator is not unitary to 1e-8 (deviation {unitarity:.2e}); "
            "increase n_steps")

    evals, evecs = np.linalg.eig(monodromy)
    eps = fold(-np.angle(evals) / T_DRIVE)
    eps, evecs = _orthonormalize_eigenbasis(eps, evecs, np.asarray(s.sz))

    t = T_DRIVE * np.arange(n_t) / n_t
    u = np.einsum("mk,kab,bm->mka", np.exp(1j * np.outer(eps, t)), u_samples, evecs)

    u.setflags(write=False)
    eps.setflags(write=False)
    return FloquetSolution(dim=s.dim, n_t=n_t, quasienergies=eps,
                           canonical_quasienergies=eps.copy(), floquet_functions=u)


def fourier_elements(fs: FloquetSolution, v: np.ndarray, l_max: int = DEFAULT_L_MAX) -> FourierElements:
    """Fourier-decompose the matrix elements <u_f(t)|V|u_i(t)>.

    The sampled sequences are transformed on the uniform time grid, so the
    coefficients are exact once the integrand's bandwidth fits below the
    Nyquist index n_t/2.
    """
    if l_max > fs.n_t // 2 - 1:
        raise ValueError(f"l_max = {l_max} too large for time grid n_t = {fs.n_t}")
    v = np.asarray(v, dtype=complex)
    if not np.allclose(v, v.conj().T, atol=1e-12):
        raise ValueError("coupling operator must be Hermitian")

    u = fs.floquet_functions
    g = np.einsum("fka,ab,ikb->fik", u.conj(), v, u)
    # g(t) = sum_l c_l exp(+i l t)  =>  c_l = FFT[g][l mod n_t] / n_t
    spectrum = np.fft.fft(g, axis=2) / fs.n_t

    ells = np.arange(-l_max, l_max + 1)
    coeffs = spectrum[:, :, ells % fs.n_t]
    freqs = (fs.quasienergies[:, None, None] - fs.quasienergies[None, :, None]
             + ells[None, None, :].astype(float))

    coeffs.setflags(write=False)
    freqs.setflags(write=False)
    return FourierElements(dim=fs.dim, l_max=l_max, coefficients=coeffs, frequencies=freqs)


def bessel_j0_collapse_points(k_max: int) -> list:
    """First k_max positive zeros of the Bessel function J0.

    Linear-drive quasienergy collapses sit at these driving strengths in
    the high-frequency approximation.  Zeros are located by bracketing on
    the ~pi-spaced sign changes of J0 and bisection to full precision.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")

    zeros = []
    lo = 1e-12
    while len(zeros) < k_max:
        hi = lo + 0.5
        while _scipy_j0(lo) * _scipy_j0(hi) > 0.0:
            lo, hi = hi, hi + 0.5
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo < 1e-14:
                break
            if _scipy_j0(lo) * _scipy_j0(mid) <= 0.0:
                hi = mid
            else:
                lo = mid
        zeros.append(0.5 * (lo + hi))
        lo = hi + 0.5
    return zeros
