"""Built-in cross-module verification suites behind `spinbath verify`."""

from dataclasses import dataclass

import numpy as np

from .bath import BathSpec, DensityKind, RateMatrix, rate_matrix
from .floquet import (DriveConfig, Polarization, fourier_elements,
                      solve_circular_analytic, solve_numeric)
from .observables import quasithermal_magnetization
from .spin_ops import build_spin_system, coupling_operator
from .steady_state import boltzmann_reference, solve_steady_state

__all__ = ["CheckResult", "CHECKS", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_spin_algebra(n_steps: int) -> CheckResult:
    worst = 0.0
    for two_j in range(1, 17):
        s = build_spin_system(two_j)
        comm = s.sx @ s.sy - s.sy @ s.sx - 1j * s.sz
        casimir = s.sx @ s.sx + s.sy @ s.sy + s.sz @ s.sz \
            - s.j * (s.j + 1) * np.eye(s.dim)
        herm = max(np.max(np.abs(op - op.conj().T)) for op in (s.sx, s.sy, s.sz))
        worst = max(worst, np.max(np.abs(comm)), np.max(np.abs(casimir)), herm)
    return CheckResult("spin-algebra", worst < 1e-12,
                       f"max identity violation {worst:.2e} over two_j = 1..16")


def _check_analytic_numeric(n_steps: int) -> CheckResult:
    rng = np.random.default_rng(20)
    worst_eps, worst_proj = 0.0, 0.0
    for _ in range(20):
        two_j = int(rng.integers(1, 8))
        s = build_spin_system(two_j)
        pol = Polarization.RIGHT_CIRCULAR if rng.random() < 0.5 else Polarization.LEFT_CIRCULAR
        d = DriveConfig(pol, float(rng.uniform(0.0, 3.0)), float(rng.uniform(-1.5, 1.5)))
        ana = solve_circular_analytic(s, d, n_t=64)
        # The 1e-7 gate needs a finer time step than the other suites.
        num = solve_numeric(s, d, n_t=64, n_steps=max(n_steps, 32768))
        worst_eps = max(worst_eps, float(np.max(np.abs(
            np.sort(ana.quasienergies) - np.sort(num.quasienergies)))))
        for i in np.argsort(ana.quasienergies):
            ua = ana.floquet_functions[i, 0]
            gaps = np.abs(np.subtract.outer(num.quasienergies, ana.quasienergies[i]))
            j = int(np.argmin(gaps))
            un = num.floquet_functions[j, 0]
            pa = np.outer(ua, ua.conj())
            pn = np.outer(un, un.conj())
            worst_proj = max(worst_proj, float(np.max(np.abs(pa - pn))))
    ok = worst_eps < 1e-7 and worst_proj < 1e-6
    return CheckResult("analytic-numeric", ok,
                       f"max quasienergy gap {worst_eps:.2e}, max projector gap {worst_proj:.2e}")


def _check_unitarity(n_steps: int) -> CheckResult:
    s = build_spin_system(7)
    d = DriveConfig(Polarization.LINEAR, 2.0, 0.1)
    try:
        n_t = 4 if n_steps % 4 == 0 else n_steps
        solve_numeric(s, d, n_t=n_t, n_steps=n_steps)
    except ValueError as exc:
        return CheckResult("unitarity", False, str(exc))
    return CheckResult("unitarity", True,
                       f"propagator unitary to 1e-8 at n_steps = {n_steps}")


def _check_detailed_balance(n_steps: int) -> CheckResult:
    s = build_spin_system(7)
    d = DriveConfig(Polarization.RIGHT_CIRCULAR, 0.0, 0.1)
    fs = solve_circular_analytic(s, d, n_t=64)
    v = coupling_operator(s, (1.0, 0.0, 0.0))
    worst = 0.0
    for density in DensityKind:
        for beta in (1.0, 10.0):
            b = BathSpec(density=density, beta_hbar_omega=beta, gamma=(1.0, 0.0, 0.0), l_max=16)
            rm = rate_matrix(fourier_elements(fs, v, l_max=16), b)
            g = rm.gamma_total
            eps = fs.quasienergies
            for f in range(s.dim):
                for i in range(s.dim):
                    if f == i or g[f, i] <= 0.0 or g[i, f] <= 0.0:
                        continue
                    expected = np.exp(-beta * (eps[f] - eps[i]))
                    worst = max(worst, abs(g[f, i] / g[i, f] - expected))
    return CheckResult("detailed-balance", worst < 1e-8,
                       f"max rate-ratio deviation {worst:.2e} at F = 0")


def _check_pt_symmetry(n_steps: int) -> CheckResult:
    s = build_spin_system(7)
    worst_spec = 0.0
    worst_mag = 0.0
    rng = np.random.default_rng(7)
    for _ in range(5):
        f = float(rng.uniform(0.05, 2.0))
        left = DriveConfig(Polarization.LEFT_CIRCULAR, f, 0.1)
        right = DriveConfig(Polarization.RIGHT_CIRCULAR, f, -0.1)
        for solver in (solve_circular_analytic,
                       lambda s_, d_: solve_numeric(s_, d_, n_t=64, n_steps=2048)):
            sl = solver(s, left)
            sr = solver(s, right)
            worst_spec = max(worst_spec, float(np.max(np.abs(
                np.sort(sl.quasienergies) - np.sort(sr.quasienergies)))))
        b = BathSpec(density=DensityKind.GAUSSIAN, beta_hbar_omega=1.0,
                     gamma=(1.0, 0.0, 0.0), l_max=16)
        v = coupling_operator(s, b.gamma)
        mags = []
        for d in (left, right):
            fs = solve_circular_analytic(s, d, n_t=64)
            p = solve_steady_state(rate_matrix(fourier_elements(fs, v, l_max=16), b))
            mags.append(quasithermal_magnetization(fs, s, p))
        worst_mag = max(worst_mag, abs(mags[0] + mags[1]))
    ok = worst_spec < 1e-7 and worst_mag < 1e-8
    return CheckResult("pt-symmetry", ok,
                       f"max spectrum gap {worst_spec:.2e}, max magnetization sum {worst_mag:.2e}")


def _check_parseval(n_steps: int) -> CheckResult:
    s = build_spin_system(7)
    d = DriveConfig(Polarization.LINEAR, 3.0, 0.1)
    fs = solve_numeric(s, d, n_t=128, n_steps=max(n_steps, 128))
    v = coupling_operator(s, (1.0, 1.0, 1.0))
    fe = fourier_elements(fs, v, l_max=128 // 2 - 1)
    u = fs.floquet_functions
    g = np.einsum("fka,ab,ikb->fik", u.conj(), v, u)
    lhs = np.sum(np.abs(fe.coefficients) ** 2, axis=2)
    rhs = np.mean(np.abs(g) ** 2, axis=2)
    gap = float(np.max(np.abs(lhs - rhs)))
    return CheckResult("parseval", gap < 1e-8, f"max Parseval defect {gap:.2e}")


def _check_steady_state(n_steps: int) -> CheckResult:
    rng = np.random.default_rng(11)
    worst_norm = 0.0
    worst_neg = 0.0
    for _ in range(200):
        dim = int(rng.integers(2, 13))
        g = rng.random((dim, dim))
        np.fill_diagonal(g, 0.0)
        p = solve_steady_state(RateMatrix(gamma_total=g, diagnostics=None))
        worst_norm = max(worst_norm, abs(p.p.sum() - 1.0))
        worst_neg = max(worst_neg, float(-p.p.min()) if p.p.min() < 0 else 0.0)
    ok = worst_norm < 1e-12 and worst_neg == 0.0
    return CheckResult("steady-state", ok,
                       f"max normalization defect {worst_norm:.2e}, "
                       f"max negativity {worst_neg:.2e}")


def _check_undriven_boltzmann(n_steps: int) -> CheckResult:
    s = build_spin_system(7)
    d = DriveConfig(Polarization.RIGHT_CIRCULAR, 0.0, 0.1)
    fs = solve_circular_analytic(s, d, n_t=64)
    v = coupling_operator(s, (1.0, 0.0, 0.0))
    worst = 0.0
    for density in DensityKind:
        for beta in (1.0, 10.0):
            b = BathSpec(density=density, beta_hbar_omega=beta, gamma=(1.0, 0.0, 0.0), l_max=16)
            p = solve_steady_state(rate_matrix(fourier_elements(fs, v, l_max=16), b))
            eq = boltzmann_reference(s, 0.1, beta)
            worst = max(worst, float(np.max(np.abs(p.p - eq.p))))
    return CheckResult("undriven-boltzmann", worst < 1e-8,
                       f"max occupation deviation from Boltzmann {worst:.2e}")


CHECKS = {
    "spin-algebra": _check_spin_algebra,
    "analytic-numeric": _check_analytic_numeric,
    "unitarity": _check_unitarity,
    "detailed-balance": _check_detailed_balance,
    "undriven-boltzmann": _check_undriven_boltzmann,
    "pt-symmetry": _check_pt_symmetry,
    "parseval": _check_parseval,
    "steady-state": _check_steady_state,
}


def run_checks(names=None, n_steps: int = 2048):
    """Run the named suites (all by default) and return their results."""
    if names:
        unknown = sorted(set(names) - set(CHECKS))
        if unknown:
            raise ValueError(f"unknown check(s): {', '.join(unknown)}")
        selected = [n for n in CHECKS if n in set(names)]
    else:
        selected = list(CHECKS)
    return [CHECKS[name](n_steps) for name in selected]
