"""Driving-amplitude sweeps with continuous branch labeling and CSV output."""

import enum
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import permutations

import numpy as np

from .bath import BathSpec, rate_matrix
from .floquet import (DEFAULT_N_STEPS, DEFAULT_N_T, DriveConfig, FloquetSolution,
                      Polarization, bessel_j0_collapse_points, fourier_elements,
                      rabi_frequency, solve_circular_analytic, solve_numeric)
from .observables import cycle_averaged_sz
from .spin_ops import build_spin_system, coupling_operator
from .steady_state import boltzmann_reference, solve_steady_state

__all__ = ["SolverKind", "SweepPlan", "SweepRow", "SweepResult",
           "run_sweep", "track_branches", "write_csv"]

log = logging.getLogger(__name__)

OUTPUT_SPECTRUM = "spectrum"
OUTPUT_OCCUPATIONS = "occupations"
OUTPUT_MAGNETIZATION = "magnetization"

_COLLAPSE_MATCH_TOL = 1e-9
_COLLAPSE_NUDGE = 1e-6


class SolverKind(enum.Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"
    ANALYTIC_WITH_NUMERIC_CHECK = "analytic+check"


@dataclass(frozen=True)
class SweepPlan:
    """Everything needed to reproduce one sweep deterministically."""

    polarization: Polarization
    two_j: int
    omega0_over_omega: float
    f_grid: tuple
    bath_specs: tuple = ()
    solver: SolverKind = SolverKind.ANALYTIC
    outputs: frozenset = frozenset({OUTPUT_SPECTRUM, OUTPUT_OCCUPATIONS, OUTPUT_MAGNETIZATION})
    n_t: int = DEFAULT_N_T
    n_steps: int = DEFAULT_N_STEPS
    threads: int = 1

    def __post_init__(self):
        grid = tuple(float(f) for f in self.f_grid)
        if any(f < 0.0 for f in grid):
            raise ValueError("f_grid values must be >= 0")
        if len(set(grid)) != len(grid) or list(grid) != sorted(grid):
            raise ValueError("f_grid must be strictly increasing and distinct")
        object.__setattr__(self, "f_grid", grid)
        object.__setattr__(self, "bath_specs", tuple(self.bath_specs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))


@dataclass(frozen=True)
class SweepRow:
    f_over_omega: float
    density_kind: str
    beta_hbar_omega: float
    quasienergies: np.ndarray
    p: np.ndarray
    time_averaged_sz: np.ndarray
    m_quasithermal: float
    m_equilibrium: float
    skipped_terms: int
    error: str = ""


@dataclass(frozen=True)
class SweepResult:
    plan: SweepPlan
    rows: tuple
    notices: tuple = ()


def _collapse_roots(plan: SweepPlan) -> list:
    """Driving strengths where the analytic spectrum is exactly degenerate."""
    f_max = plan.f_grid[-1] if plan.f_grid else 0.0
    roots = []
    if plan.polarization.is_circular:
        sgn = -1.0 if plan.polarization is Polarization.RIGHT_CIRCULAR else 1.0
        det = plan.omega0_over_omega + sgn
        omega_max = np.hypot(det, f_max) + 1.0
        k = 1
        while k / 2.0 <= omega_max:
            target = k / 2.0
            if target >= abs(det):
                roots.append(float(np.sqrt(target ** 2 - det ** 2)))
            k += 1
    else:
        k = 1
        while True:
            zeros = bessel_j0_collapse_points(k)
            if zeros[-1] > f_max + 1.0:
                break
            k += 1
        roots.extend(z for z in zeros if z <= f_max + 1.0)
    return roots


def _sanitize_grid(plan: SweepPlan):
    roots = _collapse_roots(plan)
    grid = []
    notices = []
    for f in plan.f_grid:
        hit = next((r for r in roots if abs(f - r) < _COLLAPSE_MATCH_TOL), None)
        if hit is not None:
            grid.append(f + _COLLAPSE_NUDGE)
            notices.append(
                f"grid point F/omega = {f:.12g} sits on an exact collapse; "
                f"perturbed by +{_COLLAPSE_NUDGE:g}")
        else:
            grid.append(f)
    for n in notices:
        log.info(n)
    return grid, notices


def track_branches(prev: FloquetSolution, next_: FloquetSolution) -> np.ndarray:
    """Permutation perm with next state perm[m] continuing prev branch m.

    Maximizes the summed t = 0 overlap |<u_m^prev(0)|u_perm(m)^next(0)>|^2 by
    greedy assignment; if any greedy match is poor (< 0.5) an exhaustive
    search is used for dim <= 8.  When even that is ambiguous (collapse
    point) the states are simply kept in quasienergy order.
    """
    if prev.dim != next_.dim:
        raise ValueError("branch tracking needs solutions of equal dimension")
    dim = prev.dim
    overlap = np.abs(prev.floquet_functions[:, 0, :].conj()
                     @ next_.floquet_functions[:, 0, :].T) ** 2

    perm = np.full(dim, -1)
    used = np.zeros(dim, dtype=bool)
    work = overlap.copy()
    for _ in range(dim):
        i, j = np.unravel_index(np.argmax(work), work.shape)
        perm[i] = j
        used[j] = True
        work[i, :] = -1.0
        work[:, j] = -1.0
    quality = overlap[np.arange(dim), perm]

    if quality.min() < 0.5 and dim <= 8:
        best, best_total = None, -1.0
        for cand in permutations(range(dim)):
            total = overlap[np.arange(dim), cand].sum()
            if total > best_total:
                best, best_total = cand, total
        perm = np.array(best)
        quality = overlap[np.arange(dim), perm]

    if quality.min() < 0.5:
        log.info("branch tracking ambiguous (min overlap %.3f); "
                 "falling back to quasienergy order", quality.min())
        perm = np.argsort(next_.quasienergies)[np.argsort(np.argsort(prev.quasienergies))]
    return perm


def _permute_solution(fs: FloquetSolution, perm: np.ndarray) -> FloquetSolution:
    return FloquetSolution(
        dim=fs.dim, n_t=fs.n_t,
        quasienergies=fs.quasienergies[perm],
        canonical_quasienergies=fs.canonical_quasienergies[perm],
        floquet_functions=fs.floquet_functions[perm],
    )


def _solve_point(spin, plan: SweepPlan, f: float) -> FloquetSolution:
    drive = DriveConfig(polarization=plan.polarization, f_over_omega=f,
                        omega0_over_omega=plan.omega0_over_omega)
    if plan.solver is SolverKind.NUMERIC or not plan.polarization.is_circular:
        return solve_numeric(spin, drive, n_t=plan.n_t, n_steps=plan.n_steps)
    fs = solve_circular_analytic(spin, drive, n_t=plan.n_t)
    if plan.solver is SolverKind.ANALYTIC_WITH_NUMERIC_CHECK:
        num = solve_numeric(spin, drive, n_t=plan.n_t, n_steps=plan.n_steps)
        gap = np.max(np.abs(np.sort(fs.quasienergies) - np.sort(num.quasienergies)))
        if gap > 1e-7:
            raise ValueError(
                f"analytic/numeric quasienergy mismatch {gap:.2e} at F/omega = {f}")
    return fs


def run_sweep(plan: SweepPlan) -> SweepResult:
    """Solve, label, and evaluate every (F, bath) grid point of the plan.

    Floquet solutions may be computed concurrently; branch tracking is a
    sequential pass over the ordered grid, so the result is independent of
    the thread count.
    """
    spin = build_spin_system(plan.two_j)
    grid, notices = _sanitize_grid(plan)

    if plan.threads > 1:
        with ThreadPoolExecutor(max_workers=plan.threads) as pool:
            solutions = list(pool.map(lambda f: _solve_point(spin, plan, f), grid))
    else:
        solutions = [_solve_point(spin, plan, f) for f in grid]

    # Branch labeling: first point by descending cycle-averaged Sz, then
    # maximal-overlap continuation along the grid.
    labeled = []
    for idx, fs in enumerate(solutions):
        if idx == 0:
            order = np.argsort(-cycle_averaged_sz(fs, spin))
            fs = _permute_solution(fs, order)
        else:
            fs = _permute_solution(fs, track_branches(labeled[-1], fs))
        labeled.append(fs)

    want_rates = bool(plan.outputs & {OUTPUT_OCCUPATIONS, OUTPUT_MAGNETIZATION})
    bath_specs = plan.bath_specs if (plan.bath_specs and want_rates) else (None,)
    nan_vec = np.full(spin.dim, np.nan)

    rows = []
    for f, fs in zip(grid, labeled):
        sz_avg = cycle_averaged_sz(fs, spin)
        for b in bath_specs:
            if b is None:
                rows.append(SweepRow(
                    f_over_omega=f, density_kind="none", beta_hbar_omega=float("nan"),
                    quasienergies=fs.quasienergies, p=nan_vec, time_averaged_sz=sz_avg,
                    m_quasithermal=float("nan"), m_equilibrium=float("nan"),
                    skipped_terms=0))
                continue
            try:
                v = coupling_operator(spin, b.gamma)
                fe = fourier_elements(fs, v, l_max=b.l_max)
                rm = rate_matrix(fe, b)
                p = solve_steady_state(rm)
                eq = boltzmann_reference(spin, plan.omega0_over_omega, b.beta_hbar_omega)
                rows.append(SweepRow(
                    f_over_omega=f, density_kind=b.density.value,
                    beta_hbar_omega=b.beta_hbar_omega,
                    quasienergies=fs.quasienergies, p=p.p, time_averaged_sz=sz_avg,
                    m_quasithermal=float(sz_avg @ p.p),
                    m_equilibrium=float(spin.m_values() @ eq.p),
                    skipped_terms=rm.diagnostics.skipped_terms))
            except ValueError as exc:
                rows.append(SweepRow(
                    f_over_omega=f, density_kind=b.density.value,
                    beta_hbar_omega=b.beta_hbar_omega,
                    quasienergies=fs.quasienergies, p=nan_vec, time_averaged_sz=sz_avg,
                    m_quasithermal=float("nan"), m_equilibrium=float("nan"),
                    skipped_terms=0, error=str(exc)))
                log.warning("row failed at F/omega = %g (%s): %s", f,
                            "none" if b is None else b.density.value, exc)

    return SweepResult(plan=plan, rows=tuple(rows), notices=tuple(notices))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _plan_config_lines(plan: SweepPlan):
    lines = [
        f"polarization = {plan.polarization.value}",
        f"two_j = {plan.two_j}",
        f"omega0 = {_fmt(plan.omega0_over_omega)}",
        f"f_grid = {','.join(_fmt(f) for f in plan.f_grid)}",
        f"solver = {plan.solver.value}",
        f"outputs = {','.join(sorted(plan.outputs))}",
        f"n_t = {plan.n_t}",
        f"n_steps = {plan.n_steps}",
        f"threads = {plan.threads}",
    ]
    for i, b in enumerate(plan.bath_specs):
        lines.append(
            f"bath_{i} = density={b.density.value} beta={_fmt(b.beta_hbar_omega)} "
            f"gamma={','.join(_fmt(g) for g in b.gamma)} "
            f"omega_c={_fmt(b.omega_c_over_omega)} l_max={b.l_max} "
            f"freq_tolerance={_fmt(b.freq_tolerance)}")
    return lines


def write_csv(result: SweepResult, stream) -> None:
    """Write a sweep as CSV with the resolved configuration echoed in comments."""
    dim = result.plan.two_j + 1
    stream.write("# spinbath sweep result\n")
    for line in _plan_config_lines(result.plan):
        stream.write(f"# config: {line}\n")
    for notice in result.notices:
        stream.write(f"# notice: {notice}\n")

    header = ["f_over_omega", "density_kind", "beta_hbar_omega"]
    header += [f"eps_{i}" for i in range(dim)]
    header += [f"p_{i}" for i in range(dim)]
    header += [f"szavg_{i}" for i in range(dim)]
    header += ["m_quasithermal", "m_equilibrium", "skipped_terms"]
    stream.write(",".join(header) + "\n")

    for row in result.rows:
        if row.error:
            stream.write(f"# failed: f_over_omega={_fmt(row.f_over_omega)} "
                         f"density={row.density_kind} reason={row.error}\n")
            continue
        cells = [_fmt(row.f_over_omega), row.density_kind, _fmt(row.beta_hbar_omega)]
        cells += [_fmt(x) for x in row.quasienergies]
        cells += [_fmt(x) for x in row.p]
        cells += [_fmt(x) for x in row.time_averaged_sz]
        cells += [_fmt(row.m_quasithermal), _fmt(row.m_equilibrium), str(row.skipped_terms)]
        stream.write(",".join(cells) + "\n")


def csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()
