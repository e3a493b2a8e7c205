"""Command-line interface: spectrum sweeps, magnetization sweeps, verification."""

import argparse
import os
import sys

from .bath import BathSpec, DensityKind
from .floquet import Polarization
from .sweep import (OUTPUT_MAGNETIZATION, OUTPUT_OCCUPATIONS, OUTPUT_SPECTRUM,
                    SolverKind, SweepPlan, run_sweep, write_csv)
from .verify import CHECKS, run_checks

# One flat namespace of configuration keys; every key can come from a
# key = value config file or be overridden on the command line.
DEFAULTS = {
    "polarization": "right",
    "two_j": 7,
    "omega0": 0.1,
    "f_min": 0.0,
    "f_max": 2.0,
    "f_steps": 201,
    "density": "constant",
    "omega_c": 5.0,
    "kbt": 1.0,
    "gamma": "1,0,0",
    "l_max": 32,
    "n_t": 128,
    "n_steps": 4096,
    "freq_tolerance": 1e-9,
    "solver": "auto",
    "threads": os.cpu_count() or 1,
    "out": "-",
}

_PARSERS = {
    "polarization": str, "two_j": int, "omega0": float, "f_min": float,
    "f_max": float, "f_steps": int, "density": str, "omega_c": float,
    "kbt": str, "gamma": str, "l_max": int, "n_t": int, "n_steps": int,
    "freq_tolerance": float, "solver": str, "threads": int, "out": str,
}
# kbt and density accept comma-separated lists for multi-curve sweeps.


class ConfigError(Exception):
    pass


def parse_config_file(path: str) -> dict:
    """Parse a flat `key = value` file with # comments; unknown keys are rejected."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in DEFAULTS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _PARSERS[key](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="key = value configuration file")
    p.add_argument("--polarization", choices=["right", "left", "linear"],
                   help=f"drive polarization (default: {DEFAULTS['polarization']})")
    p.add_argument("--two-j", dest="two_j", type=int,
                   help=f"2J, integer >= 1 (default: {DEFAULTS['two_j']})")
    p.add_argument("--omega0", type=float,
                   help=f"static field omega0/omega (default: {DEFAULTS['omega0']})")
    p.add_argument("--f-min", dest="f_min", type=float,
                   help=f"sweep start F/omega (default: {DEFAULTS['f_min']})")
    p.add_argument("--f-max", dest="f_max", type=float,
                   help=f"sweep end F/omega (default: {DEFAULTS['f_max']})")
    p.add_argument("--f-steps", dest="f_steps", type=int,
                   help=f"number of grid points (default: {DEFAULTS['f_steps']})")
    p.add_argument("--density",
                   help="bath spectral density: constant, quadratic, gaussian; "
                        f"comma-separated list allowed (default: {DEFAULTS['density']})")
    p.add_argument("--omega-c", dest="omega_c", type=float,
                   help=f"Gaussian density center omega_c/omega (default: {DEFAULTS['omega_c']})")
    p.add_argument("--kbt",
                   help="bath temperature k_B T/(hbar omega); comma-separated list allowed "
                        f"(default: {DEFAULTS['kbt']})")
    p.add_argument("--gamma",
                   help=f"coupling vector gamma_x,gamma_y,gamma_z (default: {DEFAULTS['gamma']})")
    p.add_argument("--l-max", dest="l_max", type=int,
                   help=f"Fourier ladder cutoff (default: {DEFAULTS['l_max']})")
    p.add_argument("--n-t", dest="n_t", type=int,
                   help=f"time-grid size per period (default: {DEFAULTS['n_t']})")
    p.add_argument("--n-steps", dest="n_steps", type=int,
                   help=f"propagator steps per period (default: {DEFAULTS['n_steps']})")
    p.add_argument("--freq-tolerance", dest="freq_tolerance", type=float,
                   help=f"resonant-frequency skip threshold (default: {DEFAULTS['freq_tolerance']})")
    p.add_argument("--solver", choices=["auto", "analytic", "numeric", "analytic+check"],
                   help=f"Floquet solver selection (default: {DEFAULTS['solver']})")
    p.add_argument("--threads", type=int,
                   help="concurrent Floquet solves (default: machine parallelism)")
    p.add_argument("--out", metavar="PATH",
                   help="output CSV path, '-' for stdout (default: '-')")


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(parse_config_file(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _parse_list(value, cast):
    return [cast(x) for x in str(value).split(",") if x.strip() != ""]


def _build_plan(cfg: dict, outputs) -> SweepPlan:
    pol = {"right": Polarization.RIGHT_CIRCULAR,
           "left": Polarization.LEFT_CIRCULAR,
           "linear": Polarization.LINEAR}[cfg["polarization"]]
    if cfg["f_steps"] < 1:
        raise ConfigError("f_steps must be >= 1")
    if cfg["f_steps"] == 1 or cfg["f_max"] == cfg["f_min"]:
        grid = [cfg["f_min"]]
    else:
        step = (cfg["f_max"] - cfg["f_min"]) / (cfg["f_steps"] - 1)
        grid = [cfg["f_min"] + i * step for i in range(cfg["f_steps"])]

    solver = {"auto": SolverKind.ANALYTIC if pol is not Polarization.LINEAR else SolverKind.NUMERIC,
              "analytic": SolverKind.ANALYTIC,
              "numeric": SolverKind.NUMERIC,
              "analytic+check": SolverKind.ANALYTIC_WITH_NUMERIC_CHECK}[cfg["solver"]]
    if solver is not SolverKind.NUMERIC and pol is Polarization.LINEAR:
        solver = SolverKind.NUMERIC

    bath_specs = []
    if OUTPUT_MAGNETIZATION in outputs or OUTPUT_OCCUPATIONS in outputs:
        gamma = tuple(_parse_list(cfg["gamma"], float))
        if len(gamma) != 3:
            raise ConfigError(f"gamma must have three components, got {cfg['gamma']!r}")
        kbts = _parse_list(cfg["kbt"], float)
        densities = _parse_list(cfg["density"], str)
        for kbt in kbts:
            if kbt <= 0:
                raise ConfigError(f"kbt must be > 0, got {kbt}")
            for name in densities:
                try:
                    kind = DensityKind(name)
                except ValueError as exc:
                    raise ConfigError(f"unknown density {name!r}") from exc
                bath_specs.append(BathSpec(
                    density=kind, beta_hbar_omega=1.0 / kbt, gamma=gamma,
                    omega_c_over_omega=cfg["omega_c"], l_max=cfg["l_max"],
                    freq_tolerance=cfg["freq_tolerance"]))

    return SweepPlan(
        polarization=pol, two_j=cfg["two_j"], omega0_over_omega=cfg["omega0"],
        f_grid=tuple(grid), bath_specs=tuple(bath_specs), solver=solver,
        outputs=frozenset(outputs), n_t=cfg["n_t"], n_steps=cfg["n_steps"],
        threads=max(1, cfg["threads"]))


def _emit(result, out: str) -> None:
    if out == "-":
        write_csv(result, sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_csv(result, fh)


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    plan = _build_plan(cfg, {OUTPUT_SPECTRUM})
    result = run_sweep(plan)
    _emit(result, cfg["out"])
    return 1 if any(row.error for row in result.rows) else 0


def cmd_magnetization(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    plan = _build_plan(cfg, {OUTPUT_SPECTRUM, OUTPUT_OCCUPATIONS, OUTPUT_MAGNETIZATION})
    result = run_sweep(plan)
    _emit(result, cfg["out"])
    return 1 if any(row.error for row in result.rows) else 0


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    names = args.check or None
    results = run_checks(names, n_steps=cfg["n_steps"])
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    print(f"# {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbath",
        description="Nonequilibrium steady states of a driven spin coupled to a "
                    "thermal oscillator bath (hbar = omega = 1 units).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="quasienergy spectrum vs driving strength")
    _add_common_flags(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_mag = sub.add_parser("magnetization",
                           help="full pipeline: rates, steady state, quasithermal magnetization")
    _add_common_flags(p_mag)
    p_mag.set_defaults(func=cmd_magnetization)

    p_ver = sub.add_parser("verify", help="run built-in cross-module property suites")
    _add_common_flags(p_ver)
    p_ver.add_argument("--check", action="append", choices=sorted(CHECKS),
                       help="run only the named suite (repeatable; default: all)")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
