"""Quasithermal magnetization for linear driving, one panel per temperature."""

import argparse

from .common import load_sweep_csv, require_polarization
from .magnetization import render_magnetization


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        description="Render linear-drive magnetization curves from a magnetization sweep CSV.")
    ap.add_argument("csv", help="input sweep CSV (spinbath magnetization, linear polarization)")
    ap.add_argument("out", help="output image path (.pdf or .svg)")
    args = ap.parse_args(argv)
    table = load_sweep_csv(args.csv)
    require_polarization(table, "linear")
    render_magnetization(table, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
