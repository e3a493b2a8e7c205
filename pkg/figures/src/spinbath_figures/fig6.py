"""Quasithermal magnetization for left-circular driving, one panel per temperature."""

import argparse

from .common import load_sweep_csv, require_polarization
from .magnetization import render_magnetization


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        description="Render left-circular magnetization curves from a magnetization sweep CSV.")
    ap.add_argument("csv", help="input sweep CSV (spinbath magnetization, left polarization)")
    ap.add_argument("out", help="output image path (.pdf or .svg)")
    args = ap.parse_args(argv)
    table = load_sweep_csv(args.csv)
    require_polarization(table, "left")
    render_magnetization(table, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
