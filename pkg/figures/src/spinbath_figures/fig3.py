"""Quasienergy fan for linear driving."""

import argparse

from .common import load_sweep_csv, require_polarization
from .fan import render_fan


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        description="Render the linear-drive quasienergy fan from a spectrum sweep CSV.")
    ap.add_argument("csv", help="input sweep CSV (spinbath spectrum, linear polarization)")
    ap.add_argument("out", help="output image path (.pdf or .svg)")
    args = ap.parse_args(argv)
    table = load_sweep_csv(args.csv)
    require_polarization(table, "linear")
    render_fan(table, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
