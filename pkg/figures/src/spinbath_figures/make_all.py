"""Driver: generate the six sweep CSVs via the spinbath CLI, render all figures.

The physics always runs in the simulation package; this script only shells
out to its command-line interface and then plots the resulting CSV files.
Existing CSVs are reused unless --force is given.
"""

import argparse
import os
import subprocess
import sys

from . import fig1, fig2, fig3, fig4, fig5, fig6

DENSITIES = "constant,quadratic,gaussian"
TEMPERATURES = "1.0,0.1"

SWEEPS = {
    "fig1.csv": ["spectrum", "--polarization", "right",
                 "--f-max", "2", "--f-steps", "401"],
    "fig2.csv": ["magnetization", "--polarization", "right",
                 "--f-max", "2", "--f-steps", "201",
                 "--density", DENSITIES, "--kbt", TEMPERATURES],
    "fig3.csv": ["spectrum", "--polarization", "linear",
                 "--f-max", "8", "--f-steps", "321",
                 "--n-t", "32", "--n-steps", "3200"],
    "fig4.csv": ["magnetization", "--polarization", "linear",
                 "--gamma", "1,1,1", "--f-max", "8", "--f-steps", "161",
                 "--density", DENSITIES, "--kbt", TEMPERATURES,
                 "--n-t", "64", "--n-steps", "3200", "--l-max", "31"],
    "fig5.csv": ["spectrum", "--polarization", "left",
                 "--f-max", "2", "--f-steps", "401"],
    "fig6.csv": ["magnetization", "--polarization", "left",
                 "--f-max", "2", "--f-steps", "201",
                 "--density", DENSITIES, "--kbt", TEMPERATURES],
}

RENDERERS = {
    "fig1": fig1, "fig2": fig2, "fig3": fig3,
    "fig4": fig4, "fig5": fig5, "fig6": fig6,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", help="directory for CSV files and images")
    ap.add_argument("--spinbath", default="spinbath",
                    help="simulation CLI executable (default: spinbath on PATH)")
    ap.add_argument("--format", default="pdf", choices=["pdf", "svg"],
                    help="image format (default: pdf)")
    ap.add_argument("--force", action="store_true",
                    help="regenerate CSVs even if they already exist")
    args = ap.parse_args(argv)

    os.makedirs(args.outdir, exist_ok=True)
    for name, cli_args in SWEEPS.items():
        path = os.path.join(args.outdir, name)
        if os.path.exists(path) and not args.force:
            print(f"keeping {path}")
            continue
        cmd = [args.spinbath, *cli_args, "--out", path]
        print("running:", " ".join(cmd))
        proc = subprocess.run(cmd)
        if proc.returncode != 0:
            print(f"error: sweep for {name} failed (exit {proc.returncode})",
                  file=sys.stderr)
            return proc.returncode

    for stem, module in RENDERERS.items():
        csv_path = os.path.join(args.outdir, f"{stem}.csv")
        img_path = os.path.join(args.outdir, f"{stem}.{args.format}")
        module.main([csv_path, img_path])
        print(f"wrote {img_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
