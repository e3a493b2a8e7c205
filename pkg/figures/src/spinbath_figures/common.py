"""CSV loading and shared plot styling.

The sweep CSV format is the external interface of the simulation package:
`# config:` comment lines echoing the resolved run configuration, one header
row, then one data row per (driving strength, bath) combination. Files
without the configuration echo are refused since their provenance is unknown.
"""

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
# Fixed salt so SVG element ids do not depend on interpreter object addresses.
matplotlib.rcParams["svg.hashsalt"] = "spinbath-figures"

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# Line style per bath density of states:
# constant dotted, quadratic dashed, Gaussian full.
LINE_STYLES = {"constant": ":", "quadratic": "--", "gaussian": "-"}
DENSITY_ORDER = ("constant", "quadratic", "gaussian")

CONFIG_PREFIX = "# config: "


@dataclass(frozen=True)
class SweepTable:
    path: str
    config: dict
    columns: tuple
    cells: tuple  # row-major tuples of strings

    def column(self, name: str) -> np.ndarray:
        return np.array([float(row[self._index(name)]) for row in self.cells])

    def text_column(self, name: str):
        return [row[self._index(name)] for row in self.cells]

    def _index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise ValueError(f"{self.path}: missing required column {name!r}") from None

    def select(self, **criteria) -> "SweepTable":
        """Rows whose string cells match all given column=value criteria."""
        idx = {k: self._index(k) for k in criteria}
        kept = tuple(row for row in self.cells
                     if all(row[idx[k]] == v for k, v in criteria.items()))
        return SweepTable(path=self.path, config=self.config,
                          columns=self.columns, cells=kept)

    def __len__(self):
        return len(self.cells)


def load_sweep_csv(path: str) -> SweepTable:
    config = {}
    columns = None
    cells = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith(CONFIG_PREFIX):
                key, _, value = line[len(CONFIG_PREFIX):].partition("=")
                config[key.strip()] = value.strip()
            elif line.startswith("#") or not line.strip():
                continue
            elif columns is None:
                columns = tuple(line.split(","))
            else:
                cells.append(tuple(line.split(",")))
    if not config:
        raise ValueError(
            f"{path}: no resolved-configuration echo ('# config:' lines); refusing "
            "to plot a CSV of unknown provenance")
    if columns is None or not cells:
        raise ValueError(f"{path}: no data rows")
    return SweepTable(path=path, config=config, columns=columns, cells=tuple(cells))


def require_polarization(table: SweepTable, expected: str) -> None:
    got = table.config.get("polarization")
    if got != expected:
        raise ValueError(
            f"{table.path}: expected a {expected}-polarization sweep, got {got!r}")


def save_figure(fig, out_path: str) -> None:
    """Write a vector image deterministically (no embedded timestamps)."""
    ext = os.path.splitext(out_path)[1].lower()
    if ext == ".pdf":
        metadata = {"CreationDate": None}
    elif ext == ".svg":
        metadata = {"Date": None}
    else:
        raise ValueError(f"vector output required (.pdf or .svg), got {out_path!r}")
    try:
        fig.savefig(out_path, metadata=metadata)
    finally:
        plt.close(fig)
