"""Quasienergy fan plots: one Brillouin zone of folded quasienergies vs F/omega."""

from .common import SweepTable, plt, save_figure


def render_fan(table: SweepTable, out_path: str) -> None:
    f = table.column("f_over_omega")
    eps_cols = [c for c in table.columns if c.startswith("eps_")]
    if not eps_cols:
        raise ValueError(f"{table.path}: missing quasienergy columns (eps_*)")

    fig, ax = plt.subplots(figsize=(4.8, 3.4), layout="constrained")
    # Points rather than lines: folded branches wrap at the zone boundary and
    # connecting them would draw spurious verticals.
    for c in eps_cols:
        ax.plot(f, table.column(c), ".", color="black", markersize=1.2,
                rasterized=False)
    ax.set_xlabel(r"$F/\omega$")
    ax.set_ylabel(r"$\varepsilon/\hbar\omega$")
    ax.set_xlim(f.min(), f.max())
    ax.set_ylim(-0.5, 0.5)
    save_figure(fig, out_path)
