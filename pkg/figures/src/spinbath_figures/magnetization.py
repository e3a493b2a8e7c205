"""Quasithermal magnetization plots: one panel per bath temperature."""

import numpy as np

from .common import DENSITY_ORDER, LINE_STYLES, SweepTable, plt, save_figure


def render_magnetization(table: SweepTable, out_path: str) -> None:
    for col in ("f_over_omega", "density_kind", "beta_hbar_omega", "m_quasithermal"):
        table._index(col)

    kinds = [k for k in DENSITY_ORDER if k in set(table.text_column("density_kind"))]
    if not kinds:
        raise ValueError(f"{table.path}: no magnetization rows with a known bath density")
    betas = sorted(set(table.text_column("beta_hbar_omega")), key=float)

    fig, axes = plt.subplots(len(betas), 1, figsize=(4.8, 3.0 * len(betas)),
                             sharex=True, layout="constrained", squeeze=False)
    for ax, beta in zip(axes[:, 0], betas):
        for kind in kinds:
            sub = table.select(density_kind=kind, beta_hbar_omega=beta)
            f = sub.column("f_over_omega")
            m = sub.column("m_quasithermal")
            order = np.argsort(f)
            ax.plot(f[order], m[order], LINE_STYLES[kind], color="black",
                    linewidth=1.0, label=kind)
        ax.axhline(0.0, color="black", linewidth=0.4)
        ax.set_ylabel(r"$\langle\!\langle m \rangle\!\rangle$")
        ax.annotate(rf"$k_B T/\hbar\omega = {1.0 / float(beta):g}$",
                    xy=(0.02, 0.06), xycoords="axes fraction", fontsize=9)
    axes[0, 0].legend(frameon=False, fontsize=8)
    axes[-1, 0].set_xlabel(r"$F/\omega$")
    save_figure(fig, out_path)
