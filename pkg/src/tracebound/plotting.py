"""Render bound-verification scatter plots to files (no interactive backend)."""

import numpy as np
from matplotlib.figure import Figure

from .experiments import SampleRecord


def render_figure1(records: list[SampleRecord], d: int, path: str) -> None:
    """Write the Q scatter with its bounding curves to ``path``.

    Records are expected sorted by increasing reduced rank (the order
    ``run_figure1`` returns). Gray dots are Q = D^2/D_HS per sample, the solid
    red curve is the reduced-rank upper bound R, the dashed blue line is the
    norm-equivalence cap d/4, and the dashed red line is the lower bound 1/2.
    The file format follows the path extension (png, pdf, svg, ...).
    """
    if not records:
        raise ValueError("no records to plot")
    n = len(records)
    x = np.arange(1, n + 1)
    q = np.array([rec.q_ratio for rec in records], dtype=float)
    r = np.array([rec.reduced_rank for rec in records], dtype=float)

    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.subplots()
    ax.scatter(x, q, s=2.0, c="0.55", linewidths=0, label=r"$Q = D^2 / D_{\mathrm{HS}}$",
               rasterized=True)
    ax.plot(x, r, color="tab:red", lw=1.4, label=r"$R$ (reduced rank)")
    ax.axhline(d / 4.0, color="tab:blue", ls="--", lw=1.2, label=rf"$d/4 = {d / 4:g}$")
    ax.axhline(0.5, color="tab:red", ls="--", lw=1.2, label=r"lower bound $1/2$")
    ax.set_xlim(0, n + 1)
    ax.set_xlabel("sample (sorted by increasing $R$)")
    ax.set_ylabel("$Q$ and its bounds")
    ax.set_title(f"d = {d}, {n} random pairs")
    ax.legend(loc="upper left", fontsize=8, framealpha=0.9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
