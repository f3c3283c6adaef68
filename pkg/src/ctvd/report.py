"""Figure rendering for the stats campaign report."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_stats_figure(rows: list[dict], path) -> None:
    """Scatter the kernel sizes against k with the per-k size bound overlaid.

    `rows` are the stats CSV rows (keys k, input_n, kernel_n, bound).  The
    bound dwarfs observed kernels, so the y-axis is logarithmic.
    """
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ks = sorted({row["k"] for row in rows})
    for label, key, marker in (("input", "input_n", "x"), ("kernel", "kernel_n", "o")):
        xs = [row["k"] for row in rows]
        ys = [max(row[key], 1) for row in rows]
        ax.scatter(xs, ys, marker=marker, alpha=0.6, label=f"{label} vertices")
    if ks:
        bounds = [max(row["bound"] for row in rows if row["k"] == k) for k in ks]
        ax.plot(ks, bounds, "r--", label="size bound")
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("vertices")
    ax.set_xticks(ks)
    ax.legend()
    ax.set_title("kernel size versus budget")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
