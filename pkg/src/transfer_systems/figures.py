"""Matplotlib renderings of the exported series."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .series import SeriesTable  # noqa: E402

STYLE = {
    "L": dict(color="tab:blue", marker="o", fillstyle="full", label="liftable"),
    "T": dict(color="tab:red", marker="o", fillstyle="full", label="all"),
    "Lmax": dict(color="tab:blue", marker="s", fillstyle="none", label="liftable, max. extendable"),
    "Tmax": dict(color="tab:red", marker="s", fillstyle="none", label="all, max. extendable"),
}


def _xy(table: SeriesTable):
    return [n for n, _ in table], [float(v) for _, v in table]


def plot_counts(tables: dict[str, SeriesTable], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(8, 4.8))
    for name in ("L", "T", "Lmax", "Tmax"):
        if name in tables:
            x, y = _xy(tables[name])
            ax.semilogy(x, y, linestyle="none", markersize=3, **STYLE[name])
    ax.set_xlabel("n")
    ax.set_ylabel("transfer systems on [1] x [n]")
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.legend(frameon=False, fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_ratio(table: SeriesTable, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(8, 4.8))
    x, y = _xy(table)
    ax.plot(x, y, "o", markersize=3, color="black")
    ax.set_xlabel("n")
    ax.set_ylabel("liftable / all")
    ax.set_ylim(bottom=0)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render(tables: dict[str, SeriesTable], out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    written = []
    if any(k in tables for k in STYLE):
        written.append(plot_counts(tables, out_dir / "counts.png"))
    if "ratio" in tables:
        written.append(plot_ratio(tables["ratio"], out_dir / "ratio_LT.png"))
    return written
