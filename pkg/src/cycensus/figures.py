"""Render census figures to image files.

matplotlib is imported lazily with the Agg backend so that library use
never needs a display and never pays the import unless figures are asked
for.
"""

from __future__ import annotations

from pathlib import Path

from .census import CensusReport


def _kind(row: dict) -> str:
    if row["cyclic"]:
        return "cyclic"
    if row["abelian"]:
        return "abelian noncyclic"
    return "nonabelian"


def render_figures(report: CensusReport, outdir: str | Path) -> list[Path]:
    """Write the census scatter and the totals bar chart; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []

    fig, ax = plt.subplots(figsize=(9, 5.5))
    styles = {
        "cyclic": dict(marker="o", color="#1f77b4"),
        "abelian noncyclic": dict(marker="s", color="#2ca02c"),
        "nonabelian": dict(marker="^", color="#d62728"),
    }
    for kind, style in styles.items():
        xs = [r["order"] for r in report.rows if _kind(r) == kind]
        ys = [r["census_total"] for r in report.rows if _kind(r) == kind]
        if xs:
            ax.scatter(xs, ys, s=16, alpha=0.6, label=kind, **style)
    for y in (6, 7, 8):
        ax.axhline(y, linestyle="--", linewidth=0.6, color="gray")
    ax.set_xlabel("group order")
    ax.set_ylabel("number of cyclic subgroups")
    ax.set_title(f"cyclic-subgroup totals, catalog up to order {report.max_order}")
    ax.legend(loc="upper left")
    fig.tight_layout()
    scatter_path = outdir / "census_scatter.png"
    fig.savefig(scatter_path, dpi=120)
    plt.close(fig)
    paths.append(scatter_path)

    fig, ax = plt.subplots(figsize=(9, 4.5))
    totals = sorted(report.cross_tab)
    counts = [report.cross_tab[t] for t in totals]
    colors = ["#ff7f0e" if t in (6, 7, 8) else "#1f77b4" for t in totals]
    ax.bar(range(len(totals)), counts, color=colors)
    step = max(1, len(totals) // 30)
    ax.set_xticks(range(0, len(totals), step))
    ax.set_xticklabels([str(totals[i]) for i in range(0, len(totals), step)], rotation=90)
    ax.set_xlabel("number of cyclic subgroups (totals 6, 7, 8 highlighted)")
    ax.set_ylabel("catalog entries")
    ax.set_title("how often each total occurs")
    fig.tight_layout()
    bar_path = outdir / "census_totals_bar.png"
    fig.savefig(bar_path, dpi=120)
    plt.close(fig)
    paths.append(bar_path)

    return paths
