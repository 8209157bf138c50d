"""Figures for combination reports.

Uses the object-oriented matplotlib API with the Agg canvas so nothing
touches pyplot's global state; safe to call from worker threads and on
headless machines.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .verdict_eval import CombinationReport, Verdict

VERDICT_COLORS = {
    Verdict.CLEAN: "#4c72b0",
    Verdict.HEAVY_REVISION: "#55a868",
    Verdict.LIGHT_REVISION: "#dd8452",
    Verdict.NEAR_COPY: "#c44e52",
}


def _new_figure(n_groups: int) -> tuple[Figure, object]:
    width = max(5.0, 0.6 * n_groups + 2.0)
    fig = Figure(figsize=(width, 3.4), dpi=110)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(1, 1, 1)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    # fixed metadata keeps the files byte-stable between runs
    fig.savefig(path, metadata={"Software": None})
    return path


def plot_verdict_means(reports: Sequence[CombinationReport], path: str | Path) -> Path:
    """Grouped bars of mean score per verdict, whiskers at one std. dev."""
    fig, ax = _new_figure(len(reports))
    width = 0.8 / len(Verdict)
    xs = range(len(reports))
    for k, verdict in enumerate(Verdict):
        means = [r.group(verdict).mean for r in reports]
        errs = [math.sqrt(r.group(verdict).variance) for r in reports]
        ax.bar(
            [x - 0.4 + (k + 0.5) * width for x in xs],
            means,
            width,
            yerr=errs,
            capsize=2,
            color=VERDICT_COLORS[verdict],
            label=verdict.label,
            error_kw={"elinewidth": 0.7},
        )
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.label for r in reports])
    ax.set_xlabel("combination")
    ax.set_ylabel("mean similarity")
    ax.set_ylim(0, 1.05)
    ax.legend(ncol=4, fontsize=8, frameon=False, loc="upper left")
    return _save(fig, path)


def plot_dispersion(reports: Sequence[CombinationReport], path: str | Path) -> Path:
    """Per-verdict variance-to-mean ratio, with the aggregate marked."""
    fig, ax = _new_figure(len(reports))
    width = 0.8 / len(Verdict)
    xs = range(len(reports))
    for k, verdict in enumerate(Verdict):
        ds = [r.group(verdict).dispersion or 0.0 for r in reports]
        ax.bar([x - 0.4 + (k + 0.5) * width for x in xs], ds, width,
               color=VERDICT_COLORS[verdict], label=verdict.label)
    ax.scatter(list(xs), [r.worst_dispersion for r in reports], marker="_", s=300,
               color="black", zorder=3, label=reports[0].aggregate if reports else "max")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.label for r in reports])
    ax.set_xlabel("combination")
    ax.set_ylabel("variance / mean")
    ax.legend(ncol=5, fontsize=8, frameon=False, loc="upper left")
    return _save(fig, path)


def render_figures(reports: Sequence[CombinationReport], stem: str | Path) -> list[Path]:
    """Write ``<stem>_means.png`` and ``<stem>_dispersion.png``."""
    stem = Path(stem)
    return [
        plot_verdict_means(reports, stem.with_name(stem.name + "_means.png")),
        plot_dispersion(reports, stem.with_name(stem.name + "_dispersion.png")),
    ]
