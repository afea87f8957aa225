"""Summary figures for sweeps, rendered with matplotlib to SVG.

Output is reproducible: a fixed hash salt and no date metadata mean the same
inputs give byte-identical files.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable

import matplotlib
from matplotlib.figure import Figure

from .io.report import ResultRow, Summary, summarize

_RC = {"svg.hashsalt": "congruence-profiler", "svg.fonttype": "path", "font.size": 9}
_SAVE = {"format": "svg", "metadata": {"Date": None}}
_AXES = ("ics", "hrcs", "lbcs")
_LABELS = ("ICS", "HRCS", "LBCS")


def _save(fig: Figure, path: Path) -> Path:
    with matplotlib.rc_context(_RC):
        fig.savefig(path, **_SAVE)
    return path


def radar_grid_figure(rows: list[ResultRow]) -> Figure:
    """One small radar plot per benchmark, with every architecture overlaid."""
    benches = sorted({r.benchmark for r in rows})
    archs = sorted({r.architecture for r in rows})
    ncols = min(4, len(benches))
    nrows = math.ceil(len(benches) / ncols)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(2.6 * ncols, 2.6 * nrows + 0.4))
        # clockwise from vertical, same convention as the standalone radar svg
        theta = [2 * math.pi * i / len(_AXES) for i in range(len(_AXES))]
        by_key = {(r.benchmark, r.architecture): r.scores for r in rows}
        for k, bench in enumerate(benches):
            ax = fig.add_subplot(nrows, ncols, k + 1, projection="polar")
            ax.set_theta_zero_location("N")
            ax.set_theta_direction(-1)
            ax.set_ylim(0, 1)
            ax.set_yticks([0.25, 0.5, 0.75, 1.0])
            ax.set_yticklabels([])
            ax.set_xticks(theta)
            ax.set_xticklabels(_LABELS)
            ax.set_title(bench, fontsize=8)
            for arch in archs:
                sc = by_key.get((bench, arch))
                if sc is None:
                    continue
                vals = [min(1.0, max(0.0, getattr(sc, a) or 0.0)) for a in _AXES]
                line, = ax.plot(theta + theta[:1], vals + vals[:1], lw=1.2, label=arch)
                ax.fill(theta + theta[:1], vals + vals[:1], alpha=0.15, color=line.get_color())
        handles, labels = fig.axes[0].get_legend_handles_labels()
        fig.legend(handles, labels, loc="lower center", ncol=len(archs), frameon=False)
        fig.tight_layout(rect=(0, 0.06, 1, 1))
    return fig


def aggregate_bar_figure(summary: Summary) -> Figure:
    """Mean aggregate score per suite and architecture; lower is better."""
    suites = sorted({m["suite"] for m in summary.means})
    archs = sorted({m["architecture"] for m in summary.means})
    field = summary.ranked_by
    width = 0.8 / len(archs)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(1.6 + 1.4 * len(suites) * max(1, len(archs) / 3), 3.2))
        ax = fig.add_subplot(1, 1, 1)
        for j, arch in enumerate(archs):
            vals = [next((m[field] for m in summary.means
                          if m["suite"] == s and m["architecture"] == arch), 0.0) or 0.0 for s in suites]
            xs = [i + (j - (len(archs) - 1) / 2) * width for i in range(len(suites))]
            ax.bar(xs, vals, width, label=arch)
        ax.set_xticks(range(len(suites)))
        ax.set_xticklabels([s or "all" for s in suites])
        ax.set_ylabel("mean " + field.replace("_", " "))
        ax.legend(frameon=False, fontsize=8)
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
        fig.tight_layout()
    return fig


def render_figures(results: Iterable, out_dir, normalized: bool = False) -> list[Path]:
    """Write ``radar_grid.svg`` and ``aggregate.svg`` into ``out_dir``."""
    summary = summarize(results, normalized)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        _save(radar_grid_figure(summary.rows), out / "radar_grid.svg"),
        _save(aggregate_bar_figure(summary), out / "aggregate.svg"),
    ]
