"""Static SVG figures for escape sets and capture-location sweeps."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .reach import ESCAPE  # noqa: E402

ESCAPE_COLOR = "tab:green"
CAPTURE_COLOR = "tab:orange"


def _disk(ax, R):
    th = np.linspace(0, 2 * math.pi, 361)
    ax.plot(R * np.cos(th), R * np.sin(th), color="0.3", lw=1.5)
    ax.set_aspect("equal")
    ax.set_xlim(-1.25 * R, 1.25 * R)
    ax.set_ylim(-1.25 * R, 1.25 * R)


def escape_set_figure(intervals, params, pursuers, path):
    """Heading fan from the evader start: escape arcs green, capture arcs orange."""
    fig, ax = plt.subplots(figsize=(5, 5))
    _disk(ax, params.R)
    ex, ey = params.evader_start
    for lo, hi, label in intervals.intervals:
        color = ESCAPE_COLOR if label == ESCAPE else CAPTURE_COLOR
        th = np.linspace(lo, hi, max(2, int((hi - lo) / 0.01)))
        # wedge clipped to a short radius so the fan stays inside the disk
        rad = 0.5 * (params.R - params.r) + 0.1 * params.R
        xs = np.concatenate([[ex], ex + rad * np.cos(th), [ex]])
        ys = np.concatenate([[ey], ey + rad * np.sin(th), [ey]])
        ax.fill(xs, ys, color=color, alpha=0.6, lw=0)
    ax.plot([ex], [ey], "s", color="tab:blue", label="evader")
    for p in pursuers:
        px, py = p.position(params.R)
        ax.plot([px], [py], "o", color="tab:red")
        arrow = int(p.direction) * 0.15 * params.R
        ax.annotate("", xy=(px - arrow * math.sin(p.theta_p0), py + arrow * math.cos(p.theta_p0)),
                    xytext=(px, py), arrowprops={"arrowstyle": "->", "color": "tab:red"})
    ax.set_title("Escape (green) and capture (orange) headings")
    fig.savefig(path, format="svg")
    plt.close(fig)


def sweep_figure(records, params, path):
    fig, ax = plt.subplots(figsize=(5, 5))
    _disk(ax, params.R)
    values = sorted({rec.value for rec in records})
    cmap = plt.get_cmap("viridis", max(len(values), 2))
    for i, v in enumerate(values):
        pts = np.array([rec.capture_point for rec in records if rec.value == v and rec.error is None])
        if len(pts):
            ax.scatter(pts[:, 0], pts[:, 1], s=10, color=cmap(i), label=f"{records[0].varied_param.value}={v:g}")
    ax.plot([params.r], [0.0], "s", color="tab:blue")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("Worst-case capture locations")
    fig.savefig(path, format="svg")
    plt.close(fig)
