"""Figure rendering for region sweeps (matplotlib, imported lazily).

The sweep is three-dimensional (v2, v3, v4), so the figure shows one panel
per distinct v4 value: a scatter of the (v2, v3) grid with blue for "try to
win" and red for "lose on purpose".  Files only — nothing interactive.
"""

from __future__ import annotations

import math
from typing import Iterable

from .frns import Action, RegionRow

WIN_COLOR = "#1f77b4"
LOSE_COLOR = "#d62728"
MAX_PANELS = 20


def region_figure(rows: Iterable[RegionRow], path: str, title: str = "") -> str:
    """Render the sweep to an image file; returns the path written."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_v4: dict = {}
    for row in rows:
        by_v4.setdefault(row.v4, []).append(row)
    slices = sorted(by_v4)
    if not slices:
        raise ValueError("no rows to plot")
    if len(slices) > MAX_PANELS:
        keep = {slices[round(i * (len(slices) - 1) / (MAX_PANELS - 1))] for i in range(MAX_PANELS)}
        slices = sorted(keep)

    cols = min(5, len(slices))
    rows_n = math.ceil(len(slices) / cols)
    fig, axes = plt.subplots(
        rows_n, cols, figsize=(3 * cols, 3 * rows_n), squeeze=False, sharex=True, sharey=True
    )
    for ax in axes.flat:
        ax.set_axis_off()
    for ax, v4 in zip(axes.flat, slices):
        ax.set_axis_on()
        pts = by_v4[v4]
        for action, color in ((Action.TRY_TO_WIN, WIN_COLOR), (Action.LOSE, LOSE_COLOR)):
            xs = [float(p.v2) for p in pts if p.decision is action]
            ys = [float(p.v3) for p in pts if p.decision is action]
            if xs:
                ax.scatter(xs, ys, s=14, c=color, marker="s", linewidths=0)
        ax.set_title(f"v4 = {float(v4):g}", fontsize=9)
        ax.set_xlim(0, 1.05)
        ax.set_ylim(0, 1.05)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
