"""Wall diagram along the λ-axis, written as a byte-stable SVG."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib
from matplotlib.figure import Figure

from .exact import LamInterval, SqrtRat

AXIS = (0.5, 1.0)
_RC = {
    "svg.hashsalt": "k3walls",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "path.simplify": False,
}


@dataclass(frozen=True)
class PlotRow:
    label: str
    walls: tuple[tuple[SqrtRat, str], ...]  # (λ, annotation)


def render_svg(rows: list[PlotRow], window: LamInterval | None, path: str) -> None:
    """One horizontal strip per row; walls as vertical lines, the window shaded."""
    n = max(len(rows), 1)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(7.0, 0.9 + 0.55 * n))
        axes = fig.subplots(n, 1, sharex=True, squeeze=False)[:, 0]
        for ax, row in zip(axes, rows or [PlotRow("", ())]):
            ax.set_xlim(*AXIS)
            ax.set_ylim(0, 1)
            ax.set_yticks([])
            ax.spines["left"].set_visible(False)
            if row.label:
                ax.set_ylabel(row.label, rotation=0, ha="right", va="center")
            if window is not None and not window.is_empty:
                hi = AXIS[1] if window.hi is None else float(window.hi)
                ax.axvspan(float(window.lo), hi, color="#c6dbef", lw=0)
            for lam, note in row.walls:
                x = float(lam)
                ax.axvline(x, color="#b2182b", lw=1.2)
                ax.annotate(f"λ={lam} {note}", (x, 0.5), xytext=(4, 0),
                            textcoords="offset points", va="center", fontsize=7)
        axes[-1].set_xlabel("λ")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
