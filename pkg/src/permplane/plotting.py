"""Figure rendering for trajectory reports.

Renders the two standard views as PNG files next to the delimited
outputs: the causality plane (one point per window, optionally with
the boundary curves) and the entropy evolution over window index.
Figures carry fixed metadata so identical runs produce identical
bytes.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import CecpTrajectory

PNG_METADATA = {"Software": "permplane"}
FIGURE_DPI = 150

_MARKERS = ("o", "s", "^", "D", "v", "P", "X", "*")


def plot_cecp(
    trajectories: Sequence[CecpTrajectory],
    path: str | os.PathLike,
    bounds: tuple[np.ndarray, np.ndarray] | None = None,
    annotate_every: int = 10,
) -> None:
    """Scatter every window on the complexity-entropy plane.

    With a single trajectory the window indices are written next to
    every ``annotate_every``-th point so drift direction stays legible.
    """
    fig, ax = plt.subplots(figsize=(7.0, 5.0), constrained_layout=True)
    if bounds is not None:
        lower, upper = bounds
        ax.plot(lower[:, 0], lower[:, 1], color="0.6", lw=0.8, label="attainable region")
        ax.plot(upper[:, 0], upper[:, 1], color="0.6", lw=0.8)
    for i, trajectory in enumerate(trajectories):
        h = trajectory.entropies()
        c = trajectory.complexities()
        ax.plot(
            h,
            c,
            _MARKERS[i % len(_MARKERS)],
            ms=4,
            alpha=0.8,
            label=trajectory.name,
        )
        if len(trajectories) == 1 and annotate_every:
            for result in trajectory.results[:: max(annotate_every, 1)]:
                ax.annotate(
                    str(result.index),
                    (result.quantifiers.h, result.quantifiers.c),
                    fontsize=7,
                    textcoords="offset points",
                    xytext=(3, 3),
                )
    ax.plot([1.0], [0.0], "k+", ms=10)  # maximum-efficiency corner
    ax.set_xlabel("normalized permutation entropy H")
    ax.set_ylabel("statistical complexity C")
    ax.set_title("complexity-entropy causality plane")
    ax.legend(loc="best", fontsize=8)
    save_figure(fig, path)


def plot_entropy_evolution(
    trajectories: Sequence[CecpTrajectory],
    path: str | os.PathLike,
    h_threshold: float | None = None,
) -> None:
    """Entropy per window index, one line per series."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0), constrained_layout=True)
    for i, trajectory in enumerate(trajectories):
        indices = [r.index for r in trajectory.results]
        ax.plot(
            indices,
            trajectory.entropies(),
            marker=_MARKERS[i % len(_MARKERS)],
            ms=3,
            lw=1.0,
            label=trajectory.name,
        )
    if h_threshold is not None:
        ax.axhline(h_threshold, color="0.4", lw=0.8, ls="--", label="flag threshold")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("window index")
    ax.set_ylabel("normalized permutation entropy H")
    ax.set_title("permutation entropy evolution")
    ax.legend(loc="best", fontsize=8)
    save_figure(fig, path)


def save_figure(fig, path: str | os.PathLike) -> None:
    """Write a figure atomically with fixed metadata."""
    path = os.fspath(path)
    tmp = path + ".tmp"
    fig.savefig(tmp, format="png", dpi=FIGURE_DPI, metadata=dict(PNG_METADATA))
    plt.close(fig)
    os.replace(tmp, path)
