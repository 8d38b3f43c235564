"""Zero-map figure rendering for analysis reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_MARKERS = ["o", "x", "s", "^", "D", "v"]


def render_zero_map(zero_sets: dict, path: str, title: str | None = None) -> None:
    """Scatter the finite-zero sets on the complex plane with the unit circle.

    ``zero_sets`` maps a label to a sequence of complex zeros.  One figure
    is written to ``path``; empty sets still appear in the legend so absent
    zeros are visible at a glance.
    """
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    theta = np.linspace(0.0, 2.0 * np.pi, 361)
    ax.plot(np.cos(theta), np.sin(theta), "--", color="0.6", lw=1.0, label="unit circle")
    ax.axhline(0.0, color="0.85", lw=0.8)
    ax.axvline(0.0, color="0.85", lw=0.8)
    for (label, zeros), marker in zip(zero_sets.items(), _MARKERS * 4):
        zs = np.asarray([complex(z) for z in zeros])
        if zs.size:
            ax.plot(zs.real, zs.imag, marker, mfc="none", ms=8, label=f"{label} ({zs.size})")
        else:
            ax.plot([], [], marker, mfc="none", ms=8, label=f"{label} (0)")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.25)
    ax.legend(loc="best", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
