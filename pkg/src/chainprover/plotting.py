"""Figures written next to metric reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from chainprover.metrics import Confusion  # noqa: E402


def plot_confusion(confusion: Confusion, path, title: str = "Reasoning chain classification"):
    """Row-normalized heatmap (gold rows, predicted columns) annotated with counts."""
    counts = np.asarray(confusion.matrix, dtype=float)
    rows = counts.sum(axis=1, keepdims=True)
    share = np.divide(counts, rows, out=np.zeros_like(counts), where=rows > 0)

    fig, ax = plt.subplots(figsize=(6.4, 5.4))
    im = ax.imshow(share, cmap="Blues", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(confusion.labels)), confusion.labels)
    ax.set_yticks(range(len(confusion.labels)), confusion.labels)
    ax.set_xlabel("Predicted")
    ax.set_ylabel("Gold")
    ax.set_title(title)
    for i in range(counts.shape[0]):
        for j in range(counts.shape[1]):
            if counts[i, j]:
                ax.text(j, i, f"{share[i, j]:.0%}\n({int(counts[i, j])})", ha="center", va="center",
                        fontsize=8, color="white" if share[i, j] > 0.6 else "black")
    fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04, label="share of gold row")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
