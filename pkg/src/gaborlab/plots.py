"""Matplotlib figure emission: every plot renders straight to an SVG file.

The Agg backend and a fixed svg hashsalt keep output reproducible; SVG
metadata dates are suppressed so reruns emit identical figures.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams["svg.hashsalt"] = "gabor-lab"

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}, "bbox_inches": "tight"}

__all__ = ["save_heatmap", "save_profiles", "save_envelope_map"]


def save_heatmap(grid: np.ndarray, path, title: str = "", log: bool = False,
                 xlabel: str = "time", ylabel: str = "frequency") -> None:
    """Render |grid| as a heatmap (linear or log magnitude) to an SVG file."""
    mag = np.abs(np.asarray(grid))
    if log:
        floor = mag.max() * 1e-16 + 1e-300
        mag = np.log10(np.maximum(mag, floor))
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    im = ax.imshow(mag.T, origin="lower", aspect="equal", cmap="viridis")
    fig.colorbar(im, ax=ax, label="log10 magnitude" if log else "magnitude")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_profiles(xs, named_curves: dict, path, xlabel: str = "N",
                  ylabel: str = "value", logy: bool = True, title: str = "") -> None:
    """Plot one or more named curves over a shared x grid to an SVG file."""
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    for name, ys in named_curves.items():
        ax.plot(xs, ys, marker="o", ms=3.5, lw=1.2, label=name)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    if len(named_curves) > 1:
        ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_envelope_map(displacements: np.ndarray, values: np.ndarray, path,
                      title: str = "") -> None:
    """Scatter the envelope over signed (dx, domega) offsets, log color scale."""
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    vals = np.maximum(values, values.max() * 1e-16 + 1e-300)
    sc = ax.scatter(displacements[:, 0], displacements[:, 1],
                    c=np.log10(vals), s=14, cmap="magma")
    fig.colorbar(sc, ax=ax, label="log10 envelope")
    ax.set_xlabel("dx")
    ax.set_ylabel("domega")
    if title:
        ax.set_title(title)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
