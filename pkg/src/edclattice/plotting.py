"""Figures for the report path: Hasse diagrams, relation matrices and RCC-8 tables.

Rendering uses the Agg backend and strips timestamps from file metadata,
so reruns write identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .axioms import RCC8_ORDER  # noqa: E402
from .edc import EDCLattice  # noqa: E402

_METADATA = {"Software": None}
_RCC8_COLOURS = ("#4c72b0", "#55a868", "#8fd19e", "#c44e52", "#e8a0a2", "#8172b2", "#ccb974", "#dddddd")


def _save(fig: plt.Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100, metadata=_METADATA)
    plt.close(fig)
    return path


def hasse_layout(E: EDCLattice) -> dict[int, tuple[float, float]]:
    """Rank by longest chain from the bottom, spread each rank evenly."""
    n = E.n
    strict = E.leq & ~np.eye(n, dtype=bool)
    rank = np.zeros(n, dtype=int)
    for a in sorted(range(n), key=lambda x: int(E.leq[:, x].sum())):
        below = np.flatnonzero(strict[:, a])
        rank[a] = 1 + rank[below].max() if len(below) else 0
    pos = {}
    for r in range(rank.max() + 1):
        level = [a for a in range(n) if rank[a] == r]
        for k, a in enumerate(level):
            pos[a] = (k - (len(level) - 1) / 2, float(r))
    return pos


def covers(E: EDCLattice) -> list[tuple[int, int]]:
    strict = E.leq & ~np.eye(E.n, dtype=bool)
    between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    return [(int(a), int(b)) for a, b in np.argwhere(strict & ~between)]


def plot_hasse(E: EDCLattice, path: Path, title: str = "lattice") -> Path:
    pos = hasse_layout(E)
    width = max(4.0, 0.9 * max(sum(1 for p in pos.values() if p[1] == r) for r in {p[1] for p in pos.values()}))
    fig, ax = plt.subplots(figsize=(width, 1.0 + 0.9 * (max(p[1] for p in pos.values()) + 1)))
    for a, b in covers(E):
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.5", lw=1, zorder=1)
    for a, (x, y) in pos.items():
        ax.scatter([x], [y], s=40, color="k", zorder=2)
        ax.annotate(E.label(a), (x, y), xytext=(5, 3), textcoords="offset points", fontsize=8)
    ax.set_title(title)
    ax.axis("off")
    return _save(fig, path)


def plot_relations(E: EDCLattice, path: Path) -> Path:
    labels = [E.label(a) for a in range(E.n)]
    fig, axes = plt.subplots(1, 3, figsize=(3 + 1.2 * E.n * 0.6, 0.5 + 0.4 * E.n), squeeze=False)
    for ax, (name, M) in zip(axes[0], (("C", E.C), ("Ch", E.Chat), ("<<", E.Ll))):
        ax.imshow(M, cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
        ax.set_title(name)
        ax.set_xticks(range(E.n), labels, rotation=90, fontsize=6)
        ax.set_yticks(range(E.n), labels, fontsize=6)
    fig.tight_layout()
    return _save(fig, path)


def plot_rcc8(E: EDCLattice, relation: dict[tuple[int, int], str], path: Path) -> Path:
    elems = sorted({a for a, _ in relation} | {b for _, b in relation})
    where = {a: i for i, a in enumerate(elems)}
    grid = np.full((len(elems), len(elems)), np.nan)
    for (a, b), r in relation.items():
        grid[where[a], where[b]] = RCC8_ORDER.index(r)
    cmap = ListedColormap(_RCC8_COLOURS)
    size = 2.5 + 0.35 * len(elems)
    fig, ax = plt.subplots(figsize=(size + 1.5, size))
    im = ax.imshow(grid, cmap=cmap, vmin=-0.5, vmax=len(RCC8_ORDER) - 0.5, interpolation="nearest")
    labels = [E.label(a) for a in elems]
    ax.set_xticks(range(len(elems)), labels, rotation=90, fontsize=6)
    ax.set_yticks(range(len(elems)), labels, fontsize=6)
    bar = fig.colorbar(im, ax=ax, ticks=range(len(RCC8_ORDER)))
    bar.ax.set_yticklabels(RCC8_ORDER)
    ax.set_title("RCC-8")
    fig.tight_layout()
    return _save(fig, path)


def plot_matrix(M: np.ndarray, path: Path, title: str, labels: list[str] | None = None) -> Path:
    k = M.shape[0]
    fig, ax = plt.subplots(figsize=(2.5 + 0.3 * k, 2.5 + 0.3 * k))
    ax.imshow(np.asarray(M, dtype=float), cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
    labels = labels or [str(i + 1) for i in range(k)]
    ax.set_xticks(range(M.shape[1]), labels[: M.shape[1]], rotation=90, fontsize=6)
    ax.set_yticks(range(k), labels[:k], fontsize=6)
    ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)
