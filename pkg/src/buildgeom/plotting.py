"""Figures for CLI reports, rendered to PNG files with the Agg backend."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
    "svg.hashsalt": "buildgeom",
})

_META = {"Software": None}


def _save(fig, path: Path) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)
    return path.name


def plot_building(bldg, path: Path) -> str:
    """Incidence graph of a rank-2 building drawn by vertex type, or the
    f-vector for other ranks."""
    import networkx as nx

    fig, ax = plt.subplots(figsize=(5, 4))
    if bldg.dim == 1:
        g = nx.Graph()
        g.add_nodes_from(bldg.complex.vertices)
        g.add_edges_from(bldg.complex.facets)
        types = [bldg.type_of.get(v, -1) for v in g.nodes]
        pos = nx.bipartite_layout(g, [v for v in g.nodes if bldg.type_of.get(v) == 0])
        nx.draw_networkx(g, pos, ax=ax, node_color=types, cmap="coolwarm",
                         node_size=80, with_labels=False, width=0.5)
        ax.set_title(f"chamber graph: {len(g)} vertices, {g.number_of_edges()} chambers")
        ax.set_axis_off()
    else:
        f = bldg.complex.f_vector()
        ax.bar(range(len(f)), f, color="0.4")
        ax.set_xlabel("face dimension")
        ax.set_ylabel("faces")
        ax.set_xticks(range(len(f)))
    return _save(fig, path)


def plot_sines_residuals(residuals: Mapping[float, Sequence[float]], tolerance: float, path: Path) -> str:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    floor = 1e-18
    for kappa, vals in sorted(residuals.items()):
        logs = [math.log10(max(v, floor)) for v in vals]
        ax.hist(logs, bins=40, histtype="step", label=f"kappa = {kappa:g}")
    ax.axvline(math.log10(tolerance), color="k", linestyle="--", linewidth=0.8)
    ax.set_xlabel("log10 residual")
    ax.set_ylabel("triangles")
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_cover(sample, cover, path: Path) -> str:
    """Sample points coloured by the first cover set containing them."""
    first = {}
    for idx, w in enumerate(cover.elements):
        for i in w.members:
            first.setdefault(i, idx)
    xs = [float(p.x) for p in sample]
    ys = [float(p.y) for p in sample]
    cs = [first.get(i, -1) % 20 for i in range(len(sample))]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter(xs, ys, c=cs, cmap="tab20", s=6)
    ax.axhline(0, color="0.3", linewidth=0.6)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"r = {float(cover.r):g}: order {cover.order}, mesh {float(cover.mesh):.3g}")
    return _save(fig, path)


def plot_ball(o, sample, labels: Sequence[int], path: Path) -> str:
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.scatter([float(p.x) for p in sample], [float(p.y) for p in sample], c=labels, cmap="tab10", s=6)
    ax.plot([float(o.x)], [float(o.y)], "k+", markersize=10)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"punctured ball: {len(set(labels))} components")
    return _save(fig, path)


def plot_angle_convergence(estimates: Mapping[str, object], path: Path) -> str:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    for name, est in sorted(estimates.items()):
        ax.semilogx(est.schedule, [abs(a - math.pi) + 1e-17 for a in est.raw], marker=".", label=name)
    ax.set_yscale("log")
    ax.set_xlabel("s")
    ax.set_ylabel("|angle estimate - pi|")
    ax.legend(frameon=False, fontsize=7)
    return _save(fig, path)
