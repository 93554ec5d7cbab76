"""Random and structured host graphs, labelled by graph class."""
from __future__ import annotations

import numpy as np
from scipy.spatial import Delaunay

from .graph import Graph


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def grid(rows: int, cols: int) -> Graph:
    idx = np.arange(rows * cols).reshape(rows, cols)
    edges = list(zip(idx[:, :-1].ravel().tolist(), idx[:, 1:].ravel().tolist()))
    edges += list(zip(idx[:-1, :].ravel().tolist(), idx[1:, :].ravel().tolist()))
    return Graph.from_edges(rows * cols, edges)


def stars_with_noise(n: int, centers: int, p_noise: float, rng: np.random.Generator) -> Graph:
    """Each non-centre vertex joins a random centre; a few random extra edges."""
    centers = max(1, min(centers, n))
    edges = [(int(rng.integers(centers)), v) for v in range(centers, n)]
    noise = erdos_renyi(n, p_noise, rng)
    return Graph.from_edges(n, edges + noise.edges())


def planar_triangulation_subgraph(n: int, keep: float, rng: np.random.Generator) -> Graph:
    """Random edge subgraph of the Delaunay triangulation of n random points."""
    if n < 4:
        return erdos_renyi(n, keep, rng)
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices.tolist():
        edges |= {(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))}
    edges = sorted(edges)
    mask = rng.random(len(edges)) < keep
    return Graph.from_edges(n, [e for e, m in zip(edges, mask) if m])


GRAPH_CLASSES = ("er", "planar", "grid", "stars")


def random_graph(cls: str, n: int, rng: np.random.Generator) -> Graph:
    if cls == "er":
        return erdos_renyi(n, float(rng.choice([0.1, 0.2, 0.3, 0.5])), rng)
    if cls == "planar":
        return planar_triangulation_subgraph(n, float(rng.uniform(0.5, 1.0)), rng)
    if cls == "grid":
        rows = max(1, int(rng.integers(1, max(2, int(n ** 0.5)) + 1)))
        return grid(rows, max(1, n // rows))
    if cls == "stars":
        return stars_with_noise(n, int(rng.integers(1, 4)), 0.05, rng)
    raise ValueError(f"unknown graph class {cls!r}")
