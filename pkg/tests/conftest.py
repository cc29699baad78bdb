"""Shared generators for the population-recovery and block-diagonal oracles."""

import numpy as np

from blockfactor.blockmodels import DcsbmParams, SbmParams, population_laplacian
from blockfactor.graphs import Graph


def topk_by_magnitude(m: np.ndarray, k: int) -> np.ndarray:
    """Eigenvectors of the k largest-|eigenvalue| pairs (robust init for
    population matrices whose block eigenvalues may be negative)."""
    vals, vecs = np.linalg.eigh(m)
    order = np.argsort(-np.abs(vals))[:k]
    return vecs[:, order]


def random_full_rank_sbm(rng, n=60, k=3, margin=1e-3) -> SbmParams:
    """Random SBM whose population Laplacian has K clearly nonzero eigenvalues."""
    while True:
        z = rng.integers(0, k, size=n)
        z[:k] = np.arange(k)
        b = rng.uniform(0.05, 0.95, size=(k, k))
        b = 0.5 * (b + b.T)
        p = SbmParams(z=z, b=b)
        vals = np.sort(np.abs(np.linalg.eigvalsh(population_laplacian(p))))[::-1]
        if vals[k - 1] > margin:
            return p


def random_full_rank_dcsbm(rng, n=60, k=3, margin=1e-3) -> DcsbmParams:
    while True:
        z = rng.integers(0, k, size=n)
        z[:k] = np.arange(k)
        b = rng.uniform(0.5, 3.0, size=(k, k))
        b = 0.5 * (b + b.T)
        theta = rng.uniform(0.5, 2.0, size=n)
        for q in range(k):
            theta[z == q] /= theta[z == q].sum()
        p = DcsbmParams(z=z, b_prime=b, theta=theta)
        vals = np.sort(np.abs(np.linalg.eigvalsh(population_laplacian(p))))[::-1]
        if vals[k - 1] > margin:
            return p


def random_connected_component(rng, size: int) -> list[tuple[int, int]]:
    """Edges of a connected graph on 0..size-1: spanning tree plus extras."""
    edges = set()
    for v in range(1, size):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    extra = int(rng.integers(0, size))
    for _ in range(extra):
        u, v = rng.choice(size, size=2, replace=False)
        edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def disjoint_components_graph(rng, sizes) -> tuple[Graph, np.ndarray]:
    """Graph assembled from disjoint connected components, plus membership."""
    edges = []
    labels = []
    offset = 0
    for comp, size in enumerate(sizes):
        edges += [(u + offset, v + offset) for u, v in random_connected_component(rng, size)]
        labels += [comp] * size
        offset += size
    return Graph.from_edges(offset, edges), np.array(labels)
