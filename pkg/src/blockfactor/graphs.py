"""Undirected simple graphs: construction, degrees, Laplacians, components."""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyGraphError, GraphParseError, IsolatedNodeError

__all__ = [
    "Graph",
    "degrees",
    "normalized_laplacian",
    "largest_connected_component",
    "connected_components",
    "is_connected",
    "induced_subgraph",
    "symmetrize_directed",
]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes 0..n-1.

    Edges are canonical (i, j) pairs with i < j, sorted and deduplicated,
    so the adjacency matrix is symmetric, binary and zero on the diagonal
    by construction.  Instances are immutable and safe to share across
    parallel workers.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    node_names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        prev = None
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) is not canonical for n={self.n}")
            if prev is not None and (i, j) <= prev:
                raise ValueError("edges must be sorted and unique")
            prev = (i, j)
        if self.node_names is not None and len(self.node_names) != self.n:
            raise ValueError("node_names length must equal n")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        node_names: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build a graph from an arbitrary edge iterable.

        Self loops are rejected, endpoints are reordered to i < j, and
        duplicates collapse.
        """
        canon = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self loop on node {i} not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            canon.add((i, j) if i < j else (j, i))
        names = tuple(node_names) if node_names is not None else None
        return cls(n=n, edges=tuple(sorted(canon)), node_names=names)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = 1.0
            a[j, i] = 1.0
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency lists, for BFS-style traversals."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)


def degrees(g: Graph) -> np.ndarray:
    """Per-node degree vector; sums to twice the edge count."""
    d = np.zeros(g.n, dtype=np.int64)
    for i, j in g.edges:
        d[i] += 1
        d[j] += 1
    return d


def normalized_laplacian(g: Graph) -> np.ndarray:
    """L = D^{-1/2} A D^{-1/2} with exact symmetry.

    Raises IsolatedNodeError if any node has degree 0; callers should
    restrict to the largest connected component first.
    """
    d = degrees(g)
    zero = np.flatnonzero(d == 0)
    if zero.size:
        raise IsolatedNodeError(int(zero[0]))
    inv_sqrt = 1.0 / np.sqrt(d.astype(np.float64))
    lap = np.zeros((g.n, g.n))
    for i, j in g.edges:
        v = inv_sqrt[i] * inv_sqrt[j]
        lap[i, j] = v
        lap[j, i] = v
    return lap


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return len(connected_components(g)) == 1


def largest_connected_component(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the largest component plus the old->new index map.

    Ties between equally large components go to the one containing the
    smallest original node index (components are generated in that order,
    so the first maximum wins).
    """
    if g.n == 0:
        raise EmptyGraphError("cannot take the largest component of an empty graph")
    comps = connected_components(g)
    best = max(comps, key=len)
    index_map = {old: new for new, old in enumerate(best)}
    keep = set(best)
    edges = [
        (index_map[i], index_map[j]) for i, j in g.edges if i in keep and j in keep
    ]
    names = None
    if g.node_names is not None:
        names = tuple(g.node_names[old] for old in best)
    return Graph.from_edges(len(best), edges, names), index_map


def induced_subgraph(g: Graph, nodes: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on the given nodes (kept in the given order) plus old->new map."""
    nodes = [int(v) for v in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("node list contains duplicates")
    index_map = {old: new for new, old in enumerate(nodes)}
    keep = set(nodes)
    edges = [
        (index_map[i], index_map[j]) for i, j in g.edges if i in keep and j in keep
    ]
    names = None
    if g.node_names is not None:
        names = tuple(g.node_names[old] for old in nodes)
    return Graph.from_edges(len(nodes), edges, names), index_map


def symmetrize_directed(
    pairs: Iterable[tuple[int, int]], n: Optional[int] = None
) -> Graph:
    """Collapse a directed edge list into an undirected simple graph.

    An undirected edge is present if either direction appears.  Self loops
    are dropped; reciprocal and duplicate pairs collapse.  When ``n`` is
    given, endpoints outside [0, n) raise GraphParseError.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    if n is None:
        n = 1 + max((max(a, b) for a, b in pairs), default=-1)
    canon = set()
    for a, b in pairs:
        if a < 0 or b < 0 or a >= n or b >= n:
            raise GraphParseError(f"edge ({a}, {b}) out of declared range [0, {n})")
        if a == b:
            continue
        canon.add((a, b) if a < b else (b, a))
    return Graph(n=n, edges=tuple(sorted(canon)))
