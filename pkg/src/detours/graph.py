"""Undirected simple graphs stored as adjacency bitmasks, plus structural predicates
and the two surgery operations (edge subdivision and edge addition)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import _kernels
from .errors import CapacityError, DomainError

MAX_ORDER = 64
CONNECTIVITY_CAP = 20

Path = tuple[int, ...]


class Edge(NamedTuple):
    """An undirected edge with ``u < v``.  Build through :meth:`Edge.of`."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> Edge:
        if a == b:
            raise DomainError(f"self-loop ({a},{b}) is not a simple-graph edge")
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is an integer bitmask of the neighbours of ``v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise CapacityError(f"order {self.n} outside 1..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise DomainError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            w = row
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"adjacency not symmetric at ({v},{u})")
                w ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for a, b in edges:
            e = Edge.of(a, b)
            if e.v >= n or e.u < 0:
                raise DomainError(f"edge {tuple(e)} has an endpoint outside 0..{n - 1}")
            if rows[e.u] >> e.v & 1:
                raise DomainError(f"parallel edge {tuple(e)}")
            rows[e.u] |= 1 << e.v
            rows[e.v] |= 1 << e.u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    def neighbors(self, v: int) -> list[int]:
        row = self.adj[v]
        return [u for u in range(self.n) if row >> u & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, a: int, b: int) -> bool:
        return 0 <= a < self.n and 0 <= b < self.n and bool(self.adj[a] >> b & 1)

    def edges(self) -> list[Edge]:
        """Edges sorted by ``(u, v)``."""
        return [Edge(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.adj[u] >> v & 1]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def as_array(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.uint64)

    def without_edge(self, e: Edge) -> Graph:
        if not self.has_edge(*e):
            raise DomainError(f"{tuple(e)} is not an edge")
        rows = list(self.adj)
        rows[e.u] &= ~(1 << e.v)
        rows[e.v] &= ~(1 << e.u)
        return Graph(self.n, tuple(rows))


def min_degree(g: Graph) -> int:
    return min(row.bit_count() for row in g.adj)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            grow |= g.adj[low.bit_length() - 1]
            frontier ^= low
        frontier = grow & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def vertex_connectivity(g: Graph) -> int:
    """Size of a smallest vertex cut, found by deleting subsets in increasing size.

    Complete graphs get ``n - 1``.
    """
    if g.n < 2:
        raise DomainError("vertex connectivity needs at least 2 vertices")
    if g.n > CONNECTIVITY_CAP:
        raise CapacityError(f"brute-force connectivity is capped at n={CONNECTIVITY_CAP}")
    if not is_connected(g):
        raise DomainError("vertex connectivity of a disconnected graph is undefined here")
    return int(_kernels.min_vertex_cut(g.as_array(), g.n))


def is_path(g: Graph, p: Path) -> bool:
    """True iff ``p`` is a nonempty sequence of distinct, consecutively adjacent vertices of ``g``."""
    if not p or len(set(p)) != len(p):
        return False
    if any(not 0 <= v < g.n for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def path_edges(p: Path) -> list[Edge]:
    return [Edge.of(a, b) for a, b in zip(p, p[1:])]


def canonical_path(p: Path) -> Path:
    """Orientation of ``p`` whose first vertex is smaller than its last."""
    p = tuple(p)
    return p if p[0] <= p[-1] else p[::-1]


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise DomainError("relabeling must be a permutation of the vertices")
    return Graph.from_edges(g.n, [(perm[e.u], perm[e.v]) for e in g.edges()])


def subdivide(g: Graph, e: tuple[int, int], t: int) -> Graph:
    """Replace edge ``e`` by a path through ``t`` fresh vertices ``n..n+t-1``.

    The fresh vertices run in label order from ``e.u`` to ``e.v``.
    """
    e = Edge.of(*e)
    if not g.has_edge(*e):
        raise DomainError(f"{tuple(e)} is not an edge")
    if t < 0:
        raise DomainError("subdivision count must be non-negative")
    if t == 0:
        return g
    edges = [x for x in g.edges() if x != e]
    chain = [e.u, *range(g.n, g.n + t), e.v]
    edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(g.n + t, edges)


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    e = Edge.of(*e)
    if not (0 <= e.u and e.v < g.n):
        raise DomainError(f"edge {tuple(e)} has an endpoint outside 0..{g.n - 1}")
    if g.has_edge(*e):
        raise DomainError(f"{tuple(e)} is already an edge")
    rows = list(g.adj)
    rows[e.u] |= 1 << e.v
    rows[e.v] |= 1 << e.u
    return Graph(g.n, tuple(rows))
