"""Exact detour order, detour count and detour enumeration.

Two engines that share no code beyond the adjacency encoding:

* ``dp``  -- dynamic program over (vertex subset, endpoint) states.  Counts the
  directed simple paths of every order at once; capped at ``DP_CAP`` vertices.
* ``dfs`` -- depth-first search with branch and bound.  A first pass finds the
  detour order, a second pass walks each detour once in canonical orientation.

A path and its reverse are the same detour.  A single-vertex graph has one
detour of order 1, and a graph without edges has ``n`` detours of order 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import _kernels
from .errors import CapacityError, CountOverflowError, DomainError, EmissionLimitExceeded
from .graph import Edge, Graph, Path, is_path, path_edges

DP_CAP = 20
EMISSION_LIMIT = 10**6

Engine = Literal["dp", "dfs", "auto"]


@dataclass
class DetourReport:
    """Detour order ``order`` (vertices on a longest path) and detour count ``count``.

    ``detours`` holds canonical vertex sequences in lexicographic order when
    explicit enumeration was requested; ``edge_counts`` maps each edge to the
    number of detours through it when edge statistics were requested.
    """

    order: int
    count: int
    detours: list[Path] | None = None
    edge_counts: dict[Edge, int] | None = field(default=None)

    def to_record(self, g: Graph) -> dict:
        from .graph import is_connected, min_degree, vertex_connectivity
        from .graph6 import g6_encode

        kappa = None
        if g.n <= 20:
            kappa = vertex_connectivity(g) if g.n >= 2 and is_connected(g) else 0
        rec = {
            "graph6": g6_encode(g),
            "n": g.n,
            "delta": min_degree(g),
            "kappa": kappa,
            "L": self.order,
            "f": self.count,
        }
        if self.detours is not None:
            rec["detours"] = [list(p) for p in self.detours]
        if self.edge_counts is not None:
            rec["edge_counts"] = [[e.u, e.v, c] for e, c in sorted(self.edge_counts.items())]
        return rec


def _check_dp_cap(g: Graph) -> None:
    if g.n > DP_CAP:
        raise CapacityError(f"DP engine is capped at n={DP_CAP} (got n={g.n}); use the dfs engine")


def directed_path_counts(g: Graph) -> np.ndarray:
    """``counts[k]`` = number of directed simple paths on ``k`` vertices (DP engine)."""
    _check_dp_cap(g)
    counts, overflow = _kernels.path_counts_by_order(g.as_array(), g.n)
    if overflow:
        raise CountOverflowError(f"directed path count overflowed 64 bits on n={g.n}")
    return counts


def _order_and_count(g: Graph, counts: np.ndarray) -> tuple[int, int]:
    order = int(np.flatnonzero(counts)[-1])
    if order == 1:
        return 1, g.n
    return order, int(counts[order]) // 2


def count_detours_dp(g: Graph) -> DetourReport:
    return DetourReport(*_order_and_count(g, directed_path_counts(g)))


def detour_order(g: Graph) -> int:
    """Order of a longest path (branch-and-bound DFS; no size cap)."""
    return int(_kernels.dfs_longest_order(g.as_array(), g.n))


def _dfs_walk(g: Graph, order: int, rows: int, limit: int) -> tuple[int, np.ndarray]:
    out = np.zeros((rows, order), dtype=np.int64)
    found = int(_kernels.dfs_detours(g.as_array(), g.n, order, out, limit))
    return found, out


def count_detours_dfs(g: Graph) -> DetourReport:
    order = detour_order(g)
    if order == 1:
        return DetourReport(1, g.n)
    found, _ = _dfs_walk(g, order, 0, np.iinfo(np.int64).max - 1)
    return DetourReport(order, found)


def count_detours(g: Graph, engine: Engine = "auto") -> DetourReport:
    if engine == "dp" or (engine == "auto" and g.n <= DP_CAP):
        return count_detours_dp(g)
    if engine in ("dfs", "auto"):
        return count_detours_dfs(g)
    raise DomainError(f"unknown engine {engine!r}")


def enumerate_detours(g: Graph, limit: int = EMISSION_LIMIT) -> DetourReport:
    """Every detour of ``g``, each once, oriented so the first label is the smaller endpoint.

    Raises :class:`EmissionLimitExceeded` when there are more than ``limit`` detours.
    """
    order = detour_order(g)
    if order == 1:
        detours = [(v,) for v in range(g.n)]
        if len(detours) > limit:
            raise EmissionLimitExceeded(limit, len(detours))
    else:
        found, _ = _dfs_walk(g, order, 0, limit)
        if found > limit:
            raise EmissionLimitExceeded(limit, found)
        _, out = _dfs_walk(g, order, found, limit)
        detours = sorted(tuple(int(v) for v in row) for row in out)
    counts = Counter(e for p in detours for e in path_edges(p))
    edge_counts = {e: counts.get(e, 0) for e in g.edges()}
    return DetourReport(order, len(detours), detours, edge_counts)


def edge_counts_dp(g: Graph) -> dict[Edge, int]:
    """Detours through each edge, by subtraction.

    The detours through ``e`` are the detour-order paths of ``g`` that vanish
    when ``e`` is deleted, so the count is half the drop in directed paths of
    that order.
    """
    counts = directed_path_counts(g)
    order = int(np.flatnonzero(counts)[-1])
    edges = g.edges()
    if order == 1 or not edges:
        return {e: 0 for e in edges}
    us = np.array([e.u for e in edges], dtype=np.int64)
    vs = np.array([e.v for e in edges], dtype=np.int64)
    drops = _kernels.edge_support(g.as_array(), g.n, order, us, vs)
    return {e: int(d) // 2 for e, d in zip(edges, drops)}


def edge_counts_dfs(g: Graph) -> dict[Edge, int]:
    """Detours through each edge, tallied while walking the detours once."""
    order = detour_order(g)
    edges = g.edges()
    if order == 1:
        return {e: 0 for e in edges}
    use = _kernels.dfs_edge_usage(g.as_array(), g.n, order)
    return {e: int(use[e.u, e.v]) for e in edges}


def detour_edge_counts(g: Graph, engine: Engine = "auto") -> dict[Edge, int]:
    if engine == "dp":
        return edge_counts_dp(g)
    if engine in ("dfs", "auto"):
        return edge_counts_dfs(g)
    raise DomainError(f"unknown engine {engine!r}")


def detours_through_edge(g: Graph, e: tuple[int, int], engine: Engine = "auto") -> int:
    e = Edge.of(*e)
    if not g.has_edge(*e):
        raise DomainError(f"{tuple(e)} is not an edge")
    return detour_edge_counts(g, engine)[e]


def is_detour(g: Graph, p: Path) -> bool:
    return is_path(g, p) and len(p) == detour_order(g)


def omega(g: Graph, p: Path) -> set[Edge]:
    """Inner chords of the detour ``p`` that lie on at least one detour of ``g``."""
    from .families import ChordClass, classify_chord

    p = tuple(p)
    if not is_detour(g, p):
        raise DomainError(f"{p} is not a detour of the graph")
    inner = {e for e in g.edges() if classify_chord(p, e) is ChordClass.INNER}
    if not inner:
        return set()
    on_detours = {e for d in enumerate_detours(g).detours for e in path_edges(d)}
    return inner & on_detours
