"""Compiled inner loops.

Every kernel takes the graph as ``adj``, a ``uint64`` array of adjacency
bitmasks (bit ``w`` of ``adj[v]`` set iff ``v ~ w``), plus the order ``n``.
The Python-facing wrappers in :mod:`detours.graph` and :mod:`detours.engine`
own validation; these functions assume well-formed input.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INT64_MAX = np.iinfo(np.int64).max


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _reach(adj, n, start, allowed):
    """Bitmask of vertices of ``allowed`` reachable from ``start`` inside ``allowed``."""
    one = np.uint64(1)
    seen = (one << np.uint64(start)) & allowed
    frontier = seen
    while frontier:
        grow = np.uint64(0)
        for v in range(n):
            if frontier & (one << np.uint64(v)):
                grow |= adj[v]
        grow &= allowed & ~seen
        seen |= grow
        frontier = grow
    return seen


@njit(cache=True)
def is_connected_within(adj, n, allowed):
    """True iff the subgraph induced on ``allowed`` is connected (vacuous if empty)."""
    if allowed == 0:
        return True
    one = np.uint64(1)
    first = 0
    while not allowed & (one << np.uint64(first)):
        first += 1
    return _reach(adj, n, first, allowed) == allowed


@njit(cache=True)
def min_vertex_cut(adj, n):
    """Smallest vertex set whose deletion disconnects the graph; ``n - 1`` if none.

    Subsets are tried in increasing size (Gosper's hack inside each size), so
    the first disconnecting subset found is a minimum one.
    """
    one = np.uint64(1)
    full = (one << np.uint64(n)) - one if n < 64 else ~np.uint64(0)
    for size in range(0, n - 1):
        if size == 0:
            if not is_connected_within(adj, n, full):
                return 0
            continue
        s = (one << np.uint64(size)) - one
        while s <= full:
            if not is_connected_within(adj, n, full & ~s):
                return size
            c = s & (~s + one)
            r = s + c
            if r == 0:
                break
            s = (((r ^ s) >> np.uint64(2)) // c) | r
    return n - 1


@njit(cache=True)
def path_counts_by_order(adj, n):
    """Directed simple paths per order.

    ``counts[k]`` is the number of vertex sequences of length ``k`` that are
    simple paths (``counts[1] == n``).  Returns ``(counts, overflowed)``.
    The table ``ways[mask, v]`` holds the number of directed paths whose vertex
    set is exactly ``mask`` and which end at ``v``.
    """
    one = np.uint64(1)
    size = 1 << n
    ways = np.zeros((size, n), dtype=np.int64)
    counts = np.zeros(n + 1, dtype=np.int64)
    overflow = False
    for v in range(n):
        ways[1 << v, v] = 1
    for mask in range(1, size):
        k = popcount(np.uint64(mask))
        for v in range(n):
            w = ways[mask, v]
            if w == 0:
                continue
            if counts[k] > INT64_MAX - w:
                overflow = True
            counts[k] += w
            free = adj[v] & ~np.uint64(mask)
            if free == 0:
                continue
            for u in range(n):
                if free & (one << np.uint64(u)):
                    nxt = mask | (1 << u)
                    if ways[nxt, u] > INT64_MAX - w:
                        overflow = True
                    ways[nxt, u] += w
    return counts, overflow


@njit(cache=True)
def dfs_longest_order(adj, n):
    """Order of a longest path, by depth-first branch and bound.

    A branch is cut when the current order plus the number of unvisited
    vertices reachable from the current endpoint cannot beat the best so far.
    """
    one = np.uint64(1)
    full = (one << np.uint64(n)) - one if n < 64 else ~np.uint64(0)
    best = 1
    path = np.zeros(n, dtype=np.int64)
    todo = np.zeros(n, dtype=np.uint64)
    for s in range(n):
        if best == n:
            break
        # a path from s can only cover s's component
        if popcount(_reach(adj, n, s, full)) <= best:
            continue
        path[0] = s
        visited = one << np.uint64(s)
        todo[0] = adj[s]
        depth = 1
        while depth > 0:
            cand = todo[depth - 1]
            if cand == 0:
                depth -= 1
                if depth > 0:
                    visited &= ~(one << np.uint64(path[depth]))
                continue
            u = 0
            while not cand & (one << np.uint64(u)):
                u += 1
            todo[depth - 1] = cand & ~(one << np.uint64(u))
            ubit = one << np.uint64(u)
            visited |= ubit
            path[depth] = u
            depth += 1
            if depth > best:
                best = depth
                if best == n:
                    break
            free = adj[u] & ~visited
            bound = 0
            if free:
                bound = popcount(_reach(adj, n, u, ~visited | ubit)) - 1
            if depth + bound <= best:
                todo[depth - 1] = np.uint64(0)
            else:
                todo[depth - 1] = free
        if best == n:
            break
    return best


@njit(cache=True)
def dfs_detours(adj, n, order, out, limit):
    """Walk every simple path of exactly ``order`` vertices in canonical orientation.

    A path is taken only when its first vertex is smaller than its last.
    Rows of ``out`` receive the vertex sequences while there is room
    (pass a zero-row array to count only).  Stops as soon as the count
    exceeds ``limit`` and returns ``limit + 1`` in that case.
    """
    one = np.uint64(1)
    count = 0
    rows = out.shape[0]
    path = np.zeros(n, dtype=np.int64)
    todo = np.zeros(n, dtype=np.uint64)
    for s in range(n):
        path[0] = s
        visited = one << np.uint64(s)
        todo[0] = adj[s]
        depth = 1
        while depth > 0:
            cand = todo[depth - 1]
            if cand == 0:
                depth -= 1
                if depth > 0:
                    visited &= ~(one << np.uint64(path[depth]))
                continue
            u = 0
            while not cand & (one << np.uint64(u)):
                u += 1
            todo[depth - 1] = cand & ~(one << np.uint64(u))
            ubit = one << np.uint64(u)
            visited |= ubit
            path[depth] = u
            depth += 1
            if depth == order:
                if u > s:
                    if count < rows:
                        for t in range(order):
                            out[count, t] = path[t]
                    count += 1
                    if count > limit:
                        return count
                todo[depth - 1] = np.uint64(0)
                continue
            free = adj[u] & ~visited
            if free == 0:
                todo[depth - 1] = np.uint64(0)
                continue
            room = popcount(_reach(adj, n, u, ~visited | ubit)) - 1
            if depth + room < order:
                todo[depth - 1] = np.uint64(0)
            else:
                todo[depth - 1] = free
    return count


@njit(cache=True)
def edge_support(adj, n, order, us, vs):
    """Directed paths on ``order`` vertices through each edge ``(us[t], vs[t])``.

    Computed as the drop in the count when the edge is deleted.
    """
    one = np.uint64(1)
    total = path_counts_by_order(adj, n)[0][order]
    work = adj.copy()
    out = np.zeros(us.shape[0], dtype=np.int64)
    for t in range(us.shape[0]):
        u, v = us[t], vs[t]
        work[u] &= ~(one << np.uint64(v))
        work[v] &= ~(one << np.uint64(u))
        out[t] = total - path_counts_by_order(work, n)[0][order]
        work[u] = adj[u]
        work[v] = adj[v]
    return out


@njit(cache=True)
def labeled_structure(n, us, vs, start, stop):
    """Minimum degree and connectivity flag for the labeled graphs ``start..stop-1``.

    Graph number ``s`` contains edge ``t`` iff bit ``m - 1 - t`` of ``s`` is set,
    where ``(us[t], vs[t])`` lists the ``m`` vertex pairs in graph6 column order.
    """
    one = np.uint64(1)
    m = us.shape[0]
    full = (one << np.uint64(n)) - one
    count = stop - start
    delta = np.zeros(count, dtype=np.int64)
    connected = np.zeros(count, dtype=np.bool_)
    adj = np.zeros(n, dtype=np.uint64)
    for idx in range(count):
        s = start + idx
        for v in range(n):
            adj[v] = np.uint64(0)
        for t in range(m):
            if (s >> (m - 1 - t)) & 1:
                adj[us[t]] |= one << np.uint64(vs[t])
                adj[vs[t]] |= one << np.uint64(us[t])
        low = n
        for v in range(n):
            d = popcount(adj[v])
            if d < low:
                low = d
        delta[idx] = low
        connected[idx] = is_connected_within(adj, n, full)
    return delta, connected


@njit(cache=True)
def dfs_edge_usage(adj, n, order):
    """``use[u, v]`` (u < v) = detours on ``order`` vertices through edge uv, in one DFS pass."""
    one = np.uint64(1)
    use = np.zeros((n, n), dtype=np.int64)
    path = np.zeros(n, dtype=np.int64)
    todo = np.zeros(n, dtype=np.uint64)
    for s in range(n):
        path[0] = s
        visited = one << np.uint64(s)
        todo[0] = adj[s]
        depth = 1
        while depth > 0:
            cand = todo[depth - 1]
            if cand == 0:
                depth -= 1
                if depth > 0:
                    visited &= ~(one << np.uint64(path[depth]))
                continue
            u = 0
            while not cand & (one << np.uint64(u)):
                u += 1
            todo[depth - 1] = cand & ~(one << np.uint64(u))
            ubit = one << np.uint64(u)
            visited |= ubit
            path[depth] = u
            depth += 1
            if depth == order:
                if u > s:
                    for t in range(order - 1):
                        a, b = path[t], path[t + 1]
                        if a < b:
                            use[a, b] += 1
                        else:
                            use[b, a] += 1
                todo[depth - 1] = np.uint64(0)
                continue
            free = adj[u] & ~visited
            if free == 0:
                todo[depth - 1] = np.uint64(0)
                continue
            room = popcount(_reach(adj, n, u, ~visited | ubit)) - 1
            if depth + room < order:
                todo[depth - 1] = np.uint64(0)
            else:
                todo[depth - 1] = free
    return use
