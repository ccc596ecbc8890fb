"""Extremal graph constructors, chord classification, and the four/six-detour
construction that multiplies one detour into several.

Paths passed to :func:`psi_detours` are indexed 1-based (``x_1..x_k``) so the
index arguments read like the usual statement of the construction; every
other function in the package is 0-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DomainError
from .graph import (
    Edge,
    Graph,
    Path,
    add_edge,
    is_connected,
    min_degree,
    path_edges,
    subdivide,
    vertex_connectivity,
)

H9_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (1, 4), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8), (7, 8), (4, 7)]
M_EXTRA_EDGE = Edge(2, 6)
M_SUBDIVIDED_EDGE = Edge(7, 8)
H_EXTENSION_EDGE = Edge(4, 5)

FAMILY_NAMES = ("cycle", "bowtie", "triangle_cycle", "H9", "M", "H_extended")
_MIN_ORDER = {"cycle": 3, "bowtie": 5, "triangle_cycle": 5, "H9": 9, "M": 9, "H_extended": 11}
_FIXED_ORDER = {"bowtie": 5, "H9": 9}


class ChordClass(enum.Enum):
    INNER = "inner"
    BOUNDARY = "boundary"
    PATH_EDGE = "path-edge"
    NON_CHORD = "non-chord"


@dataclass(frozen=True)
class FamilyId:
    name: str
    order: int

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise DomainError(f"unknown family {self.name!r}; choose from {', '.join(FAMILY_NAMES)}")
        low = _MIN_ORDER[self.name]
        fixed = _FIXED_ORDER.get(self.name)
        if fixed is not None and self.order != fixed:
            raise DomainError(f"{self.name} exists only at order {fixed}")
        if self.order < low:
            raise DomainError(f"{self.name} needs order >= {low}, got {self.order}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def bowtie() -> Graph:
    """Triangles 0-1-2 and 2-3-4 sharing vertex 2."""
    return triangle_cycle(5)


def triangle_cycle(n: int) -> Graph:
    """Triangle 0-1-2 glued at vertex 2 to the cycle 2, 3, ..., n-1 of length n-2."""
    ring = [2, *range(3, n)]
    edges = [(0, 1), (0, 2), (1, 2)] + [(ring[t], ring[(t + 1) % len(ring)]) for t in range(len(ring))]
    return Graph.from_edges(n, edges)


def h9() -> Graph:
    """Union of the edges of the nine reference detours of H_9."""
    return Graph.from_edges(9, H9_EDGES)


def m_graph(n: int) -> Graph:
    return subdivide(add_edge(h9(), M_EXTRA_EDGE), M_SUBDIVIDED_EDGE, n - 9)


def h_extended(n: int, base: Graph, edge: tuple[int, int] = H_EXTENSION_EDGE) -> Graph:
    """Subdivide ``edge`` of a validated order-10 base ``n - 10`` times, rechecking f = 9 at each step."""
    from .engine import count_detours

    check = validate_h10(base, edge)
    if not check:
        raise DomainError("H_extended base rejected: " + "; ".join(check.failures))
    e = Edge.of(*edge)
    g = base
    for _ in range(n - 10):
        g = subdivide(g, e, 1)
        f = count_detours(g).count
        if f != 9:
            raise DomainError(f"subdividing {tuple(e)} up to order {g.n} changed f to {f}")
        # next round subdivides the piece between the newest vertex and e.v
        e = Edge.of(g.n - 1, e.v)
    return g


def build(family: FamilyId | str, order: int | None = None, base: Graph | None = None) -> Graph:
    if isinstance(family, str):
        family = FamilyId(family, order if order is not None else _FIXED_ORDER.get(family, -1))
    name, n = family.name, family.order
    if name == "cycle":
        return cycle(n)
    if name == "bowtie":
        return bowtie()
    if name == "triangle_cycle":
        return triangle_cycle(n)
    if name == "H9":
        return h9()
    if name == "M":
        return m_graph(n)
    if base is None:
        raise DomainError("H_extended needs an order-10 base graph")
    return h_extended(n, base)


@dataclass
class H10Check:
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.failures


def validate_h10(g: Graph, edge: tuple[int, int] = H_EXTENSION_EDGE) -> H10Check:
    """Check that ``g`` can serve as the order-10 base of the H_n family.

    All predicates are evaluated; failed ones are listed in ``failures``.
    """
    from .engine import count_detours, detour_order, detours_through_edge

    check = H10Check()
    fail = check.failures.append
    if g.n != 10:
        fail(f"order is {g.n}, not 10")
    connected = is_connected(g)
    if not connected:
        fail("not connected")
    if min_degree(g) < 2:
        fail(f"minimum degree {min_degree(g)} < 2")
    if connected and g.n >= 2 and (kappa := vertex_connectivity(g)) != 1:
        fail(f"connectivity is {kappa}, not 1")
    if detour_order(g) != g.n:
        fail("not traceable")
    f = count_detours(g).count
    if f != 9:
        fail(f"f = {f}, not 9")
    e = Edge.of(*edge)
    if not g.has_edge(*e):
        fail(f"extension edge {tuple(e)} is not an edge")
    elif (through := detours_through_edge(g, e)) != f:
        fail(f"extension edge {tuple(e)} lies on {through} of {f} detours")
    return check


def classify_chord(p: Path, e: tuple[int, int]) -> ChordClass:
    a, b = e
    pos = {v: t for t, v in enumerate(p)}
    if a not in pos or b not in pos:
        return ChordClass.NON_CHORD
    if abs(pos[a] - pos[b]) == 1:
        return ChordClass.PATH_EDGE
    last = len(p) - 1
    if 0 < pos[a] < last and 0 < pos[b] < last:
        return ChordClass.INNER
    return ChordClass.BOUNDARY


def is_basic_detour(d: Path, p: Path) -> bool:
    if len(d) != len(p):
        raise DomainError(f"detours of one graph share an order; got {len(d)} and {len(p)}")
    return all(classify_chord(p, e) is not ChordClass.INNER for e in path_edges(d))


def psi_detours(p: Path, i: int, j: int) -> list[Path]:
    """The four (``i <= j``) or six (``i > j``) paths built from ``p = x_1..x_k`` and
    the boundary chords ``x_1 x_i`` and ``x_k x_j``.  ``p`` itself comes first.
    """
    p = tuple(p)
    k = len(p)
    if k < 4:
        raise DomainError(f"path order must be at least 4, got {k}")
    if i == k or j == 1:
        raise DomainError("x_1 x_k closes a cycle; the construction needs 3 <= i <= k-1 and 2 <= j <= k-2")
    if not (3 <= i <= k - 1 and 2 <= j <= k - 2):
        raise DomainError(f"indices out of range: need 3 <= i <= {k - 1} and 2 <= j <= {k - 2}, got i={i}, j={j}")

    def seg(a: int, b: int) -> list[int]:
        step = 1 if b >= a else -1
        return [p[t - 1] for t in range(a, b + step, step)]

    paths = [
        p,
        seg(1, j) + seg(k, j + 1),
        seg(i - 1, 1) + seg(i, k),
    ]
    if i <= j:
        paths.append(seg(i - 1, 1) + seg(i, j) + seg(k, j + 1))
    else:
        paths += [
            seg(j - 1, 1) + seg(i, k) + seg(j, i - 1),
            seg(i + 1, k) + seg(j, 1) + seg(i, j + 1),
            seg(j - 1, 1) + seg(i, j) + seg(k, i + 1),
        ]
    return [tuple(q) for q in paths]


def psi_exceptional_edges(p: Path, i: int, j: int) -> set[Edge]:
    """Edges of ``p`` allowed to lie on fewer than four of the ``psi_detours`` paths."""
    x = lambda t: p[t - 1]  # noqa: E731
    if i <= j:
        return {Edge.of(x(i - 1), x(i)), Edge.of(x(j), x(j + 1))}
    if i == j + 1:
        return {Edge.of(x(i), x(j))}
    return set()


def psi_edge_support(p: Path, i: int, j: int) -> dict[Edge, int]:
    """For each edge of ``p``, how many of the ``psi_detours`` paths use it."""
    built = [set(path_edges(q)) for q in psi_detours(p, i, j)]
    return {e: sum(e in s for s in built) for e in path_edges(p)}
