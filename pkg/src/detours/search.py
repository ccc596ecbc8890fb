"""Catalog scans: filter graph6 streams, compute detour statistics, check the
detour-count theorems over whole corpora, and tabulate the minima a(k, n)
(least detour count) and b(k, n) (least odd detour count) over connected
graphs of order n and minimum degree k.
"""

from __future__ import annotations

import json
import logging
import os
import zlib
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import partial
from itertools import islice
from typing import Iterable, Iterator, Literal

import numpy as np

from . import _kernels
from .engine import DP_CAP, Engine, count_detours, count_detours_dfs, count_detours_dp, detour_edge_counts
from .errors import CapacityError, DomainError, EngineMismatchError, GraphFormatError
from .graph import CONNECTIVITY_CAP, Graph, is_connected, min_degree
from .graph6 import g6_decode, g6_encode, iter_graph6_lines

log = logging.getLogger(__name__)

LABELED_CAP = 7
WITNESS_CAP = 10
AUDIT_FRACTION = 0.01
RESUME_LOG_ENV = "DETOURS_RESUME_LOG"

DegreeMode = Literal["exact", "atleast"]


@dataclass(frozen=True)
class FilterSpec:
    """Which graphs a scan keeps.

    Structural fields (order, degree, connectivity) are checked before any
    detour computation; ``require_traceable``, ``f_parity`` and ``f_target``
    after it.
    """

    order: int | None = None
    k: int | None = None
    min_degree_mode: DegreeMode = "atleast"
    connected: bool = False
    kappa: int | None = None
    kappa_min: int | None = None
    require_traceable: bool = False
    f_parity: Literal["odd", "even"] | None = None
    f_target: int | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 0:
            raise DomainError("minimum degree k must be non-negative")
        if self.min_degree_mode not in ("exact", "atleast"):
            raise DomainError(f"unknown minimum-degree mode {self.min_degree_mode!r}")
        if self.f_parity not in (None, "odd", "even"):
            raise DomainError(f"unknown parity {self.f_parity!r}")

    @classmethod
    def gamma(cls, k: int, n: int, mode: DegreeMode = "atleast", strict: bool = False, **extra) -> FilterSpec:
        """Connected graphs of order ``n`` and minimum degree ``k``.

        ``strict`` enforces the open-problem range ``3 <= k <= n - 2``.
        """
        if strict and not 3 <= k <= n - 2:
            raise DomainError(f"need 3 <= k <= n-2, got k={k}, n={n}")
        return cls(order=n, k=k, min_degree_mode=mode, connected=True, **extra)

    @property
    def needs_kappa(self) -> bool:
        return self.kappa is not None or self.kappa_min is not None

    def degree_ok(self, delta: int) -> bool:
        if self.k is None:
            return True
        return delta == self.k if self.min_degree_mode == "exact" else delta >= self.k

    def kappa_ok(self, kappa: int | None) -> bool:
        if self.kappa is not None and kappa != self.kappa:
            return False
        if self.kappa_min is not None and (kappa is None or kappa < self.kappa_min):
            return False
        return True

    def detour_ok(self, n: int, order: int, f: int) -> bool:
        if self.require_traceable and order != n:
            return False
        if self.f_parity is not None and (f % 2 == 1) != (self.f_parity == "odd"):
            return False
        if self.f_target is not None and f != self.f_target:
            return False
        return True

    def record_ok(self, rec: ScanRecord) -> bool:
        if self.order is not None and rec.n != self.order:
            return False
        if self.connected and not rec.connected:
            return False
        return self.degree_ok(rec.delta) and self.kappa_ok(rec.kappa) and self.detour_ok(rec.n, rec.L, rec.f)


@dataclass
class ScanRecord:
    """One scanned graph.  ``kappa`` is 0 for disconnected graphs and ``None``
    for connected graphs above the brute-force connectivity cap."""

    graph6: str
    n: int
    delta: int
    kappa: int | None
    L: int
    f: int

    @property
    def connected(self) -> bool:
        return self.kappa != 0 or self.n == 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> ScanRecord:
        data = json.loads(line)
        return cls(**{k: data[k] for k in ("graph6", "n", "delta", "kappa", "L", "f")})

    def csv_row(self) -> str:
        kappa = "" if self.kappa is None else self.kappa
        return f"{self.graph6},{self.n},{self.delta},{kappa},{self.L},{self.f}"


CSV_HEADER = "graph6,n,delta,kappa,L,f"


def connectivity_of(g: Graph) -> int | None:
    """``kappa`` as stored in records: 0 when disconnected, ``None`` above the cap."""
    if g.n == 1 or not is_connected(g):
        return 0
    if g.n > CONNECTIVITY_CAP:
        return None
    return int(_kernels.min_vertex_cut(g.as_array(), g.n))


def analyze(g: Graph, text: str, engine: Engine = "auto") -> ScanRecord:
    report = count_detours(g, engine)
    return ScanRecord(text, g.n, min_degree(g), connectivity_of(g), report.order, report.count)


def _alternate(g: Graph, engine: Engine) -> Engine | None:
    primary = "dp" if engine == "dp" or (engine == "auto" and g.n <= DP_CAP) else "dfs"
    if primary == "dp":
        return "dfs"
    return "dp" if g.n <= DP_CAP else None


def _audited(text: str, fraction: float) -> bool:
    return fraction > 0 and zlib.crc32(text.encode()) % 1_000_000 < fraction * 1_000_000


def _process(spec: FilterSpec, engine: Engine, audit_fraction: float, item: tuple[int, str]):
    """Worker body: returns a record, ``None`` (filtered out) or a format error."""
    number, text = item
    try:
        g = g6_decode(text)
    except GraphFormatError as exc:
        return GraphFormatError(exc.reason, offset=exc.offset, line=number)
    if spec.order is not None and g.n != spec.order:
        return None
    delta = min_degree(g)
    if not spec.degree_ok(delta):
        return None
    if spec.connected and not is_connected(g):
        return None
    kappa = connectivity_of(g)
    if not spec.kappa_ok(kappa):
        return None
    report = count_detours(g, engine)
    if _audited(text, audit_fraction):
        other = _alternate(g, engine)
        if other is not None:
            check = count_detours(g, other)
            if (check.order, check.count) != (report.order, report.count):
                return EngineMismatchError(
                    f"line {number} ({text}): {engine} gives (L={report.order}, f={report.count}), "
                    f"{other} gives (L={check.order}, f={check.count})"
                )
    if not spec.detour_ok(g.n, report.order, report.count):
        return None
    return ScanRecord(text, g.n, delta, kappa, report.order, report.count)


def _process_chunk(spec, engine, audit_fraction, chunk):
    return [_process(spec, engine, audit_fraction, item) for item in chunk]


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while chunk := list(islice(it, size)):
        yield chunk


def load_resume_log(path: str | os.PathLike) -> dict[str, ScanRecord]:
    done: dict[str, ScanRecord] = {}
    if not os.path.exists(path):
        return done
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = ScanRecord.from_json(line)
            except (ValueError, KeyError, TypeError):
                # a half-written trailing line from an interrupted run
                log.warning("ignoring unreadable resume-log line: %.60s", line)
                continue
            done[rec.graph6] = rec
    return done


def scan(
    lines: Iterable[str],
    spec: FilterSpec = FilterSpec(),
    *,
    engine: Engine = "auto",
    jobs: int = 1,
    on_error: Literal["skip", "abort"] = "skip",
    resume_log: str | os.PathLike | None = None,
    audit_fraction: float = AUDIT_FRACTION,
    chunk_size: int = 256,
) -> Iterator[ScanRecord]:
    """Yield a :class:`ScanRecord` for each input graph that passes ``spec``, in input order.

    With ``resume_log`` every newly computed record (filtered in or out by the
    detour-dependent fields) is appended to the log, and graphs whose graph6
    line is already logged are answered from the log without recomputation.
    A sampled ``audit_fraction`` of graphs is recomputed with the other engine;
    a disagreement raises :class:`EngineMismatchError`.
    """
    if on_error not in ("skip", "abort"):
        raise DomainError(f"unknown error policy {on_error!r}")
    items: Iterable[tuple[int, str]] = iter_graph6_lines(lines)
    done: dict[str, ScanRecord] = {}
    sink = None
    if resume_log is not None:
        done = load_resume_log(resume_log)
        sink = open(resume_log, "a")
        if sink.tell() > 0:
            with open(resume_log, "rb") as fh:
                fh.seek(-1, os.SEEK_END)
                if fh.read(1) != b"\n":
                    # start fresh after a torn final line
                    sink.write("\n")

    # records go to the log unfiltered on detour fields, so a resumed scan with
    # a different f-filter still gets the right answer
    log_spec = FilterSpec(
        order=spec.order,
        k=spec.k,
        min_degree_mode=spec.min_degree_mode,
        connected=spec.connected,
        kappa=spec.kappa,
        kappa_min=spec.kappa_min,
    )
    work = partial(_process_chunk, log_spec, engine, audit_fraction)

    def staged():
        # log membership is fixed when a chunk is staged so results stay aligned
        for chunk in _chunks(items, chunk_size):
            logged = [done.get(text) for _, text in chunk]
            todo = [item for item, rec in zip(chunk, logged) if rec is None]
            yield chunk, logged, todo

    def results():
        if jobs > 1:
            import multiprocessing

            with multiprocessing.Pool(jobs) as pool:
                window = []
                for chunk, logged, todo in staged():
                    window.append((chunk, logged, pool.apply_async(work, (todo,))))
                    if len(window) >= 4 * jobs:
                        chunk0, logged0, res = window.pop(0)
                        yield chunk0, logged0, res.get()
                for chunk0, logged0, res in window:
                    yield chunk0, logged0, res.get()
        else:
            for chunk, logged, todo in staged():
                yield chunk, logged, work(todo)

    try:
        for chunk, logged, computed in results():
            fresh = iter(computed)
            for (number, text), rec in zip(chunk, logged):
                if rec is not None:
                    if spec.record_ok(rec):
                        yield rec
                    continue
                out = next(fresh)
                if isinstance(out, EngineMismatchError):
                    raise out
                if isinstance(out, GraphFormatError):
                    if on_error == "abort":
                        raise out
                    log.warning("skipping undecodable input: %s", out)
                    continue
                if out is None:
                    continue
                if sink is not None:
                    sink.write(out.to_json() + "\n")
                    done[text] = out
                if spec.detour_ok(out.n, out.L, out.f):
                    yield out
            if sink is not None:
                sink.flush()
    finally:
        if sink is not None:
            sink.close()


def _graph6_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    return np.array([p[0] for p in pairs], dtype=np.int64), np.array([p[1] for p in pairs], dtype=np.int64)


def _graph6_of_number(n: int, m: int, s: int) -> str:
    groups = (m + 5) // 6
    bits = s << (6 * groups - m)
    return chr(63 + n) + "".join(chr(63 + (bits >> (6 * (groups - 1 - t)) & 63)) for t in range(groups))


def labeled_generator(n: int, spec: FilterSpec = FilterSpec(), batch: int = 1 << 16) -> Iterator[str]:
    """Every labeled graph on ``n`` vertices passing the structural part of ``spec``, as graph6.

    Graphs come out in increasing order of their graph6 bit string.
    """
    if n > LABELED_CAP:
        raise CapacityError(
            f"built-in labeled generation stops at n={LABELED_CAP}; feed an external graph6 catalog instead"
        )
    if n < 1:
        raise DomainError("order must be at least 1")
    if spec.order is not None and spec.order != n:
        return
    us, vs = _graph6_pairs(n)
    m = len(us)
    total = 1 << m
    for start in range(0, total, batch):
        stop = min(total, start + batch)
        delta, connected = _kernels.labeled_structure(n, us, vs, start, stop)
        keep = np.ones(stop - start, dtype=bool)
        if spec.k is not None:
            keep &= (delta == spec.k) if spec.min_degree_mode == "exact" else (delta >= spec.k)
        if spec.connected or spec.needs_kappa:
            keep &= connected | (n == 1)
        for idx in np.flatnonzero(keep):
            text = _graph6_of_number(n, m, start + int(idx))
            if spec.needs_kappa and not spec.kappa_ok(connectivity_of(g6_decode(text))):
                continue
            yield text


@dataclass
class Verification:
    """Outcome of a theorem check over a record stream."""

    name: str
    passed: bool
    checked: int
    skipped: int
    counterexamples: list[ScanRecord] = field(default_factory=list)
    minima: dict[int, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _hypothesis(rec: ScanRecord, min_order: int) -> bool:
    return rec.n >= min_order and rec.delta >= 2 and rec.connected


def verify_theorem_1(records: Iterable[ScanRecord], complete: bool = True) -> Verification:
    """Every connected graph with minimum degree >= 2 and order >= 4 has f >= 4,
    and (on complete corpora) f = 4 occurs at every order present."""
    res = Verification("theorem1", True, 0, 0)
    for rec in records:
        if not _hypothesis(rec, 4):
            res.skipped += 1
            continue
        res.checked += 1
        if rec.f < 4:
            res.counterexamples.append(rec)
        if rec.f < res.minima.get(rec.n, rec.f + 1):
            res.minima[rec.n] = rec.f
    res.passed = not res.counterexamples
    if complete:
        for n, low in sorted(res.minima.items()):
            if low != 4:
                res.passed = False
                res.notes.append(f"minimum f at order {n} is {low}, expected 4")
    return res


def verify_theorem_2(records: Iterable[ScanRecord]) -> Verification:
    """No connected graph with minimum degree >= 2 and order >= 9 has odd f < 9.

    ``minima`` holds the least odd f seen per order.
    """
    res = Verification("theorem2", True, 0, 0)
    for rec in records:
        if not _hypothesis(rec, 9):
            res.skipped += 1
            continue
        res.checked += 1
        if rec.f % 2 == 1:
            if rec.f < 9:
                res.counterexamples.append(rec)
            if rec.f < res.minima.get(rec.n, rec.f + 1):
                res.minima[rec.n] = rec.f
    res.passed = not res.counterexamples
    for n, low in sorted(res.minima.items()):
        if low == 9:
            res.notes.append(f"odd minimum 9 attained at order {n}")
    return res


def basic_fact_violations(records: Iterable[ScanRecord]) -> list[ScanRecord]:
    """Connected graphs whose detour order is below min(2*delta + 1, n)."""
    return [r for r in records if r.connected and r.L < min(2 * r.delta + 1, r.n)]


def claim1_violations(g: Graph, engine: Engine = "auto") -> list:
    """Edges lying on exactly one detour (an edge on a detour should lie on at least two)."""
    return [e for e, c in detour_edge_counts(g, engine).items() if c == 1]


@dataclass
class SearchSummary:
    """Minima over one (k, n, mode) cell.  ``exact`` is False for partial corpora,
    in which case ``a_value`` and ``b_value`` are upper bounds."""

    k: int
    n: int
    mode: DegreeMode
    exact: bool
    graphs: int = 0
    a_value: int | None = None
    b_value: int | None = None
    a_witnesses: list[str] = field(default_factory=list)
    b_witnesses: list[str] = field(default_factory=list)
    spectrum: dict[int, int] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return self.graphs == 0

    def add(self, rec: ScanRecord, witness_cap: int = WITNESS_CAP) -> None:
        self.graphs += 1
        self.spectrum[rec.f] = self.spectrum.get(rec.f, 0) + 1
        if self.a_value is None or rec.f < self.a_value:
            self.a_value, self.a_witnesses = rec.f, []
        if rec.f == self.a_value and len(self.a_witnesses) < witness_cap:
            self.a_witnesses.append(rec.graph6)
        if rec.f % 2 == 1:
            if self.b_value is None or rec.f < self.b_value:
                self.b_value, self.b_witnesses = rec.f, []
            if rec.f == self.b_value and len(self.b_witnesses) < witness_cap:
                self.b_witnesses.append(rec.graph6)

    def merge(self, other: SearchSummary, witness_cap: int = WITNESS_CAP) -> SearchSummary:
        """Combine two summaries of the same cell (order-independent)."""
        out = SearchSummary(self.k, self.n, self.mode, self.exact and other.exact, self.graphs + other.graphs)
        out.spectrum = dict(Counter(self.spectrum) + Counter(other.spectrum))
        for attr in ("a", "b"):
            vals = [(getattr(s, f"{attr}_value"), getattr(s, f"{attr}_witnesses")) for s in (self, other)]
            vals = [v for v in vals if v[0] is not None]
            if vals:
                best = min(v[0] for v in vals)
                wit = sorted({w for v, ws in vals if v == best for w in ws})[:witness_cap]
                setattr(out, f"{attr}_value", best)
                setattr(out, f"{attr}_witnesses", wit)
        return out

    def as_dict(self) -> dict:
        d = asdict(self)
        d["spectrum"] = {str(f): c for f, c in sorted(self.spectrum.items())}
        d["bound"] = "exact" if self.exact else "upper"
        return d


def reverify(text: str, expected_f: int) -> None:
    """Recompute f from the graph6 string with both engines; raise on any disagreement."""
    g = g6_decode(text)
    values = {count_detours_dfs(g).count}
    if g.n <= DP_CAP:
        values.add(count_detours_dp(g).count)
    if values != {expected_f}:
        raise EngineMismatchError(f"witness {text}: recorded f={expected_f}, recomputed {sorted(values)}")


def tabulate(
    records: Iterable[ScanRecord],
    k: int,
    n: int,
    mode: DegreeMode = "atleast",
    complete: bool = True,
    witness_cap: int = WITNESS_CAP,
) -> SearchSummary:
    """a(k, n) and b(k, n) over the records that lie in the (k, n, mode) cell."""
    spec = FilterSpec.gamma(k, n, mode)
    summary = SearchSummary(k, n, mode, complete)
    for rec in records:
        if spec.record_ok(rec):
            summary.add(rec, witness_cap)
    if summary.a_value is not None:
        for text in summary.a_witnesses:
            reverify(text, summary.a_value)
    if summary.b_value is not None:
        for text in summary.b_witnesses:
            reverify(text, summary.b_value)
    return summary


def witness_search(
    lines: Iterable[str],
    spec: FilterSpec,
    limit: int | None = WITNESS_CAP,
    **scan_options,
) -> list[ScanRecord]:
    """Graphs matching ``spec`` with f exactly ``spec.f_target``, each re-verified by both engines."""
    if spec.f_target is None:
        raise DomainError("witness search needs an f target")
    found = []
    for rec in scan(lines, spec, **scan_options):
        reverify(rec.graph6, rec.f)
        found.append(rec)
        if limit is not None and len(found) >= limit:
            break
    return found


def h10_candidates(limit: int | None = None) -> Iterator[Graph]:
    """Order-10 graphs near H_9 that pass :func:`validate_h10` with extension edge (4, 5).

    Neighbourhood of H_9 searched: one edge subdivided, one new vertex joined
    to two or more old vertices, and one vertex split in two along a new edge.
    Any edge on every detour is tried as the extension edge, and the graph is
    relabeled so that edge becomes (4, 5).
    """
    from itertools import combinations

    from .families import H_EXTENSION_EDGE, h9, validate_h10
    from .graph import relabel, subdivide

    base = h9()

    def candidates():
        for e in base.edges():
            yield subdivide(base, e, 1)
        for size in range(2, 10):
            for nbrs in combinations(range(9), size):
                yield Graph.from_edges(10, [*base.edges(), *((v, 9) for v in nbrs)])
        for v in range(9):
            nbrs = base.neighbors(v)
            for size in range(1, len(nbrs)):
                for moved in combinations(nbrs, size):
                    kept = [e for e in base.edges() if not (v in e and (e.u + e.v - v) in moved)]
                    yield Graph.from_edges(10, [*kept, (v, 9), *((w, 9) for w in moved)])

    found = 0
    seen: set[str] = set()
    for g in candidates():
        if min_degree(g) < 2 or count_detours(g).count != 9:
            continue
        for e, through in detour_edge_counts(g).items():
            if through != 9:
                continue
            rest = iter(w for w in range(10) if w not in H_EXTENSION_EDGE)
            perm = [0] * 10
            for w in range(10):
                perm[w] = H_EXTENSION_EDGE[(e.u, e.v).index(w)] if w in e else next(rest)
            h = relabel(g, perm)
            key = g6_encode(h)
            if key in seen or not validate_h10(h):
                continue
            seen.add(key)
            yield h
            found += 1
            if limit is not None and found >= limit:
                return
