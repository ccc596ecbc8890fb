"""graph6 codec (short form only, n <= 62).

Layout: one byte ``63 + n``, then the upper triangle of the adjacency matrix
in column order (0,1), (0,2), (1,2), (0,3), ... packed big-endian into 6-bit
groups, each written as ``group + 63`` and the last group zero-padded.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import CapacityError, GraphFormatError
from .graph import MAX_ORDER, Graph

HEADER = ">>graph6<<"
SHORT_FORM_MAX = 62


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def g6_decode(text: str | bytes, cap: int = MAX_ORDER) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.rstrip("\r\n")
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise GraphFormatError("empty graph6 string", offset=0)
    data = [ord(c) for c in text]
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} outside 63..126", offset=i)
    n = data[0] - 63
    if n == 63:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported", offset=0)
    if n > cap:
        raise GraphFormatError(f"order {n} exceeds the cap {cap}", offset=0)
    if n == 0:
        raise GraphFormatError("graphs with no vertices are not supported", offset=0)
    want = _body_length(n)
    if len(data) - 1 != want:
        raise GraphFormatError(
            f"expected {want} data bytes for n={n}, got {len(data) - 1}",
            offset=min(len(data), want + 1),
        )
    rows = [0] * n
    u, v = 0, 1
    nbits = n * (n - 1) // 2
    seen = 0
    for i in range(1, len(data)):
        group = data[i] - 63
        for shift in range(5, -1, -1):
            if seen == nbits:
                if group & ((1 << (shift + 1)) - 1):
                    raise GraphFormatError("nonzero padding bits", offset=i)
                break
            if group >> shift & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            seen += 1
            u += 1
            if u == v:
                u, v = 0, v + 1
    return Graph(n, tuple(rows))


def g6_encode(g: Graph) -> str:
    if g.n > SHORT_FORM_MAX:
        raise CapacityError(f"short-form graph6 holds at most {SHORT_FORM_MAX} vertices, got {g.n}")
    out = [chr(63 + g.n)]
    group = 0
    filled = 0
    for v in range(1, g.n):
        row = g.adj[v]
        for u in range(v):
            group = group << 1 | (row >> u & 1)
            filled += 1
            if filled == 6:
                out.append(chr(63 + group))
                group = filled = 0
    if filled:
        out.append(chr(63 + (group << (6 - filled))))
    return "".join(out)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, graph6_text)`` for each data line, 1-based.

    Blank lines and a bare ``>>graph6<<`` header are skipped; a header prefix
    on a data line is stripped.
    """
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if text.startswith(HEADER):
            text = text[len(HEADER):]
        if text:
            yield number, text


def read_graph6(stream: TextIO) -> Iterator[Graph]:
    for number, text in iter_graph6_lines(stream):
        try:
            yield g6_decode(text)
        except GraphFormatError as exc:
            raise GraphFormatError(exc.reason, offset=exc.offset, line=number) from None
