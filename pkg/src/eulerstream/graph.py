"""Immutable directed multigraph in CSR form.

Vertices are ``1..n``; 0 is never a vertex and serves as the "unset"
sentinel elsewhere in the package. Adjacency order is input order.
"""
from __future__ import annotations

import io
import sys
from array import array
from typing import Iterable, Iterator, Sequence, TextIO, Tuple

from .exceptions import GraphError, GraphFormatError

Edge = Tuple[int, int]

OUT = "out"
IN = "in"

# typecode shared with the compiled kernel (int64)
INDEX_TYPE = "q"


class DirectedMultigraph:
    """Read-only dual adjacency (in and out) over vertices ``1..n``.

    ``out_off[v]:out_off[v + 1]`` slices ``out_nbr`` to give the ordered
    out-neighbors of ``v``; likewise for the in-side. Both offset arrays have
    length ``n + 2`` so they can be indexed directly by vertex id.
    """

    __slots__ = ("n", "m", "out_off", "out_nbr", "in_off", "in_nbr", "_edges")

    def __init__(self, n: int, edges: Sequence[Edge]):
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for idx, (u, v) in enumerate(edges):
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge {idx} ({u}, {v}) has an endpoint outside [1, {n}]")

        out_deg = [0] * (n + 2)
        in_deg = [0] * (n + 2)
        for u, v in edges:
            out_deg[u] += 1
            in_deg[v] += 1

        out_off = array(INDEX_TYPE, [0]) * (n + 2)
        in_off = array(INDEX_TYPE, [0]) * (n + 2)
        for v in range(1, n + 1):
            out_off[v + 1] = out_off[v] + out_deg[v]
            in_off[v + 1] = in_off[v] + in_deg[v]

        m = len(edges)
        out_nbr = array(INDEX_TYPE, [0]) * m
        in_nbr = array(INDEX_TYPE, [0]) * m
        out_fill = list(out_off)
        in_fill = list(in_off)
        for u, v in edges:
            out_nbr[out_fill[u]] = v
            out_fill[u] += 1
            in_nbr[in_fill[v]] = u
            in_fill[v] += 1

        self.n = n
        self.m = m
        self.out_off = out_off
        self.out_nbr = out_nbr
        self.in_off = in_off
        self.in_nbr = in_nbr
        self._edges = edges

    def __repr__(self):
        return f"DirectedMultigraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Edges in construction order."""
        return self._edges

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} outside [1, {self.n}]")

    def degree(self, v: int, direction: str = OUT) -> int:
        self._check_vertex(v)
        if direction == OUT:
            return self.out_off[v + 1] - self.out_off[v]
        if direction == IN:
            return self.in_off[v + 1] - self.in_off[v]
        raise GraphError(f"direction must be 'out' or 'in', got {direction!r}")

    def out_degree(self, v: int) -> int:
        return self.degree(v, OUT)

    def in_degree(self, v: int) -> int:
        return self.degree(v, IN)

    def total_degree(self, v: int) -> int:
        return self.degree(v, OUT) + self.degree(v, IN)

    def neighbor(self, v: int, i: int, direction: str = OUT) -> int:
        """The ``i``-th (1-based) neighbor of ``v`` in the given direction."""
        d = self.degree(v, direction)
        if not 1 <= i <= d:
            raise GraphError(f"neighbor index {i} outside [1, {d}] for vertex {v} ({direction})")
        if direction == OUT:
            return self.out_nbr[self.out_off[v] + i - 1]
        return self.in_nbr[self.in_off[v] + i - 1]

    def out_neighbors(self, v: int) -> Sequence[int]:
        self._check_vertex(v)
        return self.out_nbr[self.out_off[v]:self.out_off[v + 1]].tolist()

    def in_neighbors(self, v: int) -> Sequence[int]:
        self._check_vertex(v)
        return self.in_nbr[self.in_off[v]:self.in_off[v + 1]].tolist()

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def iter_out_edges(self) -> Iterator[Edge]:
        """All ``(u, Γ⁺(u, i))`` pairs, grouped by source."""
        for u in range(1, self.n + 1):
            for k in range(self.out_off[u], self.out_off[u + 1]):
                yield u, self.out_nbr[k]

    def iter_in_edges(self) -> Iterator[Edge]:
        for v in range(1, self.n + 1):
            for k in range(self.in_off[v], self.in_off[v + 1]):
                yield self.in_nbr[k], v


def build_from_edge_list(n: int, edges: Iterable[Edge]) -> DirectedMultigraph:
    return DirectedMultigraph(n, list(edges))


# --- text format -----------------------------------------------------------

def _content_lines(stream: TextIO) -> Iterator[Tuple[int, str]]:
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_pair(line: str, lineno: int) -> Tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None


def read_graph(stream: TextIO) -> DirectedMultigraph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    lines = _content_lines(stream)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError("empty graph file") from None
    n, m = _parse_pair(header, lineno)
    if n < 1 or m < 0:
        raise GraphFormatError(f"bad header n={n} m={m}", lineno)
    edges = []
    for lineno, line in lines:
        u, v = _parse_pair(line, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside [1, {n}]", lineno)
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return DirectedMultigraph(n, edges)


def read_edges(stream: TextIO) -> list:
    """Parse a headerless ``u v`` per line edge sequence (cycle files)."""
    return [_parse_pair(line, lineno) for lineno, line in _content_lines(stream)]


def load_graph(path: str) -> DirectedMultigraph:
    if path == "-":
        return read_graph(sys.stdin)
    with open(path, encoding="ascii") as fh:
        return read_graph(fh)


def write_graph(g: DirectedMultigraph, stream: TextIO) -> None:
    stream.write(f"{g.n} {g.m}\n")
    stream.writelines(f"{u} {v}\n" for u, v in g.edges)


def dumps_graph(g: DirectedMultigraph) -> str:
    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def loads_graph(text: str) -> DirectedMultigraph:
    return read_graph(io.StringIO(text))
