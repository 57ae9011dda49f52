"""Space-efficient Hierholzer: Eulerian cycle as a stream of edges.

Working memory is four per-vertex arrays plus a handful of registers; the
graph is only read and the output only written. The loop walks incoming
edges (reverse traversal) and emits each edge as it backtracks over it,
which yields the cycle in forward order with no final reversal.
"""
from __future__ import annotations

import copy
import time
from array import array
from dataclasses import dataclass
from typing import IO, Iterator, List, Optional, Tuple

from . import _pykernel
from ._kernels import DEFAULT_KERNEL, get_kernel
from .exceptions import NotEulerianDetected
from .graph import INDEX_TYPE, DirectedMultigraph, Edge

# edges per kernel call in run(); bounds the output buffer, not the state
BLOCK_EDGES = 4096

_ERRORS = {
    _pykernel.ERR_SENTINEL: "backtracked to the unset predecessor at vertex {u} != start",
    _pykernel.ERR_START_EXHAUSTED: "start vertex {u} has no edges left but only {c} of {m} edges were written",
    _pykernel.ERR_COUNTER_OVERFLOW: "edge counter of vertex {u} ran past its degree",
}


def counter_width(m: int) -> int:
    """Bits per ``next``/``B`` entry: ceil(lg(2m + 2))."""
    return (2 * m + 1).bit_length()


@dataclass
class AlgorithmState:
    """Everything the algorithm remembers besides the input and output.

    ``next``, ``visited``, ``skipped`` and ``B`` are indexed by vertex id;
    slot 0 is padding so that ids can be used directly.
    """

    next: array
    visited: bytearray
    skipped: bytearray
    B: array
    c: int
    u: int
    v0: int
    m: int
    n: int

    # declared field widths (bits); registers are c, u, v0, i, v
    SCALAR_REGISTERS = ("c", "u", "v0", "i", "v")

    def field_widths(self) -> dict:
        w = counter_width(self.m)
        return {
            "next": self.n * w,
            "B": self.n * w,
            "visited": self.n,
            "skipped": self.n,
            **{reg: w for reg in self.SCALAR_REGISTERS},
        }

    def aux_bits(self) -> int:
        return sum(self.field_widths().values())

    def as_dict(self) -> dict:
        """Plain lists over vertices 1..n, handy in tests."""
        sl = slice(1, self.n + 1)
        return {
            "next": list(self.next[sl]),
            "visited": list(self.visited[sl]),
            "skipped": list(self.skipped[sl]),
            "B": list(self.B[sl]),
            "c": self.c,
            "u": self.u,
            "v0": self.v0,
        }


@dataclass
class RunStats:
    loop_iterations: int
    edges_written: int
    aux_bits: int
    elapsed: float  # seconds
    kernel: str = DEFAULT_KERNEL


# --- sinks -----------------------------------------------------------------

class EdgeSink:
    """Write-only consumer of the cycle. Subclasses override ``write``."""

    def write(self, u: int, v: int) -> None:
        raise NotImplementedError

    def write_block(self, buf, count: int) -> None:
        """Receive ``count`` edges stored as flat pairs in ``buf``."""
        for k in range(count):
            self.write(buf[2 * k], buf[2 * k + 1])

    def close(self) -> None:
        pass


class ListSink(EdgeSink):
    def __init__(self):
        self.edges: List[Edge] = []

    def write(self, u, v):
        self.edges.append((u, v))

    def write_block(self, buf, count):
        flat = buf[:2 * count].tolist() if hasattr(buf, "tolist") else list(buf[:2 * count])
        self.edges.extend(zip(flat[0::2], flat[1::2]))


class LineSink(EdgeSink):
    """Emits ``u v`` lines and flushes after every block."""

    def __init__(self, stream: IO[str], flush: bool = True):
        self.stream = stream
        self.flush = flush
        self.count = 0

    def write(self, u, v):
        self.stream.write(f"{u} {v}\n")
        self.count += 1
        if self.flush:
            self.stream.flush()

    def write_block(self, buf, count):
        flat = buf[:2 * count].tolist() if hasattr(buf, "tolist") else list(buf[:2 * count])
        self.stream.write("".join(f"{u} {v}\n" for u, v in zip(flat[0::2], flat[1::2])))
        self.count += count
        if self.flush:
            self.stream.flush()


class NullSink(EdgeSink):
    def __init__(self):
        self.count = 0

    def write(self, u, v):
        self.count += 1

    def write_block(self, buf, count):
        self.count += count


# --- runs ------------------------------------------------------------------

def default_start(g: DirectedMultigraph) -> int:
    """Lowest vertex id with at least one incident edge."""
    for v in g.vertices():
        if g.out_off[v + 1] > g.out_off[v] or g.in_off[v + 1] > g.in_off[v]:
            return v
    raise NotEulerianDetected("graph has no edges")


class EulerCursor:
    """Resumable run of the algorithm; ``next_edge`` yields one edge at a time.

    Holds one :class:`AlgorithmState` and a two-slot output buffer, nothing
    per edge.
    """

    def __init__(self, g: DirectedMultigraph, v0: Optional[int] = None, kernel: Optional[str] = None):
        if v0 is None:
            v0 = default_start(g)
        if not 1 <= v0 <= g.n:
            raise NotEulerianDetected(f"start vertex {v0} outside [1, {g.n}]")
        if g.m == 0 or g.total_degree(v0) == 0:
            raise NotEulerianDetected(f"start vertex {v0} has no incident edges")
        self.graph = g
        self.kernel = kernel or DEFAULT_KERNEL
        self._advance = get_kernel(kernel)
        n = g.n
        self._next = array(INDEX_TYPE, [0]) * (n + 1)
        self._visited = bytearray(n + 1)
        self._skipped = bytearray(n + 1)
        self._back = array(INDEX_TYPE, [0]) * (n + 1)
        self._visited[v0] = 1
        # c, u, v0, m, iterations
        self._regs = array(INDEX_TYPE, [0, v0, v0, g.m, 0])
        self._buf = array(INDEX_TYPE, [0, 0])
        self.v0 = v0

    @property
    def done(self) -> bool:
        return self._regs[0] >= self.graph.m

    @property
    def loop_iterations(self) -> int:
        return self._regs[4]

    def _step(self, buf, limit: int) -> int:
        g = self.graph
        c_before = self._regs[0]
        status = self._advance(g.out_off, g.out_nbr, g.in_off, g.in_nbr,
                               self._next, self._visited, self._skipped, self._back,
                               self._regs, buf, limit)
        if status < 0:
            self._pending_error = status
            return self._regs[0] - c_before
        if self._regs[0] == g.m and self._regs[1] != self.v0:
            # every edge written but the trail is open: input was not Eulerian
            self._pending_error = 0
        return status

    _pending_error: Optional[int] = None

    def _raise_pending(self):
        status = self._pending_error
        if status is None:
            return
        c, u = self._regs[0], self._regs[1]
        if status == 0:
            msg = f"wrote all {c} edges but ended at {u}, not at start {self.v0}"
        else:
            msg = _ERRORS[status].format(u=u, c=c, m=self.graph.m)
        raise NotEulerianDetected(msg)

    def next_edge(self) -> Optional[Edge]:
        """The next cycle edge, or ``None`` once all ``m`` have been produced."""
        self._raise_pending()
        if self.done:
            return None
        if self._step(self._buf, 1) == 1:
            return self._buf[0], self._buf[1]
        self._raise_pending()
        return None  # pragma: no cover - kernel always writes or errors

    def __iter__(self) -> Iterator[Edge]:
        while True:
            e = self.next_edge()
            if e is None:
                return
            yield e

    def drain(self, sink: EdgeSink, block: int = BLOCK_EDGES) -> None:
        buf = array(INDEX_TYPE, [0]) * (2 * block)
        while not self.done:
            k = self._step(buf, block)
            if k:
                sink.write_block(buf, k)
            self._raise_pending()
        self._raise_pending()

    def snapshot(self) -> AlgorithmState:
        regs = self._regs
        return AlgorithmState(
            next=copy.copy(self._next),
            visited=bytearray(self._visited),
            skipped=bytearray(self._skipped),
            B=copy.copy(self._back),
            c=regs[0], u=regs[1], v0=regs[2], m=self.graph.m, n=self.graph.n,
        )


def open_run(g: DirectedMultigraph, v0: Optional[int] = None, kernel: Optional[str] = None) -> EulerCursor:
    return EulerCursor(g, v0, kernel)


def snapshot_state(cursor: EulerCursor) -> AlgorithmState:
    return cursor.snapshot()


def run(g: DirectedMultigraph, v0: Optional[int] = None, sink: Optional[EdgeSink] = None,
        kernel: Optional[str] = None, block: int = BLOCK_EDGES) -> RunStats:
    """Stream an Eulerian cycle of ``g`` starting at ``v0`` into ``sink``.

    Raises :class:`NotEulerianDetected` if the run reaches a state impossible
    on Eulerian input; edges emitted before that point stay emitted.
    """
    if sink is None:
        sink = NullSink()
    t0 = time.perf_counter()
    cursor = EulerCursor(g, v0, kernel)
    cursor.drain(sink, block)
    elapsed = time.perf_counter() - t0
    state = cursor.snapshot()
    return RunStats(
        loop_iterations=cursor.loop_iterations,
        edges_written=state.c,
        aux_bits=state.aux_bits(),
        elapsed=elapsed,
        kernel=cursor.kernel,
    )


def euler_cycle(g: DirectedMultigraph, v0: Optional[int] = None, kernel: Optional[str] = None) -> List[Edge]:
    """Convenience wrapper collecting the whole cycle in a list."""
    sink = ListSink()
    run(g, v0, sink, kernel=kernel)
    return sink.edges
