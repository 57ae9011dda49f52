"""Eulerian-ness check, cycle verification and a brute-force enumerator."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .graph import DirectedMultigraph, Edge

EULERIAN = "Eulerian"
DEGREE_IMBALANCE = "DegreeImbalance"
NOT_STRONGLY_CONNECTED = "NotStronglyConnected"

VALID = "Valid"
NOT_A_TRAIL = "NotATrail"
EDGE_NOT_IN_GRAPH = "EdgeNotInGraph"
MULTIPLICITY_MISMATCH = "MultiplicityMismatch"
NOT_CLOSED = "NotClosed"
WRONG_START = "WrongStart"


@dataclass(frozen=True)
class EulerianVerdict:
    kind: str
    vertex: Optional[int] = None
    witness: Optional[Tuple[int, int]] = None  # (from, unreachable-to)

    @property
    def ok(self) -> bool:
        return self.kind == EULERIAN

    def __str__(self):
        if self.vertex is not None:
            return f"{self.kind}({self.vertex})"
        if self.witness is not None:
            return f"{self.kind}({self.witness[0]}, {self.witness[1]})"
        return self.kind


@dataclass(frozen=True)
class CycleVerdict:
    kind: str
    position: Optional[int] = None
    edge: Optional[Edge] = None

    @property
    def ok(self) -> bool:
        return self.kind == VALID

    def __str__(self):
        if self.position is not None:
            return f"{self.kind}({self.position})"
        if self.edge is not None:
            return f"{self.kind}({self.edge[0]}, {self.edge[1]})"
        return self.kind


def _reach(n: int, start: int, off, nbr) -> bytearray:
    seen = bytearray(n + 1)
    seen[start] = 1
    stack = [start]
    while stack:
        u = stack.pop()
        for k in range(off[u], off[u + 1]):
            w = nbr[k]
            if not seen[w]:
                seen[w] = 1
                stack.append(w)
    return seen


def check_eulerian(g: DirectedMultigraph) -> EulerianVerdict:
    for v in g.vertices():
        if g.out_degree(v) != g.in_degree(v):
            return EulerianVerdict(DEGREE_IMBALANCE, vertex=v)
    start = next((v for v in g.vertices() if g.out_degree(v) > 0), None)
    if start is None:
        # edgeless: a lone vertex is not strongly connected by our convention
        return EulerianVerdict(NOT_STRONGLY_CONNECTED, witness=(1, 1))
    fwd = _reach(g.n, start, g.out_off, g.out_nbr)
    for v in g.vertices():
        if not fwd[v]:
            return EulerianVerdict(NOT_STRONGLY_CONNECTED, witness=(start, v))
    bwd = _reach(g.n, start, g.in_off, g.in_nbr)
    for v in g.vertices():
        if not bwd[v]:
            return EulerianVerdict(NOT_STRONGLY_CONNECTED, witness=(v, start))
    return EulerianVerdict(EULERIAN)


def verify_cycle(g: DirectedMultigraph, seq: Sequence[Edge], v0: int) -> CycleVerdict:
    """Is ``seq`` a closed trail at ``v0`` using each edge of ``g`` exactly once?

    Parallel edges are compared by endpoint-pair multiplicity.
    """
    expected = Counter(g.edges)
    seq = [tuple(e) for e in seq]
    for pos, e in enumerate(seq):
        if e not in expected:
            return CycleVerdict(EDGE_NOT_IN_GRAPH, position=pos)
    if not seq:
        if expected:
            return CycleVerdict(MULTIPLICITY_MISMATCH, edge=next(iter(expected)))
        return CycleVerdict(VALID)
    if seq[0][0] != v0:
        return CycleVerdict(WRONG_START)
    if seq[-1][1] != v0:
        return CycleVerdict(NOT_CLOSED)
    got = Counter(seq)
    for e in sorted(set(expected) | set(got)):
        if got[e] != expected[e]:
            return CycleVerdict(MULTIPLICITY_MISMATCH, edge=e)
    for pos in range(1, len(seq)):
        if seq[pos][0] != seq[pos - 1][1]:
            return CycleVerdict(NOT_A_TRAIL, position=pos)
    return CycleVerdict(VALID)


class Enumeration(NamedTuple):
    cycles: List[List[Edge]]
    truncated: bool


def enumerate_eulerian_cycles(g: DirectedMultigraph, v0: int, cap: int = 10_000) -> Enumeration:
    """All Eulerian cycles from ``v0``, distinguishing parallel edge copies.

    Exponential; meant for graphs with a dozen edges or so. Stops after
    ``cap`` cycles and sets ``truncated``.
    """
    m = g.m
    used = bytearray(m)
    path: List[Edge] = []
    found: List[List[Edge]] = []
    truncated = False

    def extend(u: int) -> bool:
        nonlocal truncated
        if len(path) == m:
            if u == v0:
                if len(found) >= cap:
                    truncated = True
                    return False
                found.append(list(path))
            return True
        for k in range(g.out_off[u], g.out_off[u + 1]):
            if used[k]:
                continue
            used[k] = 1
            w = g.out_nbr[k]
            path.append((u, w))
            keep_going = extend(w)
            path.pop()
            used[k] = 0
            if not keep_going:
                return False
        return True

    if m:
        extend(v0)
    return Enumeration(found, truncated)
