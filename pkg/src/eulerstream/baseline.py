"""Textbook Hierholzer: edge-centric DFS with an explicit vertex stack.

Kept deliberately independent of ``core``; it is the comparison
implementation, and its stack grows to Θ(m) entries on long cycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .exceptions import NotEulerianDetected
from .graph import DirectedMultigraph, Edge


@dataclass
class BaselineResult:
    edges: List[Edge]
    peak_stack: int
    loop_iterations: int


def run_baseline(g: DirectedMultigraph, v0: Optional[int] = None) -> BaselineResult:
    if g.m == 0:
        raise NotEulerianDetected("graph has no edges")
    if v0 is None:
        v0 = next(v for v in g.vertices() if g.total_degree(v) > 0)
    if not 1 <= v0 <= g.n or g.out_degree(v0) == 0:
        raise NotEulerianDetected(f"start vertex {v0} has no outgoing edges")

    out_off, out_nbr = g.out_off, g.out_nbr
    cursor = list(out_off[:g.n + 1])
    stack = [v0]
    peak = 1
    iterations = 0
    backtracked: List[Edge] = []
    while stack:
        iterations += 1
        u = stack[-1]
        if cursor[u] < out_off[u + 1]:
            stack.append(out_nbr[cursor[u]])
            cursor[u] += 1
            if len(stack) > peak:
                peak = len(stack)
        else:
            stack.pop()
            if stack:
                backtracked.append((stack[-1], u))
    backtracked.reverse()

    if len(backtracked) != g.m:
        raise NotEulerianDetected(f"traversal reached only {len(backtracked)} of {g.m} edges")
    prev = v0
    for pos, (a, b) in enumerate(backtracked):
        if a != prev:
            raise NotEulerianDetected(f"output breaks at position {pos}; degrees are unbalanced")
        prev = b
    if prev != v0:
        raise NotEulerianDetected(f"output ends at {prev}, not at start {v0}")
    return BaselineResult(backtracked, peak, iterations)
