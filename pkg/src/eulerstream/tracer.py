"""Colored reference tracer: explicit per-edge marks, O(m) bookkeeping.

Edges start Black. Walking an incoming Black edge backwards colors it Red
when it discovers its source and Green otherwise. A vertex with no Black
incoming edge backtracks along an outgoing Green edge if it has one, else
along its Red edge, and the start vertex stops instead. Backtracked edges
turn Dashed, and the Dashed order is the cycle.

Ties are broken the same way the space-efficient loop breaks them: lowest
in-adjacency index forward, lowest out-adjacency index backward. Among
parallel copies, the Red edge is the lowest-index copy. That makes the
Dashed sequence equal to ``core.run`` output edge for edge.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .exceptions import InvariantViolation, NotEulerianDetected
from .graph import DirectedMultigraph, Edge


class Mark(enum.Enum):
    BLACK = "Black"
    RED = "Red"
    GREEN = "Green"
    DASHED = "Dashed"

    def __str__(self):
        return self.value


COST = {Mark.BLACK: 3, Mark.RED: 2, Mark.GREEN: 2, Mark.DASHED: 0}

_ALLOWED = {
    (Mark.BLACK, Mark.RED), (Mark.BLACK, Mark.GREEN),
    (Mark.RED, Mark.DASHED), (Mark.GREEN, Mark.DASHED),
}


class EventKind(enum.Enum):
    FORWARD = "Forward"
    BACKTRACK = "Backtrack"
    SKIP = "Skip"
    TERMINATE = "Terminate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TraceEvent:
    step: int
    kind: EventKind
    edge: Optional[Edge]
    old_mark: Optional[Mark]
    new_mark: Optional[Mark]
    current: int
    # global out-adjacency slot of the edge instance
    edge_id: Optional[int] = None

    def to_line(self) -> str:
        if self.edge is None:
            u = v = old = new = "-"
        else:
            u, v = self.edge
            old, new = self.old_mark, self.new_mark
        return f"{self.step} {self.kind} {u} {v} {old} {new} {self.current}"


@dataclass
class MarkState:
    """Marks per edge instance, keyed by out-adjacency slot.

    Slot ``e`` in ``[g.out_off[u], g.out_off[u+1])`` is the instance
    ``(u, g.out_nbr[e])``.
    """

    graph: DirectedMultigraph
    v0: int
    current: int
    marks: List[Mark]
    dashed_seq: List[Edge] = field(default_factory=list)

    def copy(self) -> "MarkState":
        return MarkState(self.graph, self.v0, self.current, list(self.marks), list(self.dashed_seq))

    def out_slots(self, v: int) -> range:
        return range(self.graph.out_off[v], self.graph.out_off[v + 1])

    def out_count(self, v: int, mark: Mark) -> int:
        return sum(1 for e in self.out_slots(v) if self.marks[e] is mark)

    def in_count(self, v: int, mark: Mark) -> int:
        g = self.graph
        return sum(1 for e in range(g.m) if g.out_nbr[e] == v and self.marks[e] is mark)

    def counts(self, mark: Mark) -> Tuple[List[int], List[int]]:
        """``(d⁺(·, mark), d⁻(·, mark))`` for all vertices at once."""
        g = self.graph
        out = [0] * (g.n + 1)
        inn = [0] * (g.n + 1)
        for u in g.vertices():
            for e in self.out_slots(u):
                if self.marks[e] is mark:
                    out[u] += 1
                    inn[g.out_nbr[e]] += 1
        return out, inn

    def mark_of(self, u: int, i: int) -> Mark:
        """Mark of the ``i``-th (1-based) outgoing edge of ``u``."""
        return self.marks[self.graph.out_off[u] + i - 1]

    def edge_marks(self) -> Dict[Edge, List[Mark]]:
        """Endpoint pair -> marks of its parallel copies in out-index order."""
        g = self.graph
        res: Dict[Edge, List[Mark]] = {}
        for u in g.vertices():
            for e in self.out_slots(u):
                res.setdefault((u, g.out_nbr[e]), []).append(self.marks[e])
        return res


def needle_vertices(s: MarkState, v0: Optional[int] = None) -> Set[int]:
    out, inn = s.counts(Mark.BLACK)
    needles = set()
    for w in s.graph.vertices():
        if w == s.current:
            if out[w] == inn[w]:
                needles.add(w)
        elif out[w] == inn[w] + 1:
            needles.add(w)
    return needles


def potential(s: MarkState) -> int:
    return sum(COST[mk] for mk in s.marks)


def red_parent_map(s: MarkState) -> Dict[int, int]:
    g = s.graph
    parents = {}
    for u in g.vertices():
        for e in s.out_slots(u):
            if s.marks[e] is Mark.RED:
                if u in parents:
                    raise InvariantViolation(f"vertex {u} has more than one Red outgoing edge")
                parents[u] = g.out_nbr[e]
    return parents


class Tracer:
    """Step-by-step executor of the colored rules."""

    def __init__(self, g: DirectedMultigraph, v0: int):
        if not 1 <= v0 <= g.n or g.m == 0 or g.total_degree(v0) == 0:
            raise NotEulerianDetected(f"start vertex {v0} has no incident edges")
        self.g = g
        self.v0 = v0
        self.state = MarkState(g, v0, v0, [Mark.BLACK] * g.m)
        self.reached = {v0}
        self.in_used = [False] * g.m
        self.skip_done: Set[int] = set()
        self.step = 0
        self.finished = False

    def _black_in_slot(self, u: int) -> Optional[int]:
        g = self.g
        for j in range(g.in_off[u], g.in_off[u + 1]):
            if not self.in_used[j]:
                return j
        return None

    def _recolor(self, e: int, new: Mark) -> Mark:
        old = self.state.marks[e]
        if (old, new) not in _ALLOWED:
            raise InvariantViolation(f"illegal recolor {old}->{new} on slot {e}")
        self.state.marks[e] = new
        return old

    def _event(self, kind, edge, old, new, e=None) -> TraceEvent:
        self.step += 1
        return TraceEvent(self.step, kind, edge, old, new, self.state.current, e)

    def events(self) -> Iterator[TraceEvent]:
        """Yield events; ``self.state`` is updated before each yield."""
        g, s = self.g, self.state
        while not self.finished:
            u = s.current
            j = self._black_in_slot(u)
            if j is not None:
                v = g.in_nbr[j]
                self.in_used[j] = True
                slots = [e for e in s.out_slots(v) if g.out_nbr[e] == u]
                if v not in self.reached:
                    self.reached.add(v)
                    e, new = slots[0], Mark.RED
                    if s.marks[e] is not Mark.BLACK:
                        raise NotEulerianDetected(f"first visit of {v} found edge {v}->{u} already used")
                else:
                    black = [e for e in slots if s.marks[e] is Mark.BLACK]
                    if not black:
                        raise NotEulerianDetected(f"no Black copy of {v}->{u} left")
                    e, new = black[0], Mark.GREEN
                old = self._recolor(e, new)
                s.current = v
                yield self._event(EventKind.FORWARD, (v, u), old, new, e)
                continue

            green = [e for e in s.out_slots(u) if s.marks[e] is Mark.GREEN]
            red = [e for e in s.out_slots(u) if s.marks[e] is Mark.RED]
            if green:
                e = green[0]
            elif u != self.v0:
                if not red:
                    raise NotEulerianDetected(f"vertex {u} has nothing to backtrack along")
                e = red[0]
            else:
                if len(s.dashed_seq) != g.m:
                    raise NotEulerianDetected(
                        f"stopped at start with {len(s.dashed_seq)} of {g.m} edges written")
                self.finished = True
                yield self._event(EventKind.TERMINATE, None, None, None)
                return
            if red and u not in self.skip_done and e >= red[0]:
                # the loop passes over the Red copy here and leaves it for last
                self.skip_done.add(u)
                yield self._event(EventKind.SKIP, (u, g.out_nbr[red[0]]), Mark.RED, Mark.RED, red[0])
            v = g.out_nbr[e]
            old = self._recolor(e, Mark.DASHED)
            s.dashed_seq.append((u, v))
            s.current = v
            yield self._event(EventKind.BACKTRACK, (u, v), old, Mark.DASHED, e)


def iter_trace(g: DirectedMultigraph, v0: int) -> Iterator[Tuple[TraceEvent, MarkState]]:
    """Yield ``(event, live_state)``; copy the state if you keep it."""
    t = Tracer(g, v0)
    for ev in t.events():
        yield ev, t.state


def trace(g: DirectedMultigraph, v0: int) -> Tuple[List[TraceEvent], MarkState]:
    t = Tracer(g, v0)
    events = list(t.events())
    return events, t.state


def initial_state(g: DirectedMultigraph, v0: int) -> MarkState:
    return MarkState(g, v0, v0, [Mark.BLACK] * g.m)


class InvariantChecker:
    """Checks every correctness invariant after each trace event.

    Feed it ``(event, state)`` pairs in order; it raises
    :class:`InvariantViolation` on the first failure.
    """

    def __init__(self, g: DirectedMultigraph, v0: int):
        self.g = g
        self.v0 = v0
        self.prev_phi = 3 * g.m
        self.prev_current = v0
        self.prev_needles = {v0}
        self.checked = 0

    def _fail(self, ev, msg):
        raise InvariantViolation(f"step {ev.step} ({ev.kind}): {msg}")

    def check_initial(self, s: MarkState) -> None:
        if potential(s) != 3 * self.g.m:
            raise InvariantViolation("initial potential is not 3m")
        if needle_vertices(s) != {self.v0}:
            raise InvariantViolation("initial needle set is not {v0}")

    def __call__(self, ev: TraceEvent, s: MarkState) -> None:
        self.checked += 1
        if ev.kind is EventKind.BACKTRACK:
            # needle status judged on the state the backtrack started from
            if self.prev_needles != {self.prev_current}:
                self._fail(ev, f"backtrack from {self.prev_current} but needles are {self.prev_needles}")
        if ev.kind in (EventKind.FORWARD, EventKind.BACKTRACK):
            if (ev.old_mark, ev.new_mark) not in _ALLOWED:
                self._fail(ev, f"non-monotone recolor {ev.old_mark}->{ev.new_mark}")
            if ev.kind is EventKind.FORWARD and ev.new_mark not in (Mark.RED, Mark.GREEN):
                self._fail(ev, "forward step must color Red or Green")
            if ev.kind is EventKind.BACKTRACK and ev.new_mark is not Mark.DASHED:
                self._fail(ev, "backtrack must color Dashed")
            phi = potential(s)
            if phi >= self.prev_phi:
                self._fail(ev, f"potential did not decrease ({self.prev_phi} -> {phi})")
            self.prev_phi = phi

        needles = needle_vertices(s)
        if len(needles) != 1:
            self._fail(ev, f"expected exactly one needle vertex, got {sorted(needles)}")
        self._check_two_statements(ev, s)
        self._check_red_tree(ev, s)
        if ev.kind is EventKind.TERMINATE:
            if s.current != self.v0:
                self._fail(ev, f"terminated at {s.current}, not {self.v0}")
            if any(mk is not Mark.DASHED for mk in s.marks):
                self._fail(ev, "terminated with non-Dashed edges")
            if self.prev_phi != 0 or potential(s) != 0:
                self._fail(ev, "potential is not 0 at termination")
        self.prev_needles = needles
        self.prev_current = s.current

    def _check_two_statements(self, ev, s):
        out, inn = s.counts(Mark.BLACK)
        surplus = [v for v in self.g.vertices() if out[v] == inn[v] + 1]
        deficit = [v for v in self.g.vertices() if out[v] + 1 == inn[v]]
        other = [v for v in self.g.vertices()
                 if out[v] != inn[v] and v not in surplus and v not in deficit]
        all_balanced = not surplus and not deficit and not other
        two = (len(surplus) == 1 and len(deficit) == 1 and not other
               and deficit[0] == s.current)
        if all_balanced == two:  # exactly one must hold
            self._fail(ev, f"Black balance breaks the two-statements invariant "
                           f"(surplus={surplus}, deficit={deficit}, other={other}, current={s.current})")

    def _check_red_tree(self, ev, s):
        parents = red_parent_map(s)
        if self.v0 in parents:
            self._fail(ev, "start vertex has a Red outgoing edge")
        for v in parents:
            seen = {v}
            w = v
            while w in parents:
                w = parents[w]
                if w in seen:
                    self._fail(ev, f"Red edges form a cycle through {w}")
                seen.add(w)
            if w != self.v0:
                self._fail(ev, f"Red chain from {v} ends at {w}, not at {self.v0}")


def check_trace(g: DirectedMultigraph, v0: int) -> Tuple[List[TraceEvent], MarkState]:
    """Trace with the full invariant suite; returns like :func:`trace`."""
    t = Tracer(g, v0)
    checker = InvariantChecker(g, v0)
    checker.check_initial(t.state)
    events = []
    for ev in t.events():
        checker(ev, t.state)
        events.append(ev)
    return events, t.state
