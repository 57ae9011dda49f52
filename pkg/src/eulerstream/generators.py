"""Seeded generators of Eulerian multigraphs.

All randomness comes from SplitMix64 (Steele, Lea & Flood 2014) so that a
``(kind, params, seed)`` triple names the same graph in any language:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                      # all arithmetic mod 2**64

``below(k)`` draws uniformly from ``[0, k)`` by rejecting outputs at or above
the largest multiple of ``k`` that fits in 64 bits, then taking ``% k``.
Shuffles are Fisher-Yates from the top index down.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

from .graph import DirectedMultigraph, Edge

_MASK = (1 << 64) - 1
MAX_DE_BRUIJN_EDGES = 10_000_000


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def _close_walk(edges: List[Edge], walk: List[int]) -> None:
    for a, b in zip(walk, walk[1:] + walk[:1]):
        edges.append((a, b))


def gen_cycle_union(n: int, k: int, max_len: int, seed: int) -> DirectedMultigraph:
    """Union of ``k`` (or more) directed cycles of length ``1..max_len``.

    Every cycle after the first passes through an already-used vertex, which
    keeps the union strongly connected. Extra cycles are appended until all
    ``n`` vertices are covered.
    """
    if n < 1 or k < 1 or max_len < 1:
        raise ValueError("need n >= 1, k >= 1, max_len >= 1")
    if n > 1 and max_len < 2:
        raise ValueError("max_len must be >= 2 to cover more than one vertex")
    rng = SplitMix64(seed)
    unused = list(range(1, n + 1))
    rng.shuffle(unused)
    used: List[int] = []
    edges: List[Edge] = []
    cycles = 0
    while cycles < k or unused:
        length = 1 + rng.below(max_len)
        if unused and used and length < 2:
            length = 2
        if used:
            anchor = used[rng.below(len(used))]
        else:
            anchor = unused.pop()
            used.append(anchor)
        walk = [anchor]
        for _ in range(length - 1):
            if unused:
                x = unused.pop()
                used.append(x)
            else:
                x = 1 + rng.below(n)
            walk.append(x)
        _close_walk(edges, walk)
        cycles += 1
    rng.shuffle(edges)
    return DirectedMultigraph(n, edges)


def gen_de_bruijn(k: int, w: int) -> DirectedMultigraph:
    """De Bruijn graph B(k, w): words of length ``w`` joined by overlaps.

    Vertex ``x + 1`` is the word whose base-``k`` value is ``x``; edges are
    listed in lexicographic order of the ``w + 1``-letter words.
    """
    if k < 2 or w < 1:
        raise ValueError("need alphabet size k >= 2 and order w >= 1")
    n = k ** w
    m = n * k
    if m > MAX_DE_BRUIJN_EDGES:
        raise ValueError(f"B({k}, {w}) has {m} edges, above the {MAX_DE_BRUIJN_EDGES} limit")
    return DirectedMultigraph(n, [(x // k + 1, x % n + 1) for x in range(m)])


def gen_random_eulerian(n: int, target_m: int, seed: int) -> DirectedMultigraph:
    """Random Eulerian multigraph with exactly ``target_m`` edges.

    A random Hamiltonian cycle connects everything; the remaining edges
    come from random closed walks, each starting at a random vertex.
    """
    if not target_m >= n >= 1:
        raise ValueError("need target_m >= n >= 1")
    rng = SplitMix64(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges: List[Edge] = []
    _close_walk(edges, order)
    remaining = target_m - n
    max_walk = max(2, 2 * target_m // n)
    while remaining:
        length = 1 + rng.below(min(remaining, max_walk))
        walk = [1 + rng.below(n)]
        walk.extend(1 + rng.below(n) for _ in range(length - 1))
        _close_walk(edges, walk)
        remaining -= length
    rng.shuffle(edges)
    return DirectedMultigraph(n, edges)


def gen_single_cycle(m: int) -> DirectedMultigraph:
    """The directed cycle 1 -> 2 -> ... -> m -> 1."""
    if m < 1:
        raise ValueError("need m >= 1")
    return DirectedMultigraph(m, [(i, i % m + 1) for i in range(1, m + 1)])


_KINDS = {
    "cycle_union": ("cycles", gen_cycle_union, ("n", "k", "max_len", "seed")),
    "de_bruijn": ("debruijn", gen_de_bruijn, ("k", "w")),
    "random_eulerian": ("random", gen_random_eulerian, ("n", "target_m", "seed")),
    "single_cycle": ("cycle", gen_single_cycle, ("m",)),
}
_ALIASES = {alias: kind for kind, (alias, _, _) in _KINDS.items()}


def canonical_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in _KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    return kind


@dataclass
class GenSpec:
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        self.kind = canonical_kind(self.kind)

    @property
    def graph_id(self) -> str:
        parts = [self.kind] + [f"{k}={self.params[k]}" for k in sorted(self.params)]
        if "seed" in _KINDS[self.kind][2]:
            parts.append(f"seed={self.seed}")
        return ":".join(parts)

    def build(self) -> DirectedMultigraph:
        _, fn, names = _KINDS[self.kind]
        args = dict(self.params, seed=self.seed)
        missing = [a for a in names if a not in args]
        if missing:
            raise ValueError(f"{self.kind} needs parameters {missing}")
        return fn(*(args[a] for a in names))

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "GenSpec":
        d = dict(d)
        kind = d.pop("kind")
        seed = d.pop("seed", 0)
        return cls(kind, d, seed)
