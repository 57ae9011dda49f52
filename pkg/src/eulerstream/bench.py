"""Benchmark harness: iterations, modeled working memory, wall time.

Memory is the analytic model of declared field widths, never process RSS.
For the space-efficient loop every ``next``/``B`` entry and every scalar
register (c, u, v0, i, v) is ``ceil(lg(2m+2))`` bits wide; ``visited`` and
``skipped`` are one bit per vertex. ``B`` would fit in ``ceil(lg(n+1))`` bits
but shares the uniform width to keep the formula simple.
"""
from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import asdict, dataclass
from typing import IO, Iterable, List, Optional, Sequence

from . import core
from ._kernels import KERNELS
from .baseline import run_baseline
from .exceptions import NotEulerianDetected
from .generators import GenSpec
from .graph import DirectedMultigraph
from .validation import check_eulerian, verify_cycle

log = logging.getLogger(__name__)

CSV_COLUMNS = ["graph_id", "n", "m", "algo", "iterations", "aux_bits",
               "peak_stack", "elapsed_ns", "verified"]

REGISTER_COUNT = 5


def account_aux_bits(n: int, m: int) -> int:
    w = (2 * m + 1).bit_length()  # ceil(lg(2m + 2))
    return 2 * n * w + 2 * n + REGISTER_COUNT * w


def baseline_aux_bits(n: int, m: int, peak_stack: int) -> int:
    """Stack of vertex ids, per-vertex edge cursor, and the m-edge output buffer."""
    wv = n.bit_length()       # ceil(lg(n + 1))
    wc = (m + 1).bit_length()
    return peak_stack * wv + n * wc + 2 * m * wv


@dataclass
class BenchRow:
    graph_id: str
    n: int
    m: int
    algo: str
    iterations: int
    aux_bits: int
    peak_stack: Optional[int]
    elapsed_ns: int
    verified: bool

    def as_csv(self) -> dict:
        d = asdict(self)
        d["peak_stack"] = "" if self.peak_stack is None else self.peak_stack
        d["verified"] = "true" if self.verified else "false"
        return d


def available_algos() -> List[str]:
    return ["space"] + [f"space-{k}" for k in sorted(KERNELS)] + ["baseline"]


def _space_row(gid, g, v0, algo, kernel, repeats):
    sink = core.ListSink()
    try:
        stats = core.run(g, v0, sink, kernel=kernel)
    except NotEulerianDetected as exc:
        log.warning("%s/%s: guard fired: %s", gid, algo, exc)
        return BenchRow(gid, g.n, g.m, algo, 0, 0, None, 0, False)
    verdict = verify_cycle(g, sink.edges, v0)
    if not verdict.ok:
        log.warning("%s/%s: output rejected: %s", gid, algo, verdict)
    best = None
    for _ in range(repeats):
        t = core.run(g, v0, core.NullSink(), kernel=kernel).elapsed
        best = t if best is None else min(best, t)
    return BenchRow(gid, g.n, g.m, algo, stats.loop_iterations, stats.aux_bits,
                    None, int(best * 1e9), verdict.ok)


def _baseline_row(gid, g, v0, repeats):
    try:
        res = run_baseline(g, v0)
    except NotEulerianDetected as exc:
        log.warning("%s/baseline: %s", gid, exc)
        return BenchRow(gid, g.n, g.m, "baseline", 0, 0, None, 0, False)
    verdict = verify_cycle(g, res.edges, v0)
    if not verdict.ok:
        log.warning("%s/baseline: output rejected: %s", gid, verdict)
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        run_baseline(g, v0)
        t = time.perf_counter() - t0
        best = t if best is None else min(best, t)
    return BenchRow(gid, g.n, g.m, "baseline", res.loop_iterations,
                    baseline_aux_bits(g.n, g.m, res.peak_stack), res.peak_stack,
                    int(best * 1e9), verdict.ok)


def bench_graph(gid: str, g: DirectedMultigraph, algos: Sequence[str], repeats: int = 3) -> List[BenchRow]:
    verdict = check_eulerian(g)
    if not verdict.ok:
        raise ValueError(f"{gid}: generated graph is not Eulerian ({verdict})")
    v0 = core.default_start(g)
    rows = []
    for algo in algos:
        if algo == "baseline":
            rows.append(_baseline_row(gid, g, v0, repeats))
        elif algo == "space":
            rows.append(_space_row(gid, g, v0, algo, None, repeats))
        elif algo.startswith("space-"):
            rows.append(_space_row(gid, g, v0, algo, algo[len("space-"):], repeats))
        else:
            raise ValueError(f"unknown algorithm {algo!r}; choose from {available_algos()}")
    return rows


def bench(specs: Iterable[GenSpec], algos: Sequence[str] = ("space", "baseline"),
          repeats: int = 3) -> List[BenchRow]:
    rows = []
    for spec in specs:
        rows.extend(bench_graph(spec.graph_id, spec.build(), algos, repeats))
    return rows


def write_csv(rows: Iterable[BenchRow], stream: IO[str]) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_csv())


def load_bench_spec(stream: IO[str]):
    """Parse a JSON benchmark spec.

    Either a list of generator entries, or an object
    ``{"algos": [...], "repeats": k, "graphs": [...]}``. Each entry is
    ``{"kind": ..., "seed": ..., <generator params>}``.
    """
    data = json.load(stream)
    if isinstance(data, list):
        data = {"graphs": data}
    specs = [GenSpec.from_dict(d) for d in data["graphs"]]
    algos = data.get("algos", ["space", "baseline"])
    return specs, algos, int(data.get("repeats", 3))
