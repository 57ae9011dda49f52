"""Eulerian cycles of directed multigraphs in O(n lg m) bits of working memory."""
from ._kernels import DEFAULT_KERNEL, KERNELS
from .baseline import run_baseline
from .core import (
    AlgorithmState,
    EdgeSink,
    EulerCursor,
    LineSink,
    ListSink,
    NullSink,
    RunStats,
    euler_cycle,
    open_run,
    run,
    snapshot_state,
)
from .exceptions import GraphError, GraphFormatError, InvariantViolation, NotEulerianDetected
from .graph import DirectedMultigraph, build_from_edge_list, load_graph, read_graph, write_graph
from .validation import check_eulerian, enumerate_eulerian_cycles, verify_cycle

__version__ = "0.1.0"

__all__ = [
    "AlgorithmState", "DEFAULT_KERNEL", "DirectedMultigraph", "EdgeSink", "EulerCursor",
    "GraphError", "GraphFormatError", "InvariantViolation", "KERNELS", "LineSink", "ListSink",
    "NotEulerianDetected", "NullSink", "RunStats", "build_from_edge_list", "check_eulerian",
    "enumerate_eulerian_cycles", "euler_cycle", "load_graph", "open_run", "read_graph",
    "run", "run_baseline", "snapshot_state", "verify_cycle", "write_graph",
]
