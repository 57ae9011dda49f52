"""Command-line front end.

Exit codes: 0 success, 1 failed verdict (not Eulerian, invalid cycle,
invariant violation), 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from . import core
from .baseline import run_baseline
from .bench import baseline_aux_bits, bench, load_bench_spec, write_csv
from .exceptions import GraphError, GraphFormatError, InvariantViolation, NotEulerianDetected
from .generators import GenSpec
from .graph import load_graph, read_edges, write_graph
from .tracer import InvariantChecker, Tracer
from .validation import check_eulerian, verify_cycle

EXIT_OK, EXIT_VERDICT, EXIT_USAGE = 0, 1, 2


class _Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _open_in(path):
    return sys.stdin if path == "-" else open(path, encoding="ascii")


def _load(path):
    try:
        return load_graph(path)
    except GraphFormatError as exc:
        raise _Failure(EXIT_USAGE, f"{path}: {exc}") from None
    except OSError as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None


def _start(g, start):
    if start is None:
        return core.default_start(g)
    if not 1 <= start <= g.n:
        raise _Failure(EXIT_USAGE, f"--start {start} outside [1, {g.n}]")
    return start


def cmd_euler(args) -> int:
    g = _load(args.input)
    if not args.no_validate:
        verdict = check_eulerian(g)
        if not verdict.ok:
            raise _Failure(EXIT_VERDICT, f"not Eulerian: {verdict}")
    v0 = _start(g, args.start)
    out = sys.stdout
    if args.algo == "baseline":
        res = run_baseline(g, v0)
        out.writelines(f"{u} {v}\n" for u, v in res.edges)
        out.flush()
        if args.stats:
            bits = baseline_aux_bits(g.n, g.m, res.peak_stack)
            print(f"# iterations={res.loop_iterations} aux_bits={bits} peak_stack={res.peak_stack}",
                  file=sys.stderr)
        return EXIT_OK
    stats = core.run(g, v0, core.LineSink(out), kernel=args.kernel)
    if args.stats:
        print(f"# iterations={stats.loop_iterations} aux_bits={stats.aux_bits} kernel={stats.kernel}",
              file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.input)
    try:
        with _open_in(args.cycle) as fh:
            seq = read_edges(fh)
    except GraphFormatError as exc:
        raise _Failure(EXIT_USAGE, f"{args.cycle}: {exc}") from None
    except OSError as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None
    if args.start is not None:
        v0 = args.start
    else:
        v0 = seq[0][0] if seq else core.default_start(g)
    verdict = verify_cycle(g, seq, v0)
    print(verdict)
    return EXIT_OK if verdict.ok else EXIT_VERDICT


def cmd_gen(args) -> int:
    kind = args.kind
    # generator parameter -> CLI flag
    wanted = {
        "cycles": {"n": "n", "k": "k", "max_len": "max_len"},
        "debruijn": {"k": "k", "w": "w"},
        "random": {"n": "n", "target_m": "m"},
        "cycle": {"m": "m"},
    }[kind]
    params = {name: getattr(args, flag) for name, flag in wanted.items()}
    missing = ["--" + wanted[name].replace("_", "-") for name, val in params.items() if val is None]
    if missing:
        raise _Failure(EXIT_USAGE, f"--kind {kind} needs " + ", ".join(missing))
    try:
        g = GenSpec(kind, params, args.seed).build()
    except ValueError as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii") as fh:
            write_graph(g, fh)
    else:
        write_graph(g, sys.stdout)
    return EXIT_OK


def cmd_trace(args) -> int:
    g = _load(args.input)
    v0 = _start(g, args.start)
    tracer = Tracer(g, v0)
    checker = InvariantChecker(g, v0) if args.check_invariants else None
    out = sys.stdout
    try:
        if checker:
            checker.check_initial(tracer.state)
        for ev in tracer.events():
            out.write(ev.to_line() + "\n")
            if checker:
                checker(ev, tracer.state)
    except InvariantViolation as exc:
        out.flush()
        raise _Failure(EXIT_VERDICT, f"invariant violated: {exc}") from None
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        with _open_in(args.spec) as fh:
            specs, algos, repeats = load_bench_spec(fh)
    except (OSError, ValueError, KeyError) as exc:
        raise _Failure(EXIT_USAGE, f"bad bench spec: {exc}") from None
    if args.algos:
        algos = args.algos.split(",")
    try:
        rows = bench(specs, algos, repeats)
    except ValueError as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK if all(r.verified for r in rows) else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulerstream", description="Eulerian cycles in O(n lg m) bits.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("euler", help="write an Eulerian cycle, one 'u v' line per edge")
    e.add_argument("--input", required=True, help="graph file, '-' for stdin")
    e.add_argument("--start", type=int)
    e.add_argument("--algo", choices=["space", "baseline"], default="space")
    e.add_argument("--kernel", choices=["python", "cython"], default=None)
    e.add_argument("--no-validate", action="store_true", help="skip the Eulerian check")
    e.add_argument("--stats", action="store_true")
    e.set_defaults(func=cmd_euler)

    v = sub.add_parser("verify", help="check a cycle file against a graph")
    v.add_argument("--input", required=True)
    v.add_argument("--cycle", required=True, help="cycle file, '-' for stdin")
    v.add_argument("--start", type=int, help="defaults to the first edge's source")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="generate an Eulerian graph")
    g.add_argument("--kind", required=True, choices=["cycles", "debruijn", "random", "cycle"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int, help="cycle count (cycles) or alphabet size (debruijn)")
    g.add_argument("--max-len", type=int)
    g.add_argument("--w", type=int, help="word order (debruijn)")
    g.add_argument("--m", type=int, help="edge count (random, cycle)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("trace", help="print the colored reference trace")
    t.add_argument("--input", required=True)
    t.add_argument("--start", type=int)
    t.add_argument("--check-invariants", action="store_true")
    t.set_defaults(func=cmd_trace)

    b = sub.add_parser("bench", help="run benchmarks from a JSON spec")
    b.add_argument("--spec", required=True)
    b.add_argument("--out")
    b.add_argument("--algos", help="comma-separated override, e.g. space-cython,space-python,baseline")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"eulerstream: {exc}", file=sys.stderr)
        return exc.code
    except NotEulerianDetected as exc:
        print(f"eulerstream: not Eulerian: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except GraphError as exc:
        print(f"eulerstream: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
