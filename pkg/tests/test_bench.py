import csv
import io
import json
import math

import pytest

from eulerstream import KERNELS
from eulerstream.bench import (
    CSV_COLUMNS,
    account_aux_bits,
    available_algos,
    bench,
    bench_graph,
    load_bench_spec,
    write_csv,
)
from eulerstream.core import open_run
from eulerstream.generators import GenSpec, gen_single_cycle
from eulerstream.graph import build_from_edge_list


def _declared(n, m):
    """Independent route: sum the widths of each state field by hand."""
    w = math.ceil(math.log2(2 * m + 2))
    fields = {"next": n * w, "B": n * w, "visited": n, "skipped": n,
              "c": w, "u": w, "v0": w, "i": w, "v": w}
    return sum(fields.values())


@pytest.mark.parametrize("n, m, bits", [(6, 8, 97), (1, 1, 16)])
def test_account_aux_bits_examples(n, m, bits):
    assert account_aux_bits(n, m) == bits
    assert _declared(n, m) == bits


def test_account_aux_bits_matches_declared_and_state():
    for n in (1, 2, 7, 100):
        for m in (1, 3, 8, 15, 16, 1000, 2**20):
            assert account_aux_bits(n, m) == _declared(n, m)
    g = build_from_edge_list(3, [(1, 2), (2, 3), (3, 1)])
    assert open_run(g, 1).snapshot().aux_bits() == account_aux_bits(3, 3)


def test_account_aux_bits_monotone():
    prev = 0
    for m in range(1, 300):
        cur = account_aux_bits(10, m)
        assert cur >= prev
        assert account_aux_bits(11, m) > cur
        prev = cur


def test_bench_rows_verified_and_counted():
    specs = [GenSpec("random", {"n": 10, "target_m": 40}, seed=1),
             GenSpec("cycle", {"m": 25})]
    rows = bench(specs, available_algos(), repeats=1)
    assert len(rows) == 2 * len(available_algos())
    for r in rows:
        assert r.verified
        if r.algo.startswith("space"):
            assert r.iterations == 2 * r.m
            assert r.aux_bits == account_aux_bits(r.n, r.m)
            assert r.peak_stack is None
        else:
            assert r.peak_stack is not None
    cyc = [r for r in rows if r.graph_id == "single_cycle:m=25" and r.algo == "baseline"]
    assert cyc[0].peak_stack == 26


def test_bench_rejects_non_eulerian_and_unknown_algo():
    with pytest.raises(ValueError):
        bench_graph("bad", build_from_edge_list(2, [(1, 2)]), ["space"])
    with pytest.raises(ValueError):
        bench_graph("g", gen_single_cycle(3), ["quantum"])


def test_csv_columns_exact():
    rows = bench([GenSpec("cycle", {"m": 5})], ["space", "baseline"], repeats=1)
    buf = io.StringIO()
    write_csv(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "graph_id,n,m,algo,iterations,aux_bits,peak_stack,elapsed_ns,verified"
    parsed = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert list(parsed[0]) == CSV_COLUMNS
    assert parsed[0]["peak_stack"] == "" and parsed[1]["peak_stack"] == "6"
    assert parsed[0]["verified"] == "true"


def test_load_bench_spec_forms():
    specs, algos, rep = load_bench_spec(io.StringIO(json.dumps(
        [{"kind": "debruijn", "k": 2, "w": 3}])))
    assert specs[0].build().m == 16 and algos == ["space", "baseline"] and rep == 3
    specs, algos, rep = load_bench_spec(io.StringIO(json.dumps(
        {"algos": ["space-python"], "repeats": 1, "graphs": [{"kind": "cycles", "n": 4, "k": 2, "max_len": 3, "seed": 9}]})))
    assert algos == ["space-python"] and rep == 1 and specs[0].seed == 9


def test_both_kernels_listed():
    assert "python" in KERNELS
    assert {f"space-{k}" for k in KERNELS} <= set(available_algos())


def test_compare_kernels_script(tmp_path):
    import runpy
    from pathlib import Path
    script = Path(__file__).parent.parent / "benchmarks" / "compare_kernels.py"
    mod = runpy.run_path(str(script))
    out = tmp_path / "rows.csv"
    assert mod["main"](["--sizes", "200", "--repeats", "1", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 2 * (len(KERNELS) + 1)
