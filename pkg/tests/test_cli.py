import csv
import io
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from fhitting.cli import BENCH_COLUMNS, main
from fhitting.generators import grid
from fhitting.io import format_edge_list
from fhitting.pattern import complete_graph, path_graph, preset_family
from fhitting.solver import WeightedInstance, oracle_solve


def capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "p3.el").write_text(format_edge_list(path_graph(3)))
    (tmp_path / "k3.el").write_text(format_edge_list(complete_graph(3)))
    (tmp_path / "grid5.el").write_text(format_edge_list(grid(5, 5)))
    (tmp_path / "bad.el").write_text("0 1\n1 one\n")
    return tmp_path


def test_solve_exit_codes(files):
    code, out = capture(["solve", "--graph", str(files / "p3.el"), "--family", "k2", "--k", "1",
                         "--out", str(files / "o1")])
    assert code == 0 and "weight 1" in out
    assert "weight 1" in (files / "o1" / "result.txt").read_text()
    assert (files / "o1" / "summary.json").exists()
    code, _ = capture(["solve", "--graph", str(files / "k3.el"), "--family", "k2", "--k", "1",
                       "--out", str(files / "o2")])
    assert code == 2
    assert (files / "o2" / "result.txt").read_text().startswith("status infeasible")


def test_solve_errors(files, capsys):
    assert main(["solve", "--graph", str(files / "bad.el"), "--family", "k2", "--k", "1"]) == 1
    assert "bad.el:2:" in capsys.readouterr().err
    assert main(["solve", "--graph", str(files / "missing.el"), "--family", "k2", "--k", "1"]) == 1
    assert main(["solve", "--graph", str(files / "p3.el"), "--family", "nope", "--k", "1"]) == 1
    assert main(["solve", "--graph", str(files / "p3.el"), "--family", "k2", "--k", "-1"]) == 1


def test_solve_grid_matches_oracle(files):
    code, out = capture(["solve", "--graph", str(files / "grid5.el"), "--family", "c4", "--k", "3",
                         "--out", str(files / "o3")])
    ref = oracle_solve(WeightedInstance(grid(5, 5), preset_family("c4"), 3))
    if ref is None:
        assert code == 2
    else:
        assert code == 0 and f"weight {ref.weight}" in out


def test_solve_with_weights(files):
    (files / "w.txt").write_text("1 5\n")
    code, out = capture(["solve", "--graph", str(files / "p3.el"), "--family", "k2", "--k", "2",
                         "--weights", str(files / "w.txt"), "--out", str(files / "o4")])
    assert code == 0 and "solution 0 2" in out and "weight 2" in out


def test_verify(tmp_path):
    args = ["verify", "--trials", "12", "--max-n", "9", "--seed", "5", "--out", str(tmp_path)]
    c1, o1 = capture(args)
    c2, o2 = capture(args)
    assert c1 == 0 and o1 == o2 == "agreement 12/12\n"
    assert capture(["verify", "--trials", "0"]) == (0, "agreement 0/0\n")
    assert main(["verify", "--max-n", "21"]) == 1


def test_bench_schema(tmp_path):
    path = tmp_path / "b.csv"
    assert main(["bench", "--n", "9,16", "--k", "1-3", "--csv", str(path)]) == 0
    rows = list(csv.DictReader(path.open()))
    assert rows and list(rows[0]) == BENCH_COLUMNS
    assert len(rows) == 6 and all(r["graph_class"] == "grid" for r in rows)
    code, out = capture(["bench", "--n", "9", "--k", "1"])
    assert code == 0 and len(out.strip().splitlines()) == 2


def test_bench_exact_width(tmp_path):
    path = tmp_path / "b.csv"
    main(["bench", "--n", "9", "--k", "1-3", "--td-mode", "exact", "--exact-width", "--csv", str(path)])
    rows = [r for r in csv.DictReader(path.open()) if r["exact_width"] != ""]
    assert rows
    for r in rows:
        assert int(r["max_width"]) <= int(r["exact_width"])


def test_kernel_and_reduce(files):
    code, out = capture(["kernel", "--graph", str(files / "grid5.el"), "--family", "c4", "--k", "2",
                         "--out", str(files / "trace.json")])
    assert code == 0 and out.startswith("kernel_n ")
    assert (files / "trace.json").exists()
    code, out = capture(["reduce", "--graph", str(files / "p3.el"), "--family", "k2", "--k", "1"])
    assert code == 0 and out.strip()
    from fhitting.branching import CollectionBundle
    b = CollectionBundle.loads(out)
    assert b.hits([1]) is not None and b.hits([0]) is None


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fhitting", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    for sub in ("solve", "verify", "bench", "kernel", "reduce"):
        assert sub in r.stdout
