"""
Files and the command-line front end
====================================

Graphs are plain edge lists (or DIMACS), weights are ``vertex weight``
lines.  The same work the previous demos did in Python is available as
``fhitting solve | verify | bench | kernel | reduce``.
"""
import tempfile
from pathlib import Path

from fhitting.cli import main
from fhitting.generators import grid
from fhitting.io import read_graph, write_graph

tmp = Path(tempfile.mkdtemp())
write_graph(grid(5, 5), tmp / "grid5.el")
print((tmp / "grid5.el").read_text().splitlines()[:3], "...")
assert read_graph(tmp / "grid5.el").m == 40

code = main(["solve", "--graph", str(tmp / "grid5.el"), "--family", "c4", "--k", "4",
             "--out", str(tmp / "out")])
print("exit code", code)
print((tmp / "out" / "result.txt").read_text())

main(["verify", "--trials", "10", "--max-n", "9", "--seed", "1", "--out", str(tmp / "v")])
main(["bench", "--n", "9,16", "--k", "1-4"])
