"""Text formats: edge lists, DIMACS graphs, pattern files, weight tables and
instance records.

Edge list: ``#`` comments, an optional ``n <count>`` header, then one
``u v`` pair of 0-based ids per line.  DIMACS: ``c`` comments, ``p edge n m``
and 1-based ``e u v`` lines.  Pattern file: blocks opened by
``pattern <name> <n>`` followed by edge lines.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, GraphInputError
from .pattern import PatternFamily, preset_family

log = logging.getLogger(__name__)


class ParseError(GraphInputError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        where = f"{path or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line


@dataclass
class ParseStats:
    duplicates: int = 0


def _edges_to_graph(n: int, edges, stats: ParseStats, lines, path) -> Graph:
    seen = set()
    keep = []
    for (u, v), ln in zip(edges, lines):
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", ln, path)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", ln, path)
        e = (min(u, v), max(u, v))
        if e in seen:
            stats.duplicates += 1
            continue
        seen.add(e)
        keep.append(e)
    if stats.duplicates:
        log.warning("%s: ignored %d duplicate edges", path or "<input>", stats.duplicates)
    return Graph.from_edges(n, keep)


def parse_edge_list(text: str, path: str | None = None, stats: ParseStats | None = None) -> Graph:
    stats = stats if stats is not None else ParseStats()
    n = None
    edges, lines = [], []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("header must be 'n <count>'", ln, path)
            if n is not None or edges:
                raise ParseError("header must come first and only once", ln, path)
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", ln, path)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", ln, path) from None
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", ln, path)
        edges.append((u, v))
        lines.append(ln)
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    return _edges_to_graph(n, edges, stats, lines, path)


def parse_dimacs(text: str, path: str | None = None, stats: ParseStats | None = None) -> Graph:
    stats = stats if stats is not None else ParseStats()
    n = None
    edges, lines = [], []
    for ln, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or n is not None:
                raise ParseError("expected a single 'p edge <n> <m>' line", ln, path)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError("bad vertex count", ln, path) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", ln, path)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except (ValueError, IndexError):
                raise ParseError(f"malformed edge line {raw.strip()!r}", ln, path) from None
            edges.append((u, v))
            lines.append(ln)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", ln, path)
    if n is None:
        raise ParseError("missing problem line", None, path)
    return _edges_to_graph(n, edges, stats, lines, path)


def read_graph(path) -> Graph:
    p = Path(path)
    text = p.read_text()
    if p.suffix in (".dimacs", ".col", ".gr") or text.lstrip().startswith(("p ", "c ")):
        return parse_dimacs(text, str(p))
    return parse_edge_list(text, str(p))


def format_edge_list(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges()])


def format_dimacs(g: Graph) -> str:
    return "".join([f"p edge {g.n} {g.m}\n"] + [f"e {u + 1} {v + 1}\n" for u, v in g.edges()])


def write_graph(g: Graph, path) -> None:
    p = Path(path)
    p.write_text(format_dimacs(g) if p.suffix in (".dimacs", ".col") else format_edge_list(g))


# -- patterns -------------------------------------------------------------

def parse_patterns(text: str, path: str | None = None) -> PatternFamily:
    blocks: list[tuple[str, int, list, list]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "pattern":
            if len(parts) != 3 or not parts[2].isdigit():
                raise ParseError("expected 'pattern <name> <n>'", ln, path)
            blocks.append((parts[1], int(parts[2]), [], []))
            continue
        if not blocks:
            raise ParseError("edge outside a pattern block", ln, path)
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", ln, path)
        try:
            e = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", ln, path) from None
        blocks[-1][2].append(e)
        blocks[-1][3].append(ln)
    if not blocks:
        raise ParseError("no patterns", None, path)
    pats = [_edges_to_graph(n, es, ParseStats(), lns, path) for _, n, es, lns in blocks]
    return PatternFamily(pats, [b[0] for b in blocks])


def format_patterns(fam: PatternFamily) -> str:
    out = []
    for name, p in zip(fam.names, fam.patterns):
        out.append(f"pattern {name} {p.n}\n")
        out += [f"{u} {v}\n" for u, v in p.edges()]
    return "".join(out)


def load_family(source: str) -> PatternFamily:
    """A preset name (``k2``, ``c4,p3``) or a path to a pattern file."""
    p = Path(source)
    if p.exists():
        return parse_patterns(p.read_text(), str(p))
    return preset_family(source)


# -- weights and instances --------------------------------------------------

def parse_weights(text: str, path: str | None = None) -> dict[int, float]:
    w: dict[int, float] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'vertex weight'", ln, path)
        try:
            v = int(parts[0])
            x = float(parts[1])
        except ValueError:
            raise ParseError(f"malformed weight line {line!r}", ln, path) from None
        if x < 0 or x != x or x == float("inf"):
            raise ParseError("weight must be finite and >= 0", ln, path)
        w[v] = int(x) if x.is_integer() else x
    return w


def format_weights(w: dict[int, float]) -> str:
    return "".join(f"{v} {x}\n" for v, x in sorted(w.items()))


def format_instance(g: Graph, family: str, k: int, weights: dict[int, float] | None = None) -> str:
    """Key-value record: ``family``, ``k``, ``n``, ``w v x`` and ``e u v`` lines."""
    lines = [f"family {family}", f"k {k}", f"n {g.n}"]
    lines += [f"w {v} {x}" for v, x in sorted((weights or {}).items())]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_instance(text: str, path: str | None = None):
    """Returns (graph, family string, k, weights)."""
    fam = k = n = None
    w: dict[int, float] = {}
    edges, lines = [], []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        try:
            if key == "family" and len(rest) == 1:
                fam = rest[0]
            elif key == "k" and len(rest) == 1:
                k = int(rest[0])
            elif key == "n" and len(rest) == 1:
                n = int(rest[0])
            elif key == "w" and len(rest) == 2:
                x = float(rest[1])
                w[int(rest[0])] = int(x) if x.is_integer() else x
            elif key == "e" and len(rest) == 2:
                edges.append((int(rest[0]), int(rest[1])))
                lines.append(ln)
            else:
                raise ParseError(f"unrecognised record {line!r}", ln, path)
        except ValueError:
            raise ParseError(f"malformed record {line!r}", ln, path) from None
    if fam is None or k is None or n is None:
        raise ParseError("instance needs family, k and n records", None, path)
    return _edges_to_graph(n, edges, ParseStats(), lines, path), fam, k, w
