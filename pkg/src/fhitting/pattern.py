"""Pattern families, F-copy enumeration and constrained copy search.

An F-copy is stored as the tuple ``image`` with ``image[a]`` the host vertex
that pattern vertex ``a`` is mapped to (the inverse of the isomorphism onto
F).  Subgraph semantics: extra host edges among the image are allowed.
"""
from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .graph import Graph, bits, connected_components, is_connected, to_mask


def canonical_form(p: Graph) -> tuple[int, ...]:
    """Lexicographically smallest sorted edge list over all relabellings."""
    best = None
    edges = p.edges()
    for perm in itertools.permutations(range(p.n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        flat = tuple(x for e in form for x in e)
        if best is None or flat < best:
            best = flat
    return (p.n,) + (best or ())


@dataclass(frozen=True)
class FCopy:
    pattern: int
    image: tuple[int, ...]

    @property
    def mask(self) -> int:
        return to_mask(self.image)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.image)

    def phi(self) -> dict[int, int]:
        """Host vertex -> pattern vertex (the isomorphism π)."""
        return {v: a for a, v in enumerate(self.image)}


@dataclass
class PatternFamily:
    patterns: list[Graph]
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("pattern family must be non-empty")
        kept, names, seen = [], [], set()
        for i, p in enumerate(self.patterns):
            if p.n == 0:
                raise ValueError("patterns must have at least one vertex")
            key = canonical_form(p)
            if key in seen:
                continue
            seen.add(key)
            kept.append(p)
            names.append(self.names[i] if i < len(self.names) else f"F{i}")
        self.patterns = kept
        self.names = names
        self.canonical = [canonical_form(p) for p in kept]
        self.connected = [is_connected(p) for p in kept]
        self._orders = [_search_order(p) for p in kept]

    @property
    def gamma(self) -> int:
        return max(p.n for p in self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    @property
    def all_connected(self) -> bool:
        return all(self.connected)


def _search_order(p: Graph) -> list[int]:
    # connected-first order: every vertex after the first of its component
    # has an already-placed neighbour, so candidates come from adjacency masks
    order: list[int] = []
    for comp in sorted(connected_components(p), key=lambda c: (-len(c), c)):
        start = max(comp, key=lambda v: (p.degree(v), -v))
        placed = {start}
        order.append(start)
        while len(placed) < len(comp):
            nxt = max((v for v in comp if v not in placed),
                      key=lambda v: (sum(u in placed for u in p.adj[v]), p.degree(v), -v))
            placed.add(nxt)
            order.append(nxt)
    return order


def _backtrack(g: Graph, p: Graph, order: Sequence[int], allowed: int,
               required: int = 0, blockers: Sequence[int] = ()):
    """Yield images (tuple indexed by pattern vertex) of injective
    edge-preserving maps p -> g[allowed] covering ``required``."""
    k = p.n
    pos_of = {a: i for i, a in enumerate(order)}
    back = [[b for b in p.adj[a] if pos_of[b] < pos_of[a]] for a in order]
    pdeg = [p.degree(a) for a in order]
    deg_ok = [0] * (max(pdeg, default=0) + 1)
    for d in range(len(deg_ok)):
        deg_ok[d] = to_mask(v for v in range(g.n) if g.degree(v) >= d) & allowed
    img = [-1] * k
    n_req = bin(required).count("1")

    def rec(i: int, used: int):
        if i == k:
            yield tuple(img)
            return
        a = order[i]
        cand = deg_ok[pdeg[i]] & ~used
        for b in back[i]:
            cand &= g.nbr[img[b]]
        missing = required & ~used
        if missing and bin(missing).count("1") >= k - i:
            cand &= missing
        for v in bits(cand):
            nu = used | 1 << v
            if blockers and any(x & nu == x for x in blockers):
                continue
            img[a] = v
            yield from rec(i + 1, nu)
            img[a] = -1

    if n_req > k:
        return
    yield from rec(0, 0)


def enumerate_copies(g: Graph, fam: PatternFamily, limit: int | None = None) -> list[FCopy]:
    """All F-copies of every pattern, pattern by pattern, lexicographic in the
    search order of each pattern.  Stops after ``limit`` copies if given."""
    out: list[FCopy] = []
    for idx, p in enumerate(fam.patterns):
        for image in _backtrack(g, p, fam._orders[idx], g.all_mask):
            out.append(FCopy(idx, image))
            if limit is not None and len(out) >= limit:
                return out
    return out


def copy_vertex_sets(copies: Iterable[FCopy]) -> list[int]:
    """Distinct vertex sets (bitmasks) of the copies, sorted."""
    return sorted({c.mask for c in copies})


def is_family_free(g: Graph, fam: PatternFamily, within: int | None = None) -> bool:
    allowed = g.all_mask if within is None else within
    for idx, p in enumerate(fam.patterns):
        for _ in _backtrack(g, p, fam._orders[idx], allowed):
            return False
    return True


def find_constrained_copy(g: Graph, fam: PatternFamily, required: Iterable[int] | int = 0,
                          forbidden: Iterable[int] | int = 0,
                          blockers: Iterable[Iterable[int] | int] = ()) -> FCopy | None:
    """First F-copy ``H`` with ``required ⊆ V(H)``, ``V(H) ∩ forbidden = ∅``
    and no blocker set contained in ``V(H)``."""
    req = to_mask(required)
    forb = to_mask(forbidden)
    if req & forb:
        raise ValueError("required and forbidden overlap")
    blk = [to_mask(x) for x in blockers]
    if 0 in blk:
        return None
    allowed = g.all_mask & ~forb
    for idx, p in enumerate(fam.patterns):
        for image in _backtrack(g, p, fam._orders[idx], allowed, req, blk):
            return FCopy(idx, image)
    return None


def is_valid_copy(g: Graph, fam: PatternFamily, c: FCopy) -> bool:
    p = fam.patterns[c.pattern]
    if len(c.image) != p.n or len(set(c.image)) != p.n:
        return False
    if any(not 0 <= v < g.n for v in c.image):
        return False
    return all(g.has_edge(c.image[a], c.image[b]) for a, b in p.edges())


def add_apex(g: Graph) -> Graph:
    """``g`` plus one vertex (id ``g.n``) adjacent to every vertex."""
    return Graph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in range(g.n)])


def plus_construction(g: Graph, fam: PatternFamily) -> tuple[Graph, PatternFamily, int]:
    """(G⁺, F⁺, apex id): one apex added to the host and to every pattern."""
    plus = PatternFamily([add_apex(p) for p in fam.patterns],
                         [name + "+" for name in fam.names])
    return add_apex(g), plus, g.n


# presets ------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges, off = [], 0
    for h in graphs:
        edges += [(u + off, v + off) for u, v in h.edges()]
        off += h.n
    return Graph.from_edges(off, edges)


def all_trees(n: int) -> list[Graph]:
    """All trees on ``n`` nodes up to isomorphism (via Prüfer sequences)."""
    if n == 1:
        return [Graph.from_edges(1, [])]
    if n == 2:
        return [complete_graph(2)]
    found: dict[str, Graph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = _prufer_tree(n, seq)
        found.setdefault(_tree_code(t), t)
    return [found[key] for key in sorted(found)]


def _tree_code(t: Graph) -> str:
    """AHU encoding rooted at the centre(s); equal iff isomorphic."""
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] <= 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for u in t.adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt

    def code(v: int, parent: int) -> str:
        return "(" + "".join(sorted(code(u, v) for u in t.adj[v] if u != parent)) + ")"

    return min(code(c, -1) for c in layer)


def _prufer_tree(n: int, seq: Sequence[int]) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


_PRESET = re.compile(r"^(\d*)(k|p|c|star|coc)(\d+)$")


def preset_family(name: str) -> PatternFamily:
    """Named families; ``a,b`` takes the union of presets.

    ``k<l>`` clique, ``p<l>`` path on l vertices, ``c<l>`` cycle,
    ``star<l>`` K_{1,l+1}, ``coc<l>`` all trees on l nodes.  A numeric
    prefix ``m`` takes the disjoint union of m copies (``2k2``).
    """
    patterns, names = [], []
    for part in name.lower().replace(" ", "").split(","):
        mt = _PRESET.match(part)
        if not mt:
            raise ValueError(f"unknown pattern preset {part!r}")
        mult = int(mt.group(1) or 1)
        kind, ell = mt.group(2), int(mt.group(3))
        if kind == "k":
            base = [complete_graph(ell)]
        elif kind == "p":
            base = [path_graph(ell)]
        elif kind == "c":
            base = [cycle_graph(ell)]
        elif kind == "star":
            base = [star_graph(ell + 1)]
        else:
            base = all_trees(ell)
        for b in base:
            patterns.append(b if mult == 1 else disjoint_union([b] * mult))
            names.append(part)
    return PatternFamily(patterns, names)
