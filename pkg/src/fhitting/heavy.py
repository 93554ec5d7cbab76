"""Standard triples, (F, δ)-heavy cores and their classification relative to
an undeletable vertex set U.

A triple (X, F, f) is keyed as ``(X, pattern, fvals)`` where ``X`` is a
bitmask and ``fvals[i]`` is the pattern vertex assigned to the i-th smallest
vertex of X.  The refinement order ≺ is "X ⊊ Y and f = g restricted to X".
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .graph import Graph, bits, connected_components, popcount, to_mask
from .pattern import FCopy, PatternFamily, enumerate_copies


class StaleTableError(RuntimeError):
    """A heavy-core table was used with a different (G, F, δ)."""


class InvalidWitnessError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class StandardTriple:
    X: int
    pattern: int
    fvals: tuple[int, ...]

    @property
    def vertices(self) -> list[int]:
        return bits(self.X)

    @property
    def f(self) -> dict[int, int]:
        return dict(zip(bits(self.X), self.fvals))

    def sort_key(self):
        return (popcount(self.X), bits(self.X), self.pattern, self.fvals)

    def restrict(self, Y: int) -> "StandardTriple":
        f = self.f
        return StandardTriple(Y, self.pattern, tuple(f[v] for v in bits(Y)))

    @classmethod
    def from_map(cls, pattern: int, f: dict[int, int]) -> "StandardTriple":
        xs = sorted(f)
        return cls(to_mask(xs), pattern, tuple(f[v] for v in xs))


def triple_of_copy(c: FCopy, X: int) -> StandardTriple:
    phi = c.phi()
    return StandardTriple(X, c.pattern, tuple(phi[v] for v in bits(X)))


def extends(t: StandardTriple, c: FCopy) -> bool:
    """(X, F, f) ⪯ (V(H), F, π)."""
    if c.pattern != t.pattern or t.X & ~c.mask:
        return False
    phi = c.phi()
    return all(phi[v] == a for v, a in zip(bits(t.X), t.fvals))


@dataclass(frozen=True)
class HeavyCoreWitness:
    """Δ copies; ``repeat`` > 1 means the single distinct copy is taken
    ``repeat`` times (only possible for a full triple)."""
    distinct: tuple[FCopy, ...]
    repeat: int = 1

    @property
    def copies(self) -> tuple[FCopy, ...]:
        return self.distinct * self.repeat

    @property
    def size(self) -> int:
        return len(self.distinct) * self.repeat


def required_size(fam: PatternFamily, triple: StandardTriple, delta: int) -> int:
    """Δ = γ^{|X|} δ."""
    return fam.gamma ** popcount(triple.X) * delta


def validate_witness(g: Graph, fam: PatternFamily, triple: StandardTriple, delta: int,
                     w: HeavyCoreWitness) -> bool:
    from .pattern import is_valid_copy
    if w.size != required_size(fam, triple, delta):
        return False
    for c in w.distinct:
        if not is_valid_copy(g, fam, c) or not extends(triple, c):
            return False
    masks = [c.mask for c in w.distinct]
    if w.repeat > 1 or len(w.distinct) == 1:
        # repeated copies are allowed only as the full triple of that copy
        return masks[0] == triple.X
    seen = 0
    for m in masks:
        if m & ~triple.X & seen:
            return False
        seen |= m & ~triple.X
    return all(m & triple.X == triple.X for m in masks) and len(set(masks)) == len(masks)


def pack_petals(petals: Sequence[int], need: int) -> list[int] | None:
    """Indices of ``need`` pairwise-disjoint petals, or None.

    Greedy first (smallest petals first); if greedy falls short an exact
    depth-first search decides, since disjoint packing is not greedy-exact
    once petals have two or more vertices.
    """
    if need <= 0:
        return []
    order = sorted(range(len(petals)), key=lambda i: (popcount(petals[i]), petals[i]))
    chosen, used = [], 0
    for i in order:
        if not petals[i] & used:
            chosen.append(i)
            used |= petals[i]
            if len(chosen) == need:
                return chosen
    if all(popcount(p) <= 1 for p in petals):
        return None
    best: list[int] | None = None

    def rec(start: int, used: int, picked: list[int]) -> bool:
        nonlocal best
        if len(picked) == need:
            best = list(picked)
            return True
        rest = [i for i in order[start:] if not petals[i] & used]
        if len(picked) + len(rest) < need:
            return False
        union = 0
        for i in rest:
            union |= petals[i]
        smallest = min(popcount(petals[i]) for i in rest)
        if len(picked) + popcount(union) // smallest < need:
            return False
        for j, i in enumerate(rest):
            if len(picked) + len(rest) - j < need:
                return False
            picked.append(i)
            if rec(order.index(i) + 1, used | petals[i], picked):
                return True
            picked.pop()
        return False

    rec(0, 0, [])
    return best


def witness_search(g: Graph, triple: StandardTriple, delta: int, copies: Sequence[FCopy],
                   fam: PatternFamily) -> HeavyCoreWitness | None:
    """Δ copies sunflowering on X with isomorphisms agreeing with f on X."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    need = required_size(fam, triple, delta)
    group = [c for c in copies if extends(triple, c)]
    return _witness_from_group(triple, group, need)


def _witness_from_group(triple: StandardTriple, group: Sequence[FCopy], need: int):
    if not group:
        return None
    if popcount(triple.X) == len(group[0].image):
        # full triple: f is onto, the copy is unique and repeats Δ times
        return HeavyCoreWitness((group[0],), need)
    by_petal: dict[int, FCopy] = {}
    for c in group:
        by_petal.setdefault(c.mask & ~triple.X, c)
    if len(by_petal) < need:
        return None
    keys = sorted(by_petal)
    idx = pack_petals(keys, need)
    if idx is None:
        return None
    return HeavyCoreWitness(tuple(by_petal[keys[i]] for i in sorted(idx)))


@dataclass(frozen=True)
class CoreStatus:
    u_minimal: bool
    u_redundant: bool

    @property
    def u_active(self) -> bool:
        return self.u_minimal and not self.u_redundant


@dataclass
class HeavyCoreTable:
    """All (F, δ)-heavy cores of G with one witness each, plus the copy table."""
    g: Graph
    fam: PatternFamily
    delta: int
    copies: list[FCopy]
    cores: list[StandardTriple]
    witnesses: dict[StandardTriple, HeavyCoreWitness]
    groups: dict[StandardTriple, list[int]]
    sub_union: dict[StandardTriple, int] = field(default_factory=dict)
    _active_cache: dict[int, list[StandardTriple]] = field(default_factory=dict, repr=False)

    def check(self, g: Graph, fam: PatternFamily, delta: int) -> None:
        if self.g is not g or self.fam is not fam or self.delta != delta:
            raise StaleTableError("heavy-core table built for a different (G, F, delta)")

    def is_heavy(self, t: StandardTriple) -> bool:
        return t in self.witnesses

    # -- U-relative classification ---------------------------------------
    def redundant_copy_flags(self, U: int) -> list[bool]:
        """Per copy: is it U-redundant?"""
        diffs: dict[int, set[int]] = {}
        for c in self.copies:
            d = c.mask & ~U
            if d:
                diffs.setdefault(c.pattern, set()).add(d)
        red_of: dict[tuple[int, int], bool] = {}
        flags = []
        for c in self.copies:
            d = c.mask & ~U
            key = (c.pattern, d)
            if key not in red_of:
                red_of[key] = any(e != d and e & d == e for e in diffs.get(c.pattern, ()))
            flags.append(red_of[key])
        return flags

    def status(self, t: StandardTriple, U: int, red: list[bool] | None = None) -> CoreStatus:
        minimal = bool(t.X & ~U) and not (self.sub_union.get(t, 0) & ~U)
        if red is None:
            red = self.redundant_copy_flags(U)
        redundant = all(red[i] for i in self.groups[t])
        return CoreStatus(minimal, redundant)

    def active(self, U: int) -> list[StandardTriple]:
        """U-active heavy cores in selection order (|X|, X, pattern, f)."""
        hit = self._active_cache.get(U)
        if hit is not None:
            return hit
        red = None
        out = []
        for t in self.cores:
            if not t.X & ~U or self.sub_union.get(t, 0) & ~U:
                continue
            if red is None:
                red = self.redundant_copy_flags(U)
            if not all(red[i] for i in self.groups[t]):
                out.append(t)
        self._active_cache[U] = out
        return out


def enumerate_heavy_cores(g: Graph, fam: PatternFamily, delta: int,
                          copies: list[FCopy] | None = None) -> HeavyCoreTable:
    """Every heavy triple with X inside some copy's vertex set; X = ∅ is
    left out (it is contained in every U, so it never matters)."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if copies is None:
        copies = enumerate_copies(g, fam)
    raw: dict[tuple, list[int]] = {}
    combos: dict[int, list[tuple[int, ...]]] = {}
    for ci, c in enumerate(copies):
        pairs = sorted((v, a) for a, v in enumerate(c.image))
        size = len(pairs)
        if size not in combos:
            combos[size] = [cb for s in range(1, size + 1)
                            for cb in itertools.combinations(range(size), s)]
        for cb in combos[size]:
            key = (sum(1 << pairs[i][0] for i in cb), c.pattern, tuple(pairs[i][1] for i in cb))
            lst = raw.get(key)
            if lst is None:
                raw[key] = [ci]
            else:
                lst.append(ci)
    groups = {StandardTriple(*key): lst for key, lst in raw.items()}
    witnesses: dict[StandardTriple, HeavyCoreWitness] = {}
    for t in sorted(groups, key=StandardTriple.sort_key):
        w = _witness_from_group(t, [copies[i] for i in groups[t]], required_size(fam, t, delta))
        if w is not None:
            witnesses[t] = w
    cores = sorted(witnesses, key=StandardTriple.sort_key)
    table = HeavyCoreTable(g, fam, delta, copies, cores, witnesses,
                           {t: groups[t] for t in cores})
    for t in cores:
        union = 0
        xs = bits(t.X)
        for size in range(1, len(xs)):
            for cb in itertools.combinations(range(len(xs)), size):
                sub = StandardTriple(sum(1 << xs[i] for i in cb), t.pattern,
                                     tuple(t.fvals[i] for i in cb))
                if sub in witnesses:
                    union |= sub.X
        table.sub_union[t] = union
    return table


def classify(table: HeavyCoreTable, triple: StandardTriple, U: Iterable[int] | int,
             g: Graph | None = None, fam: PatternFamily | None = None,
             delta: int | None = None) -> CoreStatus:
    if g is not None or fam is not None or delta is not None:
        table.check(g if g is not None else table.g, fam if fam is not None else table.fam,
                    delta if delta is not None else table.delta)
    if triple not in table.witnesses:
        raise ValueError("triple is not a heavy core of this table")
    return table.status(triple, to_mask(U))


# -- Config --------------------------------------------------------------

def config_pieces(fam: PatternFamily, triple: StandardTriple,
                  witness: HeavyCoreWitness) -> list[list[int]]:
    """V_{i,j} as bitmasks: pieces[i][j] = π_j^{-1}(V(C_i))."""
    p = fam.patterns[triple.pattern]
    fx = to_mask(triple.fvals)
    comps = connected_components(p, within=p.all_mask & ~fx)
    for c in witness.distinct:
        if not extends(triple, c):
            raise InvalidWitnessError("witness copy does not extend the triple")
    if not comps:
        return []
    return [[to_mask(c.image[a] for a in comp) for c in witness.copies] for comp in comps]


def _index_sets(delta_n: int, gamma: int) -> list[tuple[int, ...]]:
    out = []
    for s in range(min(gamma, delta_n) + 1):
        out.extend(itertools.combinations(range(delta_n), s))
    return out


def config_sets(triple: StandardTriple, witness: HeavyCoreWitness, gamma: int,
                fam: PatternFamily) -> list[int]:
    """𝒫 = { ⋃_i ⋃_{j ∈ J_i} V_{i,j} : J_1..J_t with |J_i| ≤ γ }, deduplicated."""
    pieces = config_pieces(fam, triple, witness)
    choices = []
    for row in pieces:
        opts = set()
        for J in _index_sets(len(row), gamma):
            m = 0
            for j in J:
                m |= row[j]
            opts.add(m)
        choices.append(sorted(opts))
    out = set()
    for combo in itertools.product(*choices):
        m = 0
        for x in combo:
            m |= x
        out.add(m)
    return sorted(out, key=lambda m: (popcount(m), m))


def config_sets_pruned(triple: StandardTriple, witness: HeavyCoreWitness, gamma: int,
                       fam: PatternFamily, alive: Callable[[int], bool]) -> list[int]:
    """The members P of 𝒫 with ``alive(P)``, for a monotone ``alive``
    (false on P implies false on every superset): partial unions that are
    already dead are never extended."""
    pieces = config_pieces(fam, triple, witness)
    out: set[int] = set()
    seen: set[tuple[int, int]] = set()
    cache: dict[int, bool] = {}

    def ok(m: int) -> bool:
        r = cache.get(m)
        if r is None:
            r = cache[m] = alive(m)
        return r

    def rec(i: int, acc: int):
        if (i, acc) in seen:
            return
        seen.add((i, acc))
        if i == len(pieces):
            out.add(acc)
            return
        row = pieces[i]

        def pick(start: int, left: int, cur: int):
            rec(i + 1, cur)
            if left == 0:
                return
            for j in range(start, len(row)):
                nxt = cur | row[j]
                if nxt != cur and not ok(nxt):
                    continue
                pick(j + 1, left - 1, nxt)

        pick(0, gamma, acc)

    if ok(0):
        rec(0, 0)
    return sorted(out, key=lambda m: (popcount(m), m))
