"""Sunflowers in set systems of small sets.

Sets are bitmasks.  A family of sets is a sunflower when all pairwise
intersections equal one common core; equivalently the petals ``S - core``
are pairwise disjoint.
"""
from __future__ import annotations

from collections.abc import Sequence
from math import factorial

from .graph import bits, popcount


def sunflower_threshold(p: int, r: int) -> int:
    """(r-1)^p * p!; more distinct sets of size ≤ p force an r-sunflower."""
    return (r - 1) ** p * factorial(p)


def is_sunflower(sets: Sequence[int], core: int | None = None) -> bool:
    if not sets:
        return True
    inter = sets[0]
    for s in sets[1:]:
        inter &= s
    if core is not None and len(sets) == 1:
        return core & ~inter == 0  # one set is a sunflower with any core inside it
    if core is not None and inter != core:
        return False
    seen = 0
    for s in sets:
        petal = s & ~inter
        if petal & seen:
            return False
        seen |= petal
    return True


def _greedy_order(sets: Sequence[int], idx: Sequence[int]) -> list[int]:
    return sorted(idx, key=lambda i: popcount(sets[i]))  # stable: ties keep input order


def find_sunflower(sets: Sequence[int], r: int) -> tuple[int, list[int]] | None:
    """A sunflower of ``r`` sets, returned as (core, indices) or None.

    Erdős–Rado recursion: take a maximal pairwise-disjoint subfamily; if it
    has r members it is a sunflower with empty core, otherwise some element
    of its union lies in many sets and we recurse on their links.  Always
    succeeds above :func:`sunflower_threshold` for distinct sets.
    """
    if r < 1:
        raise ValueError("r must be >= 1")

    def rec(idx: list[int], removed: int) -> tuple[int, list[int]] | None:
        if len(idx) < r:
            return None
        link = {i: sets[i] & ~removed for i in idx}
        chosen, used = [], 0
        for i in _greedy_order(sets, idx):
            if not link[i] & used:
                chosen.append(i)
                used |= link[i]
                if len(chosen) == r:
                    return removed, chosen
        best_x, best_cnt = -1, 0
        for x in bits(used):
            cnt = sum(1 for i in idx if link[i] >> x & 1)
            if cnt > best_cnt:
                best_x, best_cnt = x, cnt
        if best_x < 0:
            return None
        return rec([i for i in idx if link[i] >> best_x & 1], removed | 1 << best_x)

    res = rec(list(range(len(sets))), 0)
    if res is None:
        return None
    core, chosen = res
    return core, sorted(chosen)


def maximal_sunflower_with_core(sets: Sequence[int], core: int) -> list[int]:
    """Greedy maximal family of sets ⊇ core whose petals are pairwise disjoint.

    Smallest sets first, input order among equal sizes.
    """
    chosen, used = [], 0
    for i in _greedy_order(sets, range(len(sets))):
        s = sets[i]
        if s & core != core:
            continue
        petal = s & ~core
        if petal & used:
            continue
        chosen.append(i)
        used |= petal
    return chosen
