"""Exhaustive (m, l)-partition-connectivity decision straight from the
definition: split the copies into a factor with an orientation of minimum
out-degree ``l`` and a remainder containing ``m`` disjoint spanning trees.

Orientability is tested with Hall's condition over all vertex subsets and
tree packing with the Nash-Williams--Tutte condition over all vertex
partitions; neither test uses matroids or flows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import SizeCapExceeded
from ..graph import Multigraph

BRUTE_CAP = 20


@dataclass(frozen=True)
class BruteAnswer:
    yes: bool
    oriented: frozenset | None = None

    def __bool__(self):
        return self.yes


@lru_cache(maxsize=None)
def set_partitions(n: int) -> tuple:
    """All partitions of ``range(n)`` as block-label tuples (restricted
    growth strings)."""
    out = []

    def rec(labels, top):
        if len(labels) == n:
            out.append(tuple(labels))
            return
        for c in range(top + 2):
            labels.append(c)
            rec(labels, max(top, c))
            labels.pop()

    if n == 0:
        return ((),)
    rec([0], 0)
    return tuple(out)


def orientable(n: int, ends, copies, l: int) -> bool:
    """Hall: every vertex set A meets at least ``l |A|`` copies."""
    if l == 0:
        return True
    masks = [(1 << ends[i][0]) | (1 << ends[i][1]) for i in copies]
    for a in range(1, 1 << n):
        hit = sum(1 for mk in masks if mk & a)
        if hit < l * a.bit_count():
            return False
    return True


def packs_trees(n: int, ends, copies, m: int) -> bool:
    """Nash-Williams--Tutte: every partition P leaves at least
    ``m (|P| - 1)`` crossing copies."""
    if m == 0 or n <= 1:
        return True
    if len(copies) < m * (n - 1):
        return False
    pairs = [ends[i] for i in copies]
    for labels in set_partitions(n):
        parts = max(labels) + 1
        if parts == 1:
            continue
        cross = sum(1 for u, v in pairs if labels[u] != labels[v])
        if cross < m * (parts - 1):
            return False
    return True


def brute_force_partition_connectivity(g: Multigraph, m: int, l: int, cap: int = BRUTE_CAP) -> BruteAnswer:
    total = g.copy_count
    if total > cap:
        raise SizeCapExceeded(f"{total} edge copies exceed the brute-force cap {cap}")
    n = g.vertex_count
    ends = g.ends
    need = l * n
    if need > total:
        return BruteAnswer(False)
    # a factor orientable with out-degree >= l can be trimmed to exactly l*n
    # copies; the trimmed copies only help the tree side. Parallel copies are
    # interchangeable, so only the count taken from each bundle matters.
    mults = [mult for _, _, mult in g.bundles]
    for counts in _distributions(mults, need):
        f, rest = [], []
        for b, c in enumerate(counts):
            block = g.bundle_copies(b)
            f.extend(block[:c])
            rest.extend(block[c:])
        if orientable(n, ends, f, l) and packs_trees(n, ends, rest, m):
            return BruteAnswer(True, frozenset(f))
    return BruteAnswer(False)


def _distributions(mults, total):
    """Vectors ``c`` with ``0 <= c[b] <= mults[b]`` and ``sum(c) == total``."""
    suffix = [0] * (len(mults) + 1)
    for b in range(len(mults) - 1, -1, -1):
        suffix[b] = suffix[b + 1] + mults[b]
    counts = [0] * len(mults)

    def rec(b, left):
        if b == len(mults):
            if left == 0:
                yield tuple(counts)
            return
        for c in range(max(0, left - suffix[b + 1]), min(mults[b], left) + 1):
            counts[b] = c
            yield from rec(b + 1, left - c)
        counts[b] = 0

    yield from rec(0, total)
