"""Multigraphs with addressable parallel edges, factors, and tree patterns.

Parallel copies of an edge are kept apart so that a factor (a spanning
subgraph) of a multigraph is simply a set of copies. In-process a copy is
addressed by its flat index ``0 .. copy_count-1``; files and JSON use the
pair ``(bundle, copy)``. Bundles are normalized to ``u < v`` and sorted, so
both addressings are stable under parse/serialize round trips.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import EmptyOrFullSet, FormatError, HostMismatch, InvalidParams, NotATree

X, Y = 0, 1


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    bundles: tuple = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidParams("vertex_count must be nonnegative")
        norm = []
        seen = set()
        for u, v, mult in self.bundles:
            if u == v:
                raise InvalidParams(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidParams(f"edge ({u}, {v}) out of range")
            if mult < 1:
                raise InvalidParams(f"multiplicity of ({u}, {v}) must be positive")
            a, b = min(u, v), max(u, v)
            if (a, b) in seen:
                raise InvalidParams(f"duplicate bundle ({a}, {b})")
            seen.add((a, b))
            norm.append((a, b, int(mult)))
        object.__setattr__(self, "bundles", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Multigraph:
        """Build from a list of endpoint pairs; repeated pairs become copies."""
        count: dict[tuple[int, int], int] = {}
        for u, v in edges:
            key = (min(u, v), max(u, v))
            count[key] = count.get(key, 0) + 1
        return cls(n, tuple((u, v, c) for (u, v), c in count.items()))

    # -- copy addressing -------------------------------------------------

    @cached_property
    def _offsets(self) -> list[int]:
        out, acc = [], 0
        for _, _, mult in self.bundles:
            out.append(acc)
            acc += mult
        out.append(acc)
        return out

    @property
    def copy_count(self) -> int:
        return self._offsets[-1]

    @cached_property
    def ends(self) -> list[tuple[int, int]]:
        """Endpoints of every copy, indexed by flat copy index."""
        out = []
        for u, v, mult in self.bundles:
            out.extend([(u, v)] * mult)
        return out

    @cached_property
    def bundle_of(self) -> list[int]:
        out = []
        for b, (_, _, mult) in enumerate(self.bundles):
            out.extend([b] * mult)
        return out

    def copy_id(self, i: int) -> tuple[int, int]:
        b = self.bundle_of[i]
        return (b, i - self._offsets[b])

    def copy_index(self, cid) -> int:
        b, c = cid
        if not (0 <= b < len(self.bundles)) or not (0 <= c < self.bundles[b][2]):
            raise InvalidParams(f"invalid copy id {list(cid)}")
        return self._offsets[b] + c

    def bundle_copies(self, b: int) -> range:
        return range(self._offsets[b], self._offsets[b + 1])

    @cached_property
    def bundle_index(self) -> dict[tuple[int, int], int]:
        return {(u, v): b for b, (u, v, _) in enumerate(self.bundles)}

    def find_bundle(self, u: int, v: int) -> int | None:
        return self.bundle_index.get((min(u, v), max(u, v)))

    @cached_property
    def all_copies(self) -> frozenset:
        return frozenset(range(self.copy_count))

    @cached_property
    def incidence(self) -> list[list[int]]:
        """Copies incident to each vertex, in increasing order."""
        inc = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.ends):
            inc[u].append(i)
            inc[v].append(i)
        return inc

    @cached_property
    def neighbors(self) -> list[list[tuple[int, int]]]:
        """Per vertex: ``(neighbor, bundle)`` pairs."""
        nb = [[] for _ in range(self.vertex_count)]
        for b, (u, v, _) in enumerate(self.bundles):
            nb[u].append((v, b))
            nb[v].append((u, b))
        return nb

    # -- degrees and cuts ------------------------------------------------

    def degree(self, v: int, copies=None) -> int:
        if not 0 <= v < self.vertex_count:
            raise InvalidParams(f"vertex {v} out of range")
        if copies is None:
            return len(self.incidence[v])
        return sum(1 for i in self.incidence[v] if i in copies)

    def degrees(self, copies=None) -> list[int]:
        deg = [0] * self.vertex_count
        ends = self.ends
        for i in (range(self.copy_count) if copies is None else copies):
            u, v = ends[i]
            deg[u] += 1
            deg[v] += 1
        return deg

    def min_degree(self, copies=None) -> int:
        return min(self.degrees(copies), default=0)

    def cut_size(self, a) -> int:
        a = set(a)
        if not a or len(a) >= self.vertex_count:
            raise EmptyOrFullSet("cut side must be a nonempty proper vertex subset")
        return sum(m for u, v, m in self.bundles if (u in a) != (v in a))

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for _, _, m in self.bundles)

    def components(self, copies=None) -> list[list[int]]:
        adj = [[] for _ in range(self.vertex_count)]
        for i in (range(self.copy_count) if copies is None else copies):
            u, v = self.ends[i]
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self, copies=None) -> bool:
        return len(self.components(copies)) <= 1

    # -- derived graphs --------------------------------------------------

    def restrict(self, copies) -> tuple[Multigraph, list[int]]:
        """Spanning subgraph on ``copies``.

        Returns the new graph and, per new flat index, the old flat index.
        """
        chosen = sorted(copies)
        per_bundle: dict[int, list[int]] = {}
        for i in chosen:
            per_bundle.setdefault(self.bundle_of[i], []).append(i)
        bundles = []
        back = []
        for b in sorted(per_bundle):
            u, v, _ = self.bundles[b]
            bundles.append((u, v, len(per_bundle[b])))
            back.extend(per_bundle[b])
        return Multigraph(self.vertex_count, tuple(bundles)), back

    def scaled(self, times: int) -> Multigraph:
        if times < 1:
            raise InvalidParams("scale factor must be positive")
        return Multigraph(self.vertex_count, tuple((u, v, m * times) for u, v, m in self.bundles))

    def __repr__(self):
        return f"Multigraph(n={self.vertex_count}, bundles={len(self.bundles)}, copies={self.copy_count})"


@dataclass(frozen=True)
class Factor:
    """Spanning subgraph of ``host`` given by a set of flat copy indices."""

    host: Multigraph
    copies: frozenset = frozenset()

    def __post_init__(self):
        copies = frozenset(self.copies)
        bad = [i for i in copies if not 0 <= i < self.host.copy_count]
        if bad:
            raise InvalidParams(f"copy index {bad[0]} not in host")
        object.__setattr__(self, "copies", copies)

    @classmethod
    def full(cls, g: Multigraph) -> Factor:
        return cls(g, g.all_copies)

    def __len__(self):
        return len(self.copies)

    def __iter__(self):
        return iter(sorted(self.copies))

    def __contains__(self, i):
        return i in self.copies

    def degree(self, v: int) -> int:
        return self.host.degree(v, self.copies)

    def degrees(self) -> list[int]:
        return self.host.degrees(self.copies)

    def _check(self, other: Factor):
        if other.host != self.host:
            raise HostMismatch("factors live on different hosts")

    def union(self, *others: Factor) -> Factor:
        copies = set(self.copies)
        for o in others:
            self._check(o)
            copies |= o.copies
        return Factor(self.host, frozenset(copies))

    def minus(self, other: Factor) -> Factor:
        self._check(other)
        return Factor(self.host, self.copies - other.copies)

    def isdisjoint(self, other: Factor) -> bool:
        self._check(other)
        return self.copies.isdisjoint(other.copies)

    def copy_ids(self) -> list[list[int]]:
        return [list(self.host.copy_id(i)) for i in sorted(self.copies)]

    def subgraph(self) -> tuple[Multigraph, list[int]]:
        return self.host.restrict(self.copies)


def factor_complement(g: Multigraph, f: Factor) -> Factor:
    if f.host != g:
        raise HostMismatch("factor is not hosted by this graph")
    return Factor(g, g.all_copies - f.copies)


def lift(back: list[int], copies) -> frozenset:
    """Map copies of a restricted graph back to the original host."""
    return frozenset(back[i] for i in copies)


@dataclass(frozen=True)
class Orientation:
    factor: Factor
    tails: dict = field(hash=False)

    def __post_init__(self):
        if set(self.tails) != set(self.factor.copies):
            raise InvalidParams("orientation must give a tail for every copy of the factor")
        ends = self.factor.host.ends
        for i, t in self.tails.items():
            if t not in ends[i]:
                raise InvalidParams(f"tail {t} is not an endpoint of copy {i}")

    def out_degrees(self) -> list[int]:
        out = [0] * self.factor.host.vertex_count
        for t in self.tails.values():
            out[t] += 1
        return out

    def out_degree(self, v: int) -> int:
        return self.out_degrees()[v]


@dataclass(frozen=True)
class BipartitionedGraph:
    """A multigraph with every vertex labelled ``X`` (0) or ``Y`` (1)."""

    graph: Multigraph
    side: tuple

    def __post_init__(self):
        side = tuple(int(s) for s in self.side)
        if len(side) != self.graph.vertex_count or any(s not in (X, Y) for s in side):
            raise InvalidParams("side must label every vertex with 0 (X) or 1 (Y)")
        object.__setattr__(self, "side", side)

    @classmethod
    def from_sets(cls, g: Multigraph, xs) -> BipartitionedGraph:
        xs = set(xs)
        return cls(g, tuple(X if v in xs else Y for v in range(g.vertex_count)))

    @classmethod
    def two_coloring(cls, g: Multigraph) -> BipartitionedGraph:
        """Infer a proper 2-coloring; the least vertex of each component is X."""
        side = [-1] * g.vertex_count
        for s in range(g.vertex_count):
            if side[s] != -1:
                continue
            side[s] = X
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for b, _ in g.neighbors[a]:
                    if side[b] == -1:
                        side[b] = 1 - side[a]
                        queue.append(b)
                    elif side[b] == side[a]:
                        raise InvalidParams("graph is not bipartite")
        return cls(g, tuple(side))

    @property
    def xs(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == X]

    @property
    def ys(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == Y]

    @property
    def is_strict(self) -> bool:
        return all(self.side[u] != self.side[v] for u, v, _ in self.graph.bundles)

    def crossing_copies(self) -> frozenset:
        side = self.side
        return frozenset(i for i, (u, v) in enumerate(self.graph.ends) if side[u] != side[v])

    def inside_copies(self, which: int) -> frozenset:
        side = self.side
        return frozenset(
            i for i, (u, v) in enumerate(self.graph.ends) if side[u] == side[v] == which
        )

    def swapped(self) -> BipartitionedGraph:
        return BipartitionedGraph(self.graph, tuple(1 - s for s in self.side))

    def restrict(self, copies) -> tuple[BipartitionedGraph, list[int]]:
        sub, back = self.graph.restrict(copies)
        return BipartitionedGraph(sub, self.side), back


@dataclass(frozen=True)
class TreePattern:
    """The fixed tree T together with its bipartition and degree profile.

    Side A is the colour class containing vertex 0.
    """

    tree: Multigraph

    def __post_init__(self):
        t = self.tree
        if not t.is_simple:
            raise NotATree("tree pattern must be simple")
        if t.vertex_count < 2 or t.copy_count != t.vertex_count - 1 or not t.is_connected():
            raise NotATree("pattern must be a tree with at least one edge")

    @classmethod
    def from_edges(cls, edges) -> TreePattern:
        edges = list(edges)
        n = 1 + max(max(e) for e in edges)
        return cls(Multigraph.from_edges(n, edges))

    @property
    def m(self) -> int:
        return self.tree.copy_count

    @property
    def vertex_count(self) -> int:
        return self.tree.vertex_count

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return list(self.tree.ends)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        return [sorted(v for v, _ in nb) for nb in self.tree.neighbors]

    @cached_property
    def degree_list(self) -> list[int]:
        return self.tree.degrees()

    @cached_property
    def side_of(self) -> tuple:
        return BipartitionedGraph.two_coloring(self.tree).side

    @cached_property
    def parts(self) -> tuple[frozenset, frozenset]:
        a = frozenset(v for v, s in enumerate(self.side_of) if s == X)
        return a, frozenset(range(self.vertex_count)) - a

    @cached_property
    def leaves(self) -> frozenset:
        return frozenset(v for v, d in enumerate(self.degree_list) if d == 1)

    def nonleaf_degrees(self, part: str) -> list[int]:
        """Sorted degrees of the non-leaf vertices of side ``"A"`` or ``"B"``."""
        verts = self.parts[0 if part == "A" else 1]
        return sorted(self.degree_list[v] for v in verts if self.degree_list[v] >= 2)

    def nonleaf_vertices(self, part: str) -> list[int]:
        verts = self.parts[0 if part == "A" else 1]
        return sorted((v for v in verts if self.degree_list[v] >= 2),
                      key=lambda v: (self.degree_list[v], v))

    @property
    def is_star(self) -> bool:
        return max(self.degree_list) == self.m


def tree_bipartition(t: TreePattern) -> tuple[frozenset, frozenset]:
    return t.parts


def path_pattern(m: int) -> TreePattern:
    return TreePattern.from_edges([(i, i + 1) for i in range(m)])


def star_pattern(m: int) -> TreePattern:
    return TreePattern.from_edges([(0, i) for i in range(1, m + 1)])


# -- text format -------------------------------------------------------


def parse_graph(text) -> Multigraph:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8: {exc}") from None
    n = None
    bundles = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise FormatError(f"non-integer field in {line!r}", lineno) from None
        if parts[0] == "graph":
            if n is not None:
                raise FormatError("repeated graph directive", lineno)
            if len(nums) != 1 or nums[0] < 0:
                raise FormatError("expected 'graph <vertex_count>'", lineno)
            n = nums[0]
        elif parts[0] == "edge":
            if n is None:
                raise FormatError("edge before graph directive", lineno)
            if len(nums) == 2:
                nums.append(1)
            if len(nums) != 3:
                raise FormatError("expected 'edge <u> <v> <multiplicity>'", lineno)
            u, v, mult = nums
            if u == v:
                raise FormatError(f"loop at vertex {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex index out of range in {line!r}", lineno)
            if mult < 1:
                raise FormatError("multiplicity must be positive", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate bundle {key} (first at line {seen[key]})", lineno)
            seen[key] = lineno
            bundles.append((u, v, mult))
        else:
            raise FormatError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing graph directive")
    return Multigraph(n, tuple(bundles))


def serialize_graph(g: Multigraph) -> str:
    lines = [f"graph {g.vertex_count}"]
    lines += [f"edge {u} {v} {m}" for u, v, m in g.bundles]
    return "\n".join(lines) + "\n"


def parse_tree(text) -> TreePattern:
    return TreePattern(parse_graph(text))


def parse_rational(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"not a rational number: {text!r}") from None
    if not 0 <= eps <= 1:
        raise InvalidParams("epsilon must lie in [0, 1]")
    return eps
