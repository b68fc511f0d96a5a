"""Graphic and bicircular matroids on the copies of a multigraph, with
matroid partition (union) and matroid intersection against a laminar
capacity matroid.

A set of copies is independent in the graphic matroid when it is a forest,
and in the bicircular matroid when every connected component carries at
most one cycle (a pair of parallel copies counts as a cycle). A bicircular
basis of a graph whose components all contain cycles has exactly one edge
per vertex; orienting each unicyclic component around its cycle gives
every vertex out-degree one.
"""

from __future__ import annotations

from collections import deque

GRAPHIC = "graphic"
BICIRCULAR = "bicircular"


def full_rank(kind: str, n: int) -> int:
    return n - 1 if kind == GRAPHIC else n


class SetView:
    """Read-only snapshot of one independent set answering circuit queries."""

    def __init__(self, kind: str, n: int, ends, members):
        self.kind = kind
        self.ends = ends
        adj = [[] for _ in range(n)]
        for e in members:
            u, v = ends[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        self.adj = adj
        comp = [-1] * n
        parent = [-1] * n
        parent_edge = [-1] * n
        depth = [0] * n
        sizes, edge_counts = [], []
        for s in range(n):
            if comp[s] != -1:
                continue
            c = len(sizes)
            comp[s] = c
            queue = deque([s])
            nv = 0
            ne2 = 0
            while queue:
                a = queue.popleft()
                nv += 1
                ne2 += len(adj[a])
                for b, e in adj[a]:
                    if comp[b] == -1:
                        comp[b] = c
                        parent[b] = a
                        parent_edge[b] = e
                        depth[b] = depth[a] + 1
                        queue.append(b)
            sizes.append(nv)
            edge_counts.append(ne2 // 2)
        self.comp = comp
        self.parent = parent
        self.parent_edge = parent_edge
        self.depth = depth
        self.cyclic = [e >= v for v, e in zip(sizes, edge_counts)]

    def circuit(self, u: int, v: int):
        """Members forming a circuit with a new copy ``uv``; ``None`` when the
        set stays independent."""
        cu, cv = self.comp[u], self.comp[v]
        if self.kind == GRAPHIC:
            if cu != cv:
                return None
            out = []
            parent, pe, depth = self.parent, self.parent_edge, self.depth
            while u != v:
                if depth[u] >= depth[v]:
                    out.append(pe[u])
                    u = parent[u]
                else:
                    out.append(pe[v])
                    v = parent[v]
            return out
        if cu == cv:
            if not self.cyclic[cu]:
                return None
        elif not (self.cyclic[cu] and self.cyclic[cv]):
            return None
        return self._core(u, v)

    def _core(self, u, v):
        # 2-core of the component(s) of u and v plus the new copy
        comps = {self.comp[u], self.comp[v]}
        verts = [w for w in range(len(self.comp)) if self.comp[w] in comps]
        deg = {w: len(self.adj[w]) for w in verts}
        deg[u] += 1
        deg[v] += 1
        removed = set()
        queue = deque(w for w in verts if deg[w] == 1)
        while queue:
            w = queue.popleft()
            if deg[w] != 1:
                continue
            for z, e in self.adj[w]:
                if e not in removed:
                    removed.add(e)
                    deg[w] -= 1
                    deg[z] -= 1
                    if deg[z] == 1:
                        queue.append(z)
                    break
        res = []
        seen = set()
        for w in verts:
            for _, e in self.adj[w]:
                if e not in removed and e not in seen:
                    seen.add(e)
                    res.append(e)
        return res

    def independent_with(self, u: int, v: int) -> bool:
        return self.circuit(u, v) is None


def is_independent(kind: str, n: int, ends, members) -> bool:
    """Direct independence test (used by verifiers)."""
    parent = list(range(n))
    edges = [0] * n
    verts = [1] * n

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in members:
        u, v = ends[e]
        a, b = find(u), find(v)
        if a == b:
            if kind == GRAPHIC:
                return False
            edges[a] += 1
        else:
            parent[b] = a
            edges[a] += edges[b] + 1
            verts[a] += verts[b]
        r = find(u)
        if kind == BICIRCULAR and edges[r] > verts[r]:
            return False
    return True


class MatroidPartition:
    """Edmonds' matroid partition with shortest augmenting paths.

    ``kinds`` lists one matroid per part. Elements are copy indices of a
    graph with ``n`` vertices and endpoint table ``ends``.
    """

    def __init__(self, n: int, ends, kinds):
        self.n = n
        self.ends = ends
        self.kinds = list(kinds)
        self.sets = [set() for _ in self.kinds]
        self.owner: dict[int, int] = {}
        self.caps = [full_rank(k, n) for k in self.kinds]
        self._views: list[SetView | None] = [None] * len(self.kinds)

    def view(self, i: int) -> SetView:
        if self._views[i] is None:
            self._views[i] = SetView(self.kinds[i], self.n, self.ends, self.sets[i])
        return self._views[i]

    @property
    def saturated(self) -> bool:
        return all(len(s) == c for s, c in zip(self.sets, self.caps))

    def _explore(self, sources):
        """BFS over the exchange graph. Returns ``(sink_element, set, pred)``
        for the first insertable element, or ``(None, None, pred)``."""
        pred = {s: None for s in sources}
        queue = deque(sources)
        ends = self.ends
        while queue:
            x = queue.popleft()
            u, v = ends[x]
            own = self.owner.get(x)
            for i in range(len(self.kinds)):
                if i == own:
                    continue
                circ = self.view(i).circuit(u, v)
                if circ is None:
                    return x, i, pred
                for y in circ:
                    if y not in pred:
                        pred[y] = (x, i)
                        queue.append(y)
        return None, None, pred

    def _apply(self, x, i, pred):
        while True:
            old = self.owner.get(x)
            if old is not None:
                self.sets[old].discard(x)
                self._views[old] = None
            self.sets[i].add(x)
            self.owner[x] = i
            self._views[i] = None
            step = pred[x]
            if step is None:
                return
            x, i = step

    def insert(self, e: int) -> bool:
        x, i, pred = self._explore([e])
        if x is None:
            return False
        self._apply(x, i, pred)
        return True

    def run(self, elements) -> list[int]:
        """Insert elements in order; returns those left uncovered."""
        uncovered = []
        for e in elements:
            if self.saturated or not self.insert(e):
                uncovered.append(e)
        return uncovered

    def closure_of(self, uncovered) -> set[int]:
        """Elements reachable from the uncovered ones in the exchange graph.

        For this set ``S`` every part satisfies ``r_i(S) = |S & I_i|``, so
        ``|E - S| + sum_i r_i(S)`` equals the size of the union: the
        min-max certificate that no larger union exists.
        """
        if not uncovered:
            return set()
        x, _, pred = self._explore(list(uncovered))
        if x is not None:
            raise RuntimeError("uncovered element is insertable; partition not maximal")
        return set(pred)


def laminar_intersection(n: int, ends, kinds, elements, cap_vertex, caps):
    """Largest family of disjoint independent sets (one per kind) whose union
    uses at most ``caps[v]`` copies at each capped vertex.

    ``cap_vertex[e]`` names the single capped endpoint of copy ``e`` (or
    ``None``). Solved exactly as matroid intersection of the direct sum of the
    kinds (on element x kind pairs) with the laminar matroid "each copy used
    once, each capped vertex at most caps[v] times".
    """
    k = len(kinds)
    elements = sorted(elements)
    members = [set() for _ in range(k)]
    owner: dict[int, int] = {}
    count = {v: 0 for v in caps}
    ground = [(e, j) for e in elements for j in range(k)]

    def m2_circuit(e):
        if e in owner:
            return [(e, owner[e])]
        v = cap_vertex[e]
        if v is not None and count[v] >= caps[v]:
            return [(f, owner[f]) for f in owner if cap_vertex[f] == v]
        return None

    def add(e, j):
        members[j].add(e)
        owner[e] = j
        v = cap_vertex[e]
        if v is not None:
            count[v] += 1

    def remove(e, j):
        members[j].discard(e)
        del owner[e]
        v = cap_vertex[e]
        if v is not None:
            count[v] -= 1

    # greedy start
    views = [SetView(kinds[j], n, ends, members[j]) for j in range(k)]
    for e in elements:
        if e in owner or m2_circuit(e) is not None:
            continue
        u, v = ends[e]
        for j in range(k):
            if len(members[j]) < full_rank(kinds[j], n) and views[j].circuit(u, v) is None:
                add(e, j)
                views[j] = SetView(kinds[j], n, ends, members[j])
                break

    while True:
        views = [SetView(kinds[j], n, ends, members[j]) for j in range(k)]
        sources = []
        into: dict[tuple, list] = {}
        sink = {}
        outside = [(e, j) for (e, j) in ground if owner.get(e) != j]
        for x in outside:
            e, j = x
            u, v = ends[e]
            c1 = views[j].circuit(u, v)
            if c1 is None:
                sources.append(x)
            else:
                for f in c1:
                    into.setdefault((f, j), []).append(x)
            sink[x] = m2_circuit(e)
        pred = {x: None for x in sources}
        queue = deque(sources)
        end = None
        while queue:
            a = queue.popleft()
            if owner.get(a[0]) == a[1]:
                for b in into.get(a, ()):
                    if b not in pred:
                        pred[b] = a
                        queue.append(b)
            else:
                c2 = sink[a]
                if c2 is None:
                    end = a
                    break
                for b in c2:
                    if b not in pred:
                        pred[b] = a
                        queue.append(b)
        if end is None:
            break
        path = []
        while end is not None:
            path.append(end)
            end = pred[end]
        inside = [owner.get(e) == j for e, j in path]
        for (e, j), was_in in zip(path, inside):
            if was_in:
                remove(e, j)
        for (e, j), was_in in zip(path, inside):
            if not was_in:
                add(e, j)
    return [frozenset(s) for s in members]
