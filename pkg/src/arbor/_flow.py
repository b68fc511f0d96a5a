"""Integral max-flow (Dinic) and the bipartite degree-constrained subgraph
solver built on it."""

from __future__ import annotations

from collections import deque

INF = float("inf")


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        # edge: [head, residual capacity, index of reverse edge in head's list]
        self.adj: list[list[list]] = [[] for _ in range(n)]

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, cap) -> tuple[int, int, object]:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])
        return (u, len(self.adj[u]) - 1, cap)

    def flow_on(self, handle) -> int:
        u, idx, cap = handle
        return cap - self.adj[u][idx][1]

    def _bfs(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in self.adj[u]:
                if cap > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int, limit=INF) -> int:
        total = 0
        while total < limit:
            level = self._bfs(s, t)
            if level is None:
                break
            it = [0] * self.n
            while total < limit:
                pushed = self._dfs(s, t, limit - total, level, it)
                if not pushed:
                    break
                total += pushed
        return total

    def _dfs(self, s, t, amount, level, it):
        # iterative augmenting-path search in the level graph
        stack = [s]
        path: list[list] = []
        while stack:
            u = stack[-1]
            if u == t:
                push = amount
                for e in path:
                    push = min(push, e[1])
                for e in path:
                    e[1] -= push
                    self.adj[e[0]][e[2]][1] += push
                return push
            advanced = False
            edges = self.adj[u]
            while it[u] < len(edges):
                e = edges[it[u]]
                if e[1] > 0 and level[e[0]] == level[u] + 1:
                    stack.append(e[0])
                    path.append(e)
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                stack.pop()
                level[u] = -1
                if path:
                    path.pop()
                    it[stack[-1]] += 1
        return 0

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in self.adj[u]:
                if cap > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def bounded_flow(n: int, arcs, s: int, t: int):
    """Feasible s-t flow with lower and upper arc bounds.

    ``arcs`` is a list of ``(u, v, lo, hi)``. Returns per-arc flow values or
    ``None`` if no feasible flow exists.
    """
    net = FlowNetwork(n + 2)
    ss, tt = n, n + 1
    excess = [0] * n
    handles = []
    for u, v, lo, hi in arcs:
        if lo > hi:
            return None
        handles.append((net.add_edge(u, v, hi - lo), lo))
        excess[v] += lo
        excess[u] -= lo
    net.add_edge(t, s, INF)
    demand = 0
    for v in range(n):
        if excess[v] > 0:
            net.add_edge(ss, v, excess[v])
            demand += excess[v]
        elif excess[v] < 0:
            net.add_edge(v, tt, -excess[v])
    if net.max_flow(ss, tt) != demand:
        return None
    return [net.flow_on(h) + lo for h, lo in handles]


def degree_constrained_subgraph(g, side, available, lo, hi):
    """Choose copies among ``available`` so every vertex ``v`` gets degree in
    ``[lo[v], hi[v]]``; ``g`` must be bipartite w.r.t. ``side``.

    Within a bundle the lowest-index available copies are taken first.
    Returns a frozenset of copies or ``None``.
    """
    n = g.vertex_count
    per_bundle: dict[int, list[int]] = {}
    for i in sorted(available):
        per_bundle.setdefault(g.bundle_of[i], []).append(i)
    s, t = n, n + 1
    arcs = []
    for v in range(n):
        a, b = max(lo[v], 0), hi[v]
        if a > b:
            return None
        if side[v] == 0:
            arcs.append((s, v, a, b))
        else:
            arcs.append((v, t, a, b))
    bundle_order = sorted(per_bundle)
    for bnd in bundle_order:
        u, v, _ = g.bundles[bnd]
        if side[u] == side[v]:
            raise ValueError("degree_constrained_subgraph needs a bipartite host")
        x, y = (u, v) if side[u] == 0 else (v, u)
        arcs.append((x, y, 0, len(per_bundle[bnd])))
    flows = bounded_flow(n + 2, arcs, s, t)
    if flows is None:
        return None
    chosen = []
    for bnd, f in zip(bundle_order, flows[n:]):
        chosen.extend(per_bundle[bnd][:f])
    return frozenset(chosen)
