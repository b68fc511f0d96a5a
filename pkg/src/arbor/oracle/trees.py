"""Canonical codes and exhaustive enumeration of free trees."""

from __future__ import annotations

import heapq
import itertools

from ..errors import NotATree
from ..graph import Multigraph, TreePattern


def _adjacency(t: Multigraph) -> list[list[int]]:
    if not isinstance(t, Multigraph):
        t = t.tree
    n = t.vertex_count
    if n == 0 or not t.is_simple or t.copy_count != n - 1 or not t.is_connected():
        raise NotATree("input is not a tree")
    adj = [[] for _ in range(n)]
    for u, v, _ in t.bundles:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _centers(adj) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def _encode(adj, root) -> bytes:
    # iterative post-order so deep paths do not hit the recursion limit
    code: dict[int, bytes] = {}
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                stack.append(w)
    for v in reversed(order):
        kids = sorted(code.pop(w) for w in adj[v] if w != parent[v])
        code[v] = b"(" + b"".join(kids) + b")"
    return code[root]


def canonical_tree_code(t) -> bytes:
    """AHU encoding rooted at the center (minimum over two centers)."""
    adj = _adjacency(t)
    return min(_encode(adj, c) for c in _centers(adj))


def _extend(edges, n):
    for v in range(n):
        yield edges + [(v, n)]


def free_trees(n: int) -> list[TreePattern]:
    """One representative of every isomorphism class of trees on ``n >= 2``
    vertices, grown leaf by leaf from the smaller classes."""
    if n < 2:
        raise ValueError("trees need at least two vertices")
    layer = [[(0, 1)]]
    for k in range(2, n):
        seen = {}
        for edges in layer:
            for grown in _extend(edges, k):
                code = canonical_tree_code(Multigraph.from_edges(k + 1, grown))
                seen.setdefault(code, grown)
        layer = [seen[c] for c in sorted(seen)]
    return [TreePattern(Multigraph.from_edges(n, e)) for e in layer]


def prufer_decode(seq, n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def prufer_trees(n: int):
    """All ``n ** (n - 2)`` labeled trees on ``n`` vertices."""
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def free_tree_codes_by_prufer(n: int) -> set[bytes]:
    return {canonical_tree_code(Multigraph.from_edges(n, e)) for e in prufer_trees(n)}
