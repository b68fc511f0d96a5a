"""Complete backtracking search for T-edge-decompositions.

The search always extends the copy of T that contains the least unused edge
copy, so a ``None`` answer is a proof that no decomposition exists. Parallel
copies are interchangeable; only bundle multiplicities matter to the state.
"""

from __future__ import annotations

from ..budget import default_budget
from ..certificate import DecompositionCertificate
from ..errors import SearchBudgetExceeded, SizeCapExceeded
from ..graph import Multigraph, TreePattern

DEFAULT_CAP = 96


def _bfs_order(t: TreePattern, root_edge):
    """Pattern vertices in BFS order from the root edge, with parents."""
    a, b = root_edge
    order = [(a, -1), (b, a)]
    seen = {a, b}
    i = 0
    while i < len(order):
        v = order[i][0]
        for w in t.adjacency[v]:
            if w not in seen:
                seen.add(w)
                order.append((w, v))
        i += 1
    return order


def _placements(g: Multigraph, t: TreePattern, remaining, u, v, allowed=None):
    """Every distinct way to embed ``t`` in the remaining multigraph using the
    bundle ``{u, v}``. Yields ``(embedding, bundles)`` with ``bundles``
    sorted; placements with the same bundle set are reported once."""
    nbrs = g.neighbors
    found = set()
    for a, b in t.edges:
        for x, y in ((a, b), (b, a)):
            order = _bfs_order(t, (x, y))
            emb = [-1] * t.vertex_count
            emb[x], emb[y] = u, v
            used_v = {u, v}
            root_bundle = g.find_bundle(u, v)
            used_b = [root_bundle]

            def rec(i):
                if i == len(order):
                    key = tuple(sorted(used_b))
                    if key not in found:
                        found.add(key)
                        yield tuple(emb), key
                    return
                c, p = order[i]
                hp = emb[p]
                for w, bnd in nbrs[hp]:
                    if remaining[bnd] == 0 or w in used_v:
                        continue
                    if allowed is not None and not allowed(c, w):
                        continue
                    emb[c] = w
                    used_v.add(w)
                    used_b.append(bnd)
                    yield from rec(i + 1)
                    used_b.pop()
                    used_v.discard(w)
                    emb[c] = -1

            if allowed is not None and not (allowed(x, u) and allowed(y, v)):
                continue
            yield from rec(2)


def _feasible(g: Multigraph, remaining, m: int) -> bool:
    # each component of what is left must carry a multiple of m copies
    n = g.vertex_count
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, v, _), r in zip(g.bundles, remaining):
        if r:
            parent[find(u)] = find(v)
    load: dict[int, int] = {}
    for (u, _, _), r in zip(g.bundles, remaining):
        if r:
            root = find(u)
            load[root] = load.get(root, 0) + r
    return all(c % m == 0 for c in load.values())


def exact_t_decomposition(g: Multigraph, t: TreePattern, cap: int = DEFAULT_CAP,
                          budget: int | None = None, allowed=None):
    """Certificate of a decomposition of ``g`` into copies of ``t``, or
    ``None`` when none exists.

    ``allowed(pattern_vertex, host_vertex)`` optionally restricts where each
    pattern vertex may land; ``None`` is then only a proof relative to that
    restriction.
    """
    m = t.m
    if g.copy_count % m:
        return None
    if g.copy_count > cap:
        raise SizeCapExceeded(f"{g.copy_count} edge copies exceed the exact-solver cap {cap}")
    if g.copy_count == 0:
        return DecompositionCertificate.build(g, t, [], [{"stage": "exact", "copies": 0}])
    budget = default_budget() if budget is None else budget
    mults = tuple(mult for _, _, mult in g.bundles)
    dead: set[tuple] = set()
    chosen: list[tuple] = []
    nodes = 0

    def rec(remaining):
        nonlocal nodes
        first = next((b for b, r in enumerate(remaining) if r), None)
        if first is None:
            return True
        if remaining in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"exact decomposition exceeded {budget} nodes")
        u, v, _ = g.bundles[first]
        rem = list(remaining)
        for emb, bundles in _placements(g, t, rem, u, v, allowed):
            nxt = list(remaining)
            for b in bundles:
                nxt[b] -= 1
            nxt = tuple(nxt)
            if not _feasible(g, nxt, m):
                continue
            chosen.append((emb, bundles, remaining))
            if rec(nxt):
                return True
            chosen.pop()
        dead.add(remaining)
        return False

    if not rec(mults):
        return None
    pieces = []
    for emb, bundles, remaining in chosen:
        # lowest unused copy of each bundle at the moment the piece was placed
        edges = [g.bundle_copies(b)[mults[b] - remaining[b]] for b in bundles]
        pieces.append((emb, edges))
    return DecompositionCertificate.build(
        g, t, pieces, [{"stage": "exact", "copies": len(pieces), "nodes": nodes}])
