"""Edge-connectivity, spanning-tree packing, out-degree orientations and
(m, l)-partition-connectivity with certificates in both directions.

A multigraph is (m, l)-partition-connected when its copies split into an
m-tree-connected factor and a factor with an orientation of out-degree at
least l everywhere. A factor has such an orientation iff it contains l
disjoint bicircular bases, so the decision reduces to a union of m graphic
and l bicircular matroids.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    Infeasible,
    InfeasibleWitness,
    InvalidParams,
    PreconditionViolated,
    SearchBudgetExceeded,
    TooFewVertices,
)
from .graph import BipartitionedGraph, Factor, Multigraph, Orientation
from .matroids import BICIRCULAR, GRAPHIC, MatroidPartition, is_independent, laminar_intersection

log = logging.getLogger(__name__)


def _pool(g: Multigraph, copies):
    return sorted(g.all_copies if copies is None else copies)


# -- edge connectivity ---------------------------------------------------


def edge_connectivity(g: Multigraph, copies=None) -> tuple[int, frozenset]:
    """Global minimum cut (Stoer-Wagner) with multiplicities as capacities.

    Returns the value and one side of a minimum cut. A disconnected graph
    gives 0 and the component of vertex 0.
    """
    n = g.vertex_count
    if n < 2:
        raise TooFewVertices("edge connectivity needs at least two vertices")
    comps = g.components(copies)
    if len(comps) > 1:
        return 0, frozenset(comps[0])
    w = [[0] * n for _ in range(n)]
    for i in _pool(g, copies):
        u, v = g.ends[i]
        w[u][v] += 1
        w[v][u] += 1
    groups = {v: [v] for v in range(n)}
    active = list(range(n))
    best, best_side = math.inf, None
    while len(active) > 1:
        start = active[0]
        weight = {v: w[start][v] for v in active if v != start}
        order = [start]
        phase_cut = 0
        while weight:
            z = max(weight, key=lambda v: (weight[v], -v))
            phase_cut = weight.pop(z)
            for v in weight:
                weight[v] += w[z][v]
            order.append(z)
        s, t = order[-2], order[-1]
        if phase_cut < best:
            best, best_side = phase_cut, frozenset(groups[t])
        for v in active:
            w[s][v] += w[t][v]
            w[v][s] = w[s][v]
        w[s][s] = 0
        groups[s].extend(groups.pop(t))
        active.remove(t)
    return best, best_side


# -- spanning tree packing -----------------------------------------------


@dataclass(frozen=True)
class PartitionObstruction:
    """Vertex partition certifying that a union of matroids is too small.

    ``closed`` is a set of copies with every part spanned inside it;
    ``partition`` lists the components of ``closed``. ``achieved`` is the
    largest possible union size, ``required`` the size a positive answer
    needs.
    """

    partition: list
    closed: frozenset
    cross: int
    achieved: int
    required: int


def _obstruction(g, pool, mp, uncovered, m, l):
    closed = mp.closure_of(uncovered)
    comps = g.components(closed)
    n = g.vertex_count
    acyclic = 0
    comp_of = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = idx
    edges_in = [0] * len(comps)
    for i in closed:
        edges_in[comp_of[g.ends[i][0]]] += 1
    acyclic = sum(1 for c, e in zip(comps, edges_in) if e < len(c))
    achieved = len(pool) - len(closed) + m * (n - len(comps)) + l * (n - acyclic)
    cross = sum(1 for i in pool if comp_of[g.ends[i][0]] != comp_of[g.ends[i][1]])
    return PartitionObstruction(comps, frozenset(closed), cross, achieved, m * (n - 1) + l * n)


def spanning_tree_packing(g: Multigraph, m: int, copies=None) -> list[Factor]:
    """``m`` edge-disjoint spanning trees, or :class:`Infeasible` carrying a
    partition ``P`` with fewer than ``m(|P|-1)`` crossing copies."""
    if m < 1:
        raise InvalidParams("m must be positive")
    pool = _pool(g, copies)
    mp = MatroidPartition(g.vertex_count, g.ends, [GRAPHIC] * m)
    uncovered = mp.run(pool)
    if mp.saturated:
        return [Factor(g, frozenset(s)) for s in mp.sets]
    obs = _obstruction(g, pool, mp, uncovered, m, 0)
    raise Infeasible(
        f"no {m} disjoint spanning trees: {obs.cross} copies cross a "
        f"{len(obs.partition)}-part partition, need {m * (len(obs.partition) - 1)}",
        obs,
    )


# -- orientations --------------------------------------------------------


def min_outdegree_orientation(f: Factor, l: int) -> Orientation:
    """Orientation of ``f`` with every out-degree at least ``l``.

    Raises :class:`Infeasible` with a vertex set ``A`` whose incident copies
    number fewer than ``l*|A|``.
    """
    g = f.host
    n = g.vertex_count
    tails = {}
    out = [0] * n
    for i in sorted(f.copies):
        u, v = g.ends[i]
        t = u if out[u] <= out[v] else v
        tails[i] = t
        out[t] += 1
    for v in range(n):
        while out[v] < l:
            # copies entering each vertex under the current orientation
            into = [[] for _ in range(n)]
            for i, t in tails.items():
                a, b = g.ends[i]
                into[b if t == a else a].append(i)
            pred = {v: None}
            queue = deque([v])
            donor = None
            while queue and donor is None:
                x = queue.popleft()
                for i in into[x]:
                    w = tails[i]
                    if w not in pred:
                        pred[w] = i
                        if out[w] > l:
                            donor = w
                            break
                        queue.append(w)
            if donor is None:
                deficient = frozenset(pred)
                raise Infeasible(
                    f"vertex set of size {len(deficient)} has fewer than "
                    f"{l * len(deficient)} incident copies",
                    deficient,
                )
            w = donor
            out[w] -= 1
            out[v] += 1
            while w != v:
                i = pred[w]
                a, b = g.ends[i]
                head = b if tails[i] == a else a
                tails[i] = head
                w = head
    return Orientation(f, tails)


def orient_bicircular_basis(g: Multigraph, basis) -> dict:
    """Give every vertex out-degree exactly one on a spanning bicircular
    basis: cycles oriented cyclically, pendant trees toward their cycle."""
    n = g.vertex_count
    adj = [[] for _ in range(n)]
    for i in sorted(basis):
        u, v = g.ends[i]
        adj[u].append((v, i))
        adj[v].append((u, i))
    deg = [len(a) for a in adj]
    tails = {}
    queue = deque(v for v in range(n) if deg[v] == 1)
    while queue:
        w = queue.popleft()
        if deg[w] != 1:
            continue
        for z, i in adj[w]:
            if i not in tails:
                tails[i] = w
                deg[w] -= 1
                deg[z] -= 1
                if deg[z] == 1:
                    queue.append(z)
                break
    for s in range(n):
        x = s
        while True:
            step = next(((z, i) for z, i in adj[x] if i not in tails), None)
            if step is None:
                break
            z, i = step
            tails[i] = x
            x = z
    return tails


# -- partition connectivity ------------------------------------------------


@dataclass(frozen=True)
class PartitionConnectivityCertificate:
    host: Multigraph
    m: int
    l: int
    trees: tuple
    bicircular: tuple
    oriented: Orientation
    leftover: Factor = field(default=None)

    @property
    def factor(self) -> Factor:
        """The certified factor: trees, oriented part and leftover."""
        parts = list(self.trees) + [self.oriented.factor]
        if self.leftover is not None:
            parts.append(self.leftover)
        return parts[0].union(*parts[1:]) if parts else Factor(self.host)

    def problems(self) -> list[str]:
        """Independent re-check of every invariant; empty when valid."""
        g = self.host
        n = g.vertex_count
        issues = []
        if len(self.trees) != self.m:
            issues.append(f"expected {self.m} trees, got {len(self.trees)}")
        used = set()
        for k, t in enumerate(self.trees):
            if t.host != g:
                issues.append(f"tree {k} on a different host")
                continue
            if used & t.copies:
                issues.append(f"tree {k} overlaps an earlier tree")
            used |= t.copies
            if len(t.copies) != n - 1 or not is_independent(GRAPHIC, n, g.ends, t.copies):
                issues.append(f"tree {k} is not a spanning tree")
        of = self.oriented.factor
        if used & of.copies:
            issues.append("oriented factor meets a tree")
        low = [v for v, d in enumerate(self.oriented.out_degrees()) if d < self.l]
        if low:
            issues.append(f"vertex {low[0]} has out-degree below {self.l}")
        if self.leftover is not None and (self.leftover.copies & (used | of.copies)):
            issues.append("leftover overlaps the certificate")
        return issues

    def to_json(self) -> dict:
        g = self.host
        of = self.oriented.factor
        order = sorted(of.copies)
        doc = {
            "trees": [t.copy_ids() for t in self.trees],
            "oriented": {
                "copies": [list(g.copy_id(i)) for i in order],
                "tails": [self.oriented.tails[i] for i in order],
            },
            "m": self.m,
            "l": self.l,
        }
        if self.leftover is not None:
            doc["leftover"] = self.leftover.copy_ids()
        return doc

    @classmethod
    def from_json(cls, g: Multigraph, doc: dict) -> PartitionConnectivityCertificate:
        trees = tuple(Factor(g, frozenset(g.copy_index(c) for c in t)) for t in doc["trees"])
        ocopies = [g.copy_index(c) for c in doc["oriented"]["copies"]]
        tails = dict(zip(ocopies, doc["oriented"]["tails"]))
        oriented = Orientation(Factor(g, frozenset(ocopies)), tails)
        left = doc.get("leftover")
        leftover = Factor(g, frozenset(g.copy_index(c) for c in left)) if left is not None else None
        return cls(g, doc["m"], doc["l"], trees, (), oriented, leftover)


def _certificate(g, m, l, trees, bases, pool) -> PartitionConnectivityCertificate:
    tails = {}
    for b in bases:
        tails.update(orient_bicircular_basis(g, b))
    oriented = Orientation(Factor(g, frozenset(tails)), tails)
    used = set(tails)
    for t in trees:
        used |= t
    leftover = Factor(g, frozenset(pool) - used)
    return PartitionConnectivityCertificate(
        g, m, l,
        tuple(Factor(g, frozenset(t)) for t in trees),
        tuple(Factor(g, frozenset(b)) for b in bases),
        oriented, leftover,
    )


def partition_connected_decompose(g: Multigraph, m: int, l: int, copies=None,
                                  mode: str = "exact") -> PartitionConnectivityCertificate:
    """Certificate of (m, l)-partition-connectivity of ``g`` (or of the
    factor given by ``copies``).

    Exact mode is a complete decision; on failure :class:`Infeasible` carries
    a :class:`PartitionObstruction`. Heuristic mode packs trees first and
    orients the rest, raising :class:`SearchBudgetExceeded` when that
    greedy split does not work out.
    """
    if m < 0 or l < 0:
        raise InvalidParams("m and l must be nonnegative")
    n = g.vertex_count
    pool = _pool(g, copies)
    if mode == "heuristic":
        return _heuristic_decompose(g, m, l, pool)
    if mode != "exact":
        raise InvalidParams(f"unknown mode {mode!r}")
    kinds = [GRAPHIC] * m + [BICIRCULAR] * l
    mp = MatroidPartition(n, g.ends, kinds)
    uncovered = mp.run(pool)
    if mp.saturated:
        return _certificate(g, m, l, mp.sets[:m], mp.sets[m:], pool)
    obs = _obstruction(g, pool, mp, uncovered, m, l)
    raise Infeasible(
        f"not ({m}, {l})-partition-connected: union of bases has size at most "
        f"{obs.achieved} < {obs.required}",
        obs,
    )


def _heuristic_decompose(g, m, l, pool):
    trees = spanning_tree_packing(g, m, pool) if m else []
    used = set()
    for t in trees:
        used |= t.copies
    rest = Factor(g, frozenset(pool) - used)
    try:
        orient = min_outdegree_orientation(rest, l)
    except Infeasible:
        raise SearchBudgetExceeded(
            "heuristic split failed; rerun in exact mode") from None
    # l out-copies per vertex, labelled 0..l-1, give l bicircular bases
    per_vertex: dict[int, list[int]] = {}
    for i in sorted(orient.tails):
        per_vertex.setdefault(orient.tails[i], []).append(i)
    bases = [set() for _ in range(l)]
    for v, outs in per_vertex.items():
        for k, i in enumerate(outs[:l]):
            bases[k].add(i)
    return _certificate(g, m, l, [t.copies for t in trees], bases, pool)


def is_partition_connected(g: Multigraph, m: int, l: int, copies=None) -> bool:
    try:
        partition_connected_decompose(g, m, l, copies)
    except Infeasible:
        return False
    return True


def _ceil_div(a: int, eps: Fraction) -> int:
    return math.ceil(Fraction(a) / eps)


def capped_partition_connected_factor(g: Multigraph, xs, m: int, l: int, eps,
                                      copies=None, check_pre: bool = True):
    """An (m, l)-partition-connected factor ``H`` with
    ``d_H(v) <= ceil(eps * d_G(v))`` on the independent set ``xs``.

    The factor is found as a maximum common independent set of the union
    matroid and the capacity constraints, so a shortfall means no such
    factor exists at all. Returns ``(H, certificate)``.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InvalidParams("epsilon must lie in (0, 1]")
    pool = _pool(g, copies)
    xs = set(xs)
    n = g.vertex_count
    for i in pool:
        u, v = g.ends[i]
        if u in xs and v in xs:
            raise PreconditionViolated(f"X is not independent: copy {list(g.copy_id(i))}")
    if check_pre:
        big_m, big_l = _ceil_div(m, eps), _ceil_div(l, eps)
        try:
            partition_connected_decompose(g, big_m, big_l, pool)
        except Infeasible as exc:
            raise PreconditionViolated(
                f"host is not ({big_m}, {big_l})-partition-connected") from exc
    deg = g.degrees(pool)
    caps = {v: math.ceil(eps * deg[v]) for v in xs}
    cap_vertex = {}
    for i in pool:
        u, v = g.ends[i]
        cap_vertex[i] = u if u in xs else (v if v in xs else None)
    kinds = [GRAPHIC] * m + [BICIRCULAR] * l
    sets = laminar_intersection(n, g.ends, kinds, pool, cap_vertex, caps)
    target = m * (n - 1) + l * n
    if sum(map(len, sets)) < target:
        log.warning("capped factor search fell short on %r (m=%d, l=%d, eps=%s)", g, m, l, eps)
        raise InfeasibleWitness(
            f"no ({m}, {l})-partition-connected factor meets the degree caps",
            stage="capped_factor")
    h = frozenset().union(*sets) if sets else frozenset()
    cert = _certificate(g, m, l, sets[:m], sets[m:], h)
    return Factor(g, h), cert


def bipartite_partition_connected_factor(g: Multigraph, m: int, l: int, seed: int = 0,
                                         check_pre: bool = True, budget: int = 2000,
                                         exhaustive_limit: int = 12):
    """A bipartition whose crossing copies form an (m, l)-partition-connected
    factor.

    Local search over vertex flips (maximizing the matroid-union size, then
    the cut size) with random restarts, then exhaustive enumeration for
    small vertex counts. Returns ``(bipartitioned graph, crossing factor,
    certificate)``; vertex 0 is always on side X.
    """
    n = g.vertex_count
    if check_pre:
        try:
            partition_connected_decompose(g, 2 * m, 2 * l)
        except Infeasible as exc:
            raise PreconditionViolated(f"host is not ({2 * m}, {2 * l})-partition-connected") from exc
    kinds = [GRAPHIC] * m + [BICIRCULAR] * l
    target = m * (n - 1) + l * n
    evaluations = 0

    def score(side):
        nonlocal evaluations
        evaluations += 1
        cross = [i for i, (u, v) in enumerate(g.ends) if side[u] != side[v]]
        mp = MatroidPartition(n, g.ends, kinds)
        mp.run(cross)
        return sum(map(len, mp.sets)), len(cross)

    def finish(side):
        if side[0] != 0:
            side = [1 - s for s in side]
        bg = BipartitionedGraph(g, tuple(side))
        cross = bg.crossing_copies()
        cert = partition_connected_decompose(g, m, l, cross)
        return bg, Factor(g, cross), cert

    def climb(side):
        best = score(side)
        improved = True
        # keep flipping after the target is met: a larger cut leaves fewer
        # copies inside the colour classes for later stages to cover
        while improved and evaluations < budget:
            improved = False
            for v in range(n):
                side[v] ^= 1
                s = score(side)
                if s > best:
                    best, improved = s, True
                else:
                    side[v] ^= 1
        return best

    rng = random.Random(seed)
    try:
        start = list(BipartitionedGraph.two_coloring(g).side)
    except InvalidParams:
        start = [0] * n
        for v in range(1, n):
            # greedy max-cut placement against already placed neighbours
            weight = [0, 0]
            for z, b in g.neighbors[v]:
                if z < v:
                    weight[start[z]] += g.bundles[b][2]
            start[v] = 1 if weight[0] >= weight[1] else 0
    side = start
    while evaluations < budget:
        if climb(side)[0] == target:
            return finish(side)
        side = [rng.randint(0, 1) for _ in range(n)]
    if n <= exhaustive_limit:
        for bits in product((0, 1), repeat=max(n - 1, 0)):
            side = [0, *bits]
            if score(side)[0] == target:
                return finish(side)
        raise InfeasibleWitness(
            f"no bipartition has an ({m}, {l})-partition-connected crossing factor",
            stage="bipartite_factor")
    raise InfeasibleWitness("bipartition search budget exhausted", stage="bipartite_factor")


@dataclass(frozen=True)
class GuaranteedBound:
    lam: int
    l: int


def partition_conn_lower_bound(lambda_edge: int, min_degree: int) -> GuaranteedBound:
    """Largest (lambda, l) guaranteed by a 2*lambda-edge-connected multigraph
    with minimum degree at least 2*lambda + 2*l; lambda is maximized first."""
    if lambda_edge < 0 or min_degree < 0:
        raise InvalidParams("inputs must be nonnegative")
    lam = min(lambda_edge // 2, min_degree // 2)
    return GuaranteedBound(lam, (min_degree - 2 * lam) // 2)
