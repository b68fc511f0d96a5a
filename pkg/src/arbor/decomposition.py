"""Tree-decomposition pipelines and the bounds calculator.

The constructions follow the bipartite and simple-graph arguments: a
divisibility split, equitable factorizations, covering the edges inside
each colour class by greedy tree embeddings, and a final per-half
assembly. The last step (turning an equitable factorization into copies
of T) relies on a result proved elsewhere; here it is carried out by the
exact solver and recorded in the certificate's provenance.

The paper-scale constants (minimum degrees around ``m * 10**(50m)``) are far
beyond anything runnable, so every pipeline also accepts explicit relaxed
thresholds ``conn`` / ``outdeg``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .budget import default_budget
from .certificate import DecompositionCertificate
from .connectivity import (
    bipartite_partition_connected_factor,
    capped_partition_connected_factor,
    partition_connected_decompose,
)
from .errors import (
    Infeasible,
    InfeasibleWitness,
    InternalError,
    InvalidParams,
    PreconditionViolated,
    SearchBudgetExceeded,
    SizeCapExceeded,
)
from .factors import (
    DegreePlan,
    FactorSystem,
    hoffman_factor,
    multi_modulo_decompose,
    nested_factor_chain,
    semi_regular_split,
)
from .graph import X, Y, BipartitionedGraph, Factor, Multigraph, TreePattern, path_pattern
from .oracle.exact import DEFAULT_CAP, exact_t_decomposition
from .oracle.verify import verify_decomposition

log = logging.getLogger(__name__)


# -- leaf-partite selection ----------------------------------------------------


def _side_ok(m: int, degrees) -> bool:
    top = max(degrees, default=1)
    return m - sum(degrees) >= top - 1


def leaf_partite_select(t: TreePattern) -> tuple[str, list[int]]:
    """A partite set whose non-leaf degrees satisfy
    ``m - sum(m_i) >= max(m_i) - 1`` (``max`` of nothing is 1). When both
    sides qualify the one with fewer non-leaf vertices wins, ties to A."""
    options = []
    for part in ("A", "B"):
        degs = t.nonleaf_degrees(part)
        if _side_ok(t.m, degs):
            options.append((len(degs), part, degs))
    if not options:
        raise InternalError(f"no partite set of the tree qualifies (m={t.m})")
    _, part, degs = min(options)
    return part, degs


def leaf_count_bound(t: TreePattern) -> int:
    """``max m'_i + max m_i - 2`` over the two partite sets."""
    return max(t.nonleaf_degrees("A"), default=1) + max(t.nonleaf_degrees("B"), default=1) - 2


# -- helpers ---------------------------------------------------------------------


def _require_pc(g: Multigraph, m: int, l: int, copies=None, what="host"):
    """Raise PreconditionViolated unless (m, l)-partition-connected. Hopeless
    counts are rejected before the matroid machinery sees them."""
    n = g.vertex_count
    size = g.copy_count if copies is None else len(copies)
    if m * max(n - 1, 0) + l * n > size:
        raise PreconditionViolated(
            f"{what} has {size} edge copies; ({m}, {l})-partition-connectivity needs "
            f"{m * max(n - 1, 0) + l * n}")
    try:
        return partition_connected_decompose(g, m, l, copies)
    except Infeasible as exc:
        raise PreconditionViolated(f"{what} is not ({m}, {l})-partition-connected") from exc


def _check_degrees(m: int, degrees, strict_b=True):
    degrees = list(degrees)
    if strict_b and not degrees:
        raise PreconditionViolated("need at least one non-leaf degree")
    if degrees != sorted(degrees):
        raise PreconditionViolated("non-leaf degrees must be sorted ascending")
    if any(d < 2 for d in degrees):
        raise PreconditionViolated("non-leaf degrees must be at least 2")
    return degrees


def _check_divisible(g: BipartitionedGraph, m: int, copies=None):
    deg = g.graph.degrees(copies)
    for v in g.xs:
        if deg[v] % m:
            raise PreconditionViolated(f"degree {deg[v]} of X-vertex {v} is not divisible by {m}")
    return deg


def _union(factors) -> frozenset:
    out = set()
    for f in factors:
        out |= f.copies
    return frozenset(out)


def factorization_problems(g: BipartitionedGraph, m: int, degrees, parts, min_degree=0) -> list[str]:
    """Every violated clause of an equitable factorization."""
    gr = g.graph
    issues = []
    if _union(parts) != gr.all_copies or sum(map(len, parts)) != gr.copy_count:
        issues.append("factors do not partition the edge copies")
    dG = gr.degrees()
    degs = [p.degrees() for p in parts]
    for i, mi in enumerate(degrees, start=1):
        for v in range(gr.vertex_count):
            d = degs[i][v]
            if g.side[v] == X and d * m != mi * dG[v]:
                issues.append(f"d_G{i}({v}) = {d}, expected {mi}/{m} of {dG[v]}")
            if g.side[v] == Y and d % mi:
                issues.append(f"d_G{i}({v}) = {d} not divisible by {mi}")
    for i, dg in enumerate(degs):
        if min(dg, default=0) < min_degree:
            issues.append(f"G_{i} has minimum degree {min(dg)} < {min_degree}")
    return issues


# -- equitable factorizations ------------------------------------------------------


def equitable_factorization(g: BipartitionedGraph, m: int, degrees, l: int = 0, *,
                            strict: bool = True, check_pre: bool = True,
                            budget=None) -> list[Factor]:
    """Factors ``G_0..G_b`` with ``d_{G_i} = (m_i/m) d_G`` on X, ``m_i | d_{G_i}``
    on Y and minimum degree at least ``l``.

    Strict mode follows the construction from a ``(3mb, m^2 l)``-partition-
    connected host: ``b`` disjoint ``(3m, ml)``-partition-connected pieces
    ``H_i``, a degree-capped connector ``T_i`` inside each, then the
    inductive multi-factor engine. Relaxed mode drops the connectors (and
    the connectivity precondition) and relies on the complete congruence
    search alone.
    """
    gr = g.graph
    degrees = _check_degrees(m, degrees)
    b = len(degrees)
    if m - sum(degrees) < degrees[-1] - 1:
        raise PreconditionViolated(f"m - sum(m_i) = {m - sum(degrees)} < max(m_i) - 1")
    if not g.is_strict:
        raise PreconditionViolated("host must be strictly bipartite")
    dG = _check_divisible(g, m)
    empty = Factor(gr)
    if strict:
        if check_pre:
            cert = _require_pc(gr, 3 * m * b, m * m * l)
        else:
            try:
                cert = partition_connected_decompose(gr, 3 * m * b, m * m * l)
            except Infeasible as exc:
                raise InfeasibleWitness("host lacks the reserved connector pieces",
                                        stage="equitable_factorization") from exc
        connectors = []
        for i, mi in enumerate(degrees):
            piece = list(cert.trees[3 * m * i:3 * m * (i + 1)])
            piece += list(cert.bicircular[m * l * i:m * l * (i + 1)])
            h_i = _union(piece)
            try:
                t_i, _ = capped_partition_connected_factor(
                    gr, g.xs, 3 * mi - 3, 2 * l, Fraction(mi - 1, m), copies=h_i, check_pre=False)
            except InfeasibleWitness as exc:
                raise InfeasibleWitness(f"connector T_{i + 1}: {exc}",
                                        stage="equitable_factorization") from exc
            connectors.append(t_i)
    else:
        connectors = [empty] * b
    plan = DegreePlan(
        tuple(degrees),
        tuple(tuple(mi * dG[v] // m if g.side[v] == X else 0 for v in range(gr.vertex_count))
              for mi in degrees),
    )
    system = FactorSystem(tuple([empty] * (b + 1)), tuple(connectors))
    try:
        parts = multi_modulo_decompose(g, plan, system, check_pre=False, min_degree=l,
                                       budget=budget)
    except PreconditionViolated as exc:
        raise InfeasibleWitness(str(exc), stage="equitable_factorization") from exc
    problems = factorization_problems(g, m, degrees, parts, l)
    if problems:
        raise InternalError(f"equitable factorization: {problems[0]}")
    return parts


def partition_connected_equitable_factorization(g: BipartitionedGraph, m: int, degrees,
                                                lam: int, l: int, *, check_pre: bool = True,
                                                budget=None):
    """As :func:`equitable_factorization` with every ``G_i`` additionally
    (lam, l)-partition-connected. Returns ``(factors, certificates)``.

    A capped factor ``G'`` with ``d_{G'} <= d_G / m`` on X supplies reserved
    pieces ``F_0..F_b`` (lam trees and l bicircular bases each) and
    connectors ``T_i`` (``3 m_i - 3`` trees each).
    """
    gr = g.graph
    degrees = _check_degrees(m, degrees)
    b = len(degrees)
    if m - sum(degrees) <= 0:
        raise PreconditionViolated(f"m - sum(m_i) = {m - sum(degrees)} must be positive")
    if not g.is_strict:
        raise PreconditionViolated("host must be strictly bipartite")
    dG = _check_divisible(g, m)
    if check_pre:
        _require_pc(gr, 3 * m * m + m * m * lam, m * m * l)
    _, cert = capped_partition_connected_factor(
        gr, g.xs, 3 * m + m * lam, m * l, Fraction(1, m), check_pre=False)
    trees, bic = list(cert.trees), list(cert.bicircular)
    reserved = []
    for i in range(b + 1):
        reserved.append(Factor(gr, _union(trees[lam * i:lam * (i + 1)] + bic[l * i:l * (i + 1)])))
    pos = lam * (b + 1)
    connectors = []
    for mi in degrees:
        connectors.append(Factor(gr, _union(trees[pos:pos + 3 * mi - 3])))
        pos += 3 * mi - 3
    plan = DegreePlan(
        tuple(degrees),
        tuple(tuple(mi * dG[v] // m if g.side[v] == X else 0 for v in range(gr.vertex_count))
              for mi in degrees),
    )
    try:
        parts = multi_modulo_decompose(g, plan, FactorSystem(tuple(reserved), tuple(connectors)),
                                       check_pre=False, budget=budget)
    except PreconditionViolated as exc:
        raise InfeasibleWitness(str(exc), stage="pc_equitable_factorization") from exc
    problems = factorization_problems(g, m, degrees, parts)
    if problems:
        raise InternalError(f"equitable factorization: {problems[0]}")
    certs = []
    for i, p in enumerate(parts):
        try:
            certs.append(partition_connected_decompose(gr, lam, l, p.copies))
        except Infeasible as exc:
            raise InternalError(f"G_{i} is not ({lam}, {l})-partition-connected") from exc
    return parts, certs


# -- stars ------------------------------------------------------------------------------


def star_decompose(g: BipartitionedGraph, m: int, t: TreePattern | None = None,
                   copies=None) -> DecompositionCertificate:
    """Stars ``K_{1,m}`` centred on X: the copies at each X-vertex are dealt
    round-robin into ``d/m`` groups, so parallel copies land in different
    stars."""
    gr = g.graph
    t = t or _star(m)
    if not t.is_star or t.m != m:
        raise PreconditionViolated("pattern must be the star K_{1,%d}" % m)
    pool = gr.all_copies if copies is None else frozenset(copies)
    center = t.degree_list.index(m) if m > 1 else 0
    leaves = [v for v in range(t.vertex_count) if v != center]
    deg = gr.degrees(pool)
    pieces = []
    for x in range(gr.vertex_count):
        inc = [i for i in gr.incidence[x] if i in pool]
        if not inc:
            continue
        if g.side[x] != X:
            if any(g.side[u] == g.side[v] for u, v in (gr.ends[i] for i in inc)):
                raise PreconditionViolated("host must be strictly bipartite")
            continue
        if deg[x] % m:
            raise PreconditionViolated(f"degree {deg[x]} of X-vertex {x} is not divisible by {m}")
        q = deg[x] // m
        per_bundle: dict[int, int] = {}
        for i in inc:
            per_bundle[gr.bundle_of[i]] = per_bundle.get(gr.bundle_of[i], 0) + 1
        if max(per_bundle.values()) > q:
            raise PreconditionViolated(
                f"X-vertex {x} has a bundle of multiplicity above {q}; no star decomposition")
        groups = [inc[c::q] for c in range(q)]
        for grp in groups:
            emb = [0] * t.vertex_count
            emb[center] = x
            for leaf, i in zip(leaves, grp):
                u, v = gr.ends[i]
                emb[leaf] = v if u == x else u
            pieces.append((tuple(emb), grp))
    return DecompositionCertificate.build(gr, t, pieces, [{"stage": "star_decompose",
                                                          "copies": len(pieces)}])


def _star(m: int) -> TreePattern:
    return TreePattern(Multigraph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)]))


# -- covering the inside of a colour class ----------------------------------------------


def _bfs_levels(t: TreePattern, a: int, b: int):
    order = [(a, -1, 0), (b, a, 0)]
    seen = {a, b}
    i = 0
    while i < len(order):
        v, _, depth = order[i]
        for w in t.adjacency[v]:
            if w not in seen:
                seen.add(w)
                order.append((w, v, depth + 1))
        i += 1
    return order


def check_chain(chain, m: int) -> list[str]:
    issues = []
    for i in range(len(chain) - 1):
        if not chain[i + 1].copies <= chain[i].copies:
            issues.append(f"H_{i + 2} is not inside H_{i + 1}")
        hi, lo = chain[i].degrees(), chain[i + 1].degrees()
        for v, (a, c) in enumerate(zip(hi, lo)):
            if m * c > a:
                issues.append(f"d_H{i + 2}({v}) = {c} exceeds d_H{i + 1}({v})/{m}")
                break
    if chain and min(chain[-1].degrees(), default=0) < m ** 3:
        issues.append(f"minimum degree of H_{len(chain)} is below {m ** 3}")
    return issues


def barat_gerbner_cover(g: BipartitionedGraph, inside, chain, t: TreePattern, *,
                        check_pre: bool = True, node_budget: int = 5000):
    """Edge-disjoint copies of ``t`` in ``G[X] + H_1`` covering every copy in
    ``inside`` (edges with both ends in X).

    Inside edges are handled in ascending order of the residual H_1-degree of
    their ends; each becomes the root edge of a copy whose pattern edges at
    distance ``i`` from the root are drawn from ``H_i`` or from inside edges
    not yet covered (preferred, since they must be covered anyway). When
    that stalls the copy may draw everything from ``H_1`` (noted in the
    returned relaxation count). Returns ``(pieces, residual, relaxations)`` where
    ``pieces`` are ``(embedding, flat copies)`` pairs.
    """
    gr = g.graph
    m = t.m
    if len(chain) != m:
        raise InvalidParams(f"need a chain of {m} nested factors")
    inside = sorted(inside)
    for i in inside:
        u, v = gr.ends[i]
        if not g.side[u] == g.side[v] == X:
            raise PreconditionViolated(f"copy {list(gr.copy_id(i))} is not inside X")
    if check_pre:
        issues = check_chain(chain, m)
        if issues:
            raise PreconditionViolated(issues[0])
    levels = [set(c.copies) for c in chain]
    free = set(chain[0].copies)
    load = chain[0].degrees()
    ends = gr.ends
    order = sorted(inside, key=lambda i: (min(load[ends[i][0]], load[ends[i][1]]), i))
    open_inside = set(inside)
    pieces = []
    relaxations = 0

    def embed(root, a, b, relaxed):
        u, v = ends[root]
        plan = _bfs_levels(t, a, b)
        emb = [-1] * t.vertex_count
        emb[a], emb[b] = u, v
        taken = {u, v}
        picked = []
        nodes = 0

        def rec(k):
            nonlocal nodes
            if k == len(plan):
                return True
            nodes += 1
            if nodes > node_budget:
                return False
            c, p, depth = plan[k]
            pool = levels[0] if relaxed else levels[min(depth, m) - 1]
            hp = emb[p]
            cands = []
            for i in gr.incidence[hp]:
                if i in picked:
                    continue
                if i in open_inside:
                    rank = 0
                elif i in free and i in pool:
                    rank = 1
                else:
                    continue
                w = ends[i][1] if ends[i][0] == hp else ends[i][0]
                if w not in taken:
                    cands.append((rank, -load[w], i, w))
            cands.sort()
            seen_w = set()
            for _, _, i, w in cands:
                if w in seen_w:
                    continue
                seen_w.add(w)
                emb[c] = w
                taken.add(w)
                picked.append(i)
                if rec(k + 1):
                    return True
                picked.pop()
                taken.discard(w)
                emb[c] = -1
            return False

        if rec(2):
            return tuple(emb), [root] + picked
        return None

    for root in order:
        if root not in open_inside:
            continue
        open_inside.discard(root)
        found = None
        for relaxed in (False, True):
            for a, b in t.edges:
                for x, y in ((a, b), (b, a)):
                    found = embed(root, x, y, relaxed)
                    if found:
                        break
                if found:
                    break
            if found:
                relaxations += relaxed
                break
        if not found:
            log.warning("covering stalled at copy %s", gr.copy_id(root))
            raise InfeasibleWitness(
                f"no copy of the tree covers edge {list(gr.copy_id(root))}",
                stage="barat_gerbner_cover", detail=list(gr.copy_id(root)))
        emb, used = found
        for i in used[1:]:
            if i in open_inside:
                open_inside.discard(i)
                continue
            free.discard(i)
            for w in ends[i]:
                load[w] -= 1
        pieces.append((emb, used))
    residual = Factor(gr, frozenset(free))
    return pieces, residual, relaxations


# -- bipartite pipeline -------------------------------------------------------------------


def paper_bipartite_thresholds(t: TreePattern) -> tuple[int, int]:
    m = t.m
    _, degs = leaf_partite_select(t)
    b = len(degs)
    return 6 * m * b + 2 * m, 2 * m ** 3 * 10 ** (50 * m)


def paper_simple_thresholds(t: TreePattern) -> tuple[int, int]:
    m = t.m
    _, degs = leaf_partite_select(t)
    b = len(degs)
    return 12 * m * b + 4 * m, 2 * thm37_l(m)


def _assemble(half: BipartitionedGraph, t: TreePattern, part: str, cap, budget):
    """Exact decomposition of one half, first with the chosen partite set on
    Y, then unconstrained."""
    sel = t.parts[0 if part == "A" else 1]

    def roles(a, w):
        return half.side[w] == (Y if a in sel else X)

    for label, allowed in (("roles", roles), ("free", None)):
        try:
            cert = exact_t_decomposition(half.graph, t, cap=cap, budget=budget, allowed=allowed)
        except SearchBudgetExceeded as exc:
            raise InfeasibleWitness(str(exc), stage="assembly", detail="budget") from exc
        except SizeCapExceeded as exc:
            raise InfeasibleWitness(str(exc), stage="assembly", detail="size") from exc
        if cert is not None:
            return cert, label
    raise InfeasibleWitness("half admits no decomposition", stage="assembly")


def bipartite_t_decompose(g: BipartitionedGraph, t: TreePattern, *, conn=None, outdeg=None,
                          seed: int = 0, cap: int = DEFAULT_CAP,
                          budget=None) -> DecompositionCertificate:
    """Decompose a strictly bipartite host into copies of ``t``.

    Divisibility split into ``G_x`` / ``G_y``, an equitable factorization of
    each half (certificate-checked), then per-half assembly by the exact
    solver. ``conn`` / ``outdeg`` are the (lambda, l) partition-connectivity
    thresholds demanded of the host; by default the paper's values.
    """
    gr = g.graph
    m = t.m
    budget = default_budget() if budget is None else budget
    if not g.is_strict:
        raise PreconditionViolated("host must be strictly bipartite")
    if gr.copy_count % m:
        raise PreconditionViolated(f"|E| = {gr.copy_count} is not divisible by {m}")
    paper = conn is None and outdeg is None
    if paper:
        conn, outdeg = paper_bipartite_thresholds(t)
        if not gr.is_simple:
            raise PreconditionViolated("host must be simple")
    conn, outdeg = conn or 0, outdeg or 0
    _require_pc(gr, conn, outdeg)
    prov = [{"stage": "bipartite_t_decompose", "conn": conn, "outdeg": str(outdeg),
             "thresholds": "paper" if paper else "relaxed"}]
    lam_s, l_s = max(0, (conn - 2 * m) // 2), outdeg // 2
    try:
        g_x, g_y = semi_regular_split(g, m, lam_s, l_s, check_pre=False, budget=budget)
    except Infeasible as exc:
        raise InfeasibleWitness(str(exc), stage="semi_regular_split") from exc
    prov.append({"stage": "semi_regular_split", "lambda": lam_s, "l": str(l_s),
                 "sizes": [len(g_x), len(g_y)]})
    pieces = []
    if t.is_star:
        for half_g, which in ((g, g_x), (g.swapped(), g_y)):
            cert = star_decompose(half_g, m, t, which.copies)
            pieces += cert.flat_pieces(gr)
        prov.append({"stage": "star_decompose", "copies": len(pieces)})
        return _finish(gr, t, pieces, prov)
    part, degrees = leaf_partite_select(t)
    b = len(degrees)
    factor_l = l_s // (m * m)
    strict = lam_s >= 3 * m * b
    for name, oriented, which in (("G_x", g, g_x), ("G_y", g.swapped(), g_y)):
        if not which.copies:
            continue
        half, back = oriented.restrict(which.copies)
        parts = equitable_factorization(half, m, degrees, factor_l, strict=strict,
                                        check_pre=False, budget=budget)
        cert, how = _assemble(half, t, part, cap, budget)
        for emb, edges in cert.flat_pieces(half.graph):
            pieces.append((emb, [back[i] for i in edges]))
        prov.append({
            "stage": "equitable_factorization", "half": name, "mode": "strict" if strict else "relaxed",
            "degrees": degrees, "factor_sizes": [len(p) for p in parts], "min_degree": factor_l,
        })
        prov.append({"stage": "assembly", "half": name, "solver": "exact", "constraint": how,
                     "copies": len(cert)})
    return _finish(gr, t, pieces, prov)


def _finish(gr, t, pieces, prov) -> DecompositionCertificate:
    cert = DecompositionCertificate.build(gr, t, pieces, prov)
    verdict = verify_decomposition(gr, t, cert)
    if not verdict:
        raise InternalError(f"pipeline produced an invalid certificate: {verdict.reason}")
    return cert


# -- simple-graph pipeline ------------------------------------------------------------------


def simple_t_decompose(g: Multigraph, t: TreePattern, mode: str = "auto", *, conn=None,
                       outdeg=None, seed: int = 0, cap: int = DEFAULT_CAP,
                       budget=None) -> DecompositionCertificate:
    """Decompose ``g`` into copies of ``t``.

    ``exact`` runs the complete solver (``Infeasible`` means provably no
    decomposition). ``pipeline`` runs the constructive argument: a
    bipartite partition-connected factor, a Hoffman split of its spare part
    into ``H`` and ``H'``, nested chains, covering of ``G[X]`` and ``G[Y]``,
    and the bipartite pipeline on what remains. ``auto`` tries the pipeline
    and falls back to the exact solver.
    """
    m = t.m
    if mode not in ("pipeline", "exact", "auto"):
        raise InvalidParams(f"unknown mode {mode!r}")
    if mode == "exact":
        return _exact(g, t, cap, budget)
    if g.copy_count % m:
        if mode == "auto":
            return _exact(g, t, cap, budget)
        raise PreconditionViolated(f"|E| = {g.copy_count} is not divisible by {m}")
    try:
        return _pipeline(g, t, conn, outdeg, seed, cap, budget)
    except (InfeasibleWitness, PreconditionViolated, SearchBudgetExceeded) as exc:
        if mode == "pipeline":
            raise
        log.info("pipeline gave up (%s); falling back to the exact solver", exc)
        cert = _exact(g, t, cap, budget)
        return cert.with_provenance({"stage": "fallback", "reason": str(exc)})


def _exact(g, t, cap, budget):
    cert = exact_t_decomposition(g, t, cap=cap, budget=budget)
    if cert is None:
        raise Infeasible(f"no decomposition into copies of the {t.m}-edge tree exists",
                         obstruction={"reason": "exhaustive search", "copies": g.copy_count})
    verdict = verify_decomposition(g, t, cert)
    if not verdict:
        raise InternalError(f"exact solver produced an invalid certificate: {verdict.reason}")
    return cert


def _pipeline(g, t, conn, outdeg, seed, cap, budget):
    m = t.m
    paper = conn is None and outdeg is None
    if paper:
        conn, outdeg = paper_simple_thresholds(t)
        if not g.is_simple:
            raise PreconditionViolated("host must be simple")
    conn, outdeg = conn or 0, outdeg or 0
    _require_pc(g, conn, outdeg)
    lam_c, l_c = conn // 2, outdeg // 2
    bg, cross, cert = bipartite_partition_connected_factor(g, lam_c, l_c, seed=seed,
                                                           check_pre=False)
    prov = [{"stage": "bipartite_factor", "lambda": lam_c, "l": str(l_c),
             "x": bg.xs, "cross": len(cross)}]
    g0_l = l_c - 2 * (l_c // 4)
    g0 = _union(list(cert.trees) + list(cert.bicircular[:g0_l]))
    spare = cross.copies - g0
    h = hoffman_factor(bg, Fraction(1, 2), spare)
    h2 = Factor(g, spare - h.copies)
    pieces = []
    residual = set()
    for label, oriented, hh in (("G[X]", bg, h), ("G[Y]", bg.swapped(), h2)):
        inside = oriented.inside_copies(X)
        if not inside:
            residual |= hh.copies
            continue
        chain = nested_factor_chain(oriented, m, hh.copies)
        got, res, relaxed = barat_gerbner_cover(oriented, inside, chain, t, check_pre=paper)
        pieces += got
        residual |= res.copies
        prov.append({"stage": "barat_gerbner_cover", "side": label, "copies": len(got),
                     "relaxed_copies": relaxed})
    rest = g0 | residual
    sub, back = bg.restrict(rest)
    inner = bipartite_t_decompose(sub, t, conn=None if paper else lam_c,
                                  outdeg=None if paper else g0_l, seed=seed, cap=cap,
                                  budget=budget)
    for emb, edges in inner.flat_pieces(sub.graph):
        pieces.append((emb, [back[i] for i in edges]))
    return _finish(g, t, pieces, prov + list(inner.provenance))


# -- bounds -----------------------------------------------------------------------------


def merker_f(m: int, lam: int, k: int) -> int:
    def prod(lo):
        out = 1
        for j in range(lo, m + 1):
            out *= (4 * j) ** 2
        return out

    return lam * prod(2) + 24 * k * sum(i * prod(i + 1) for i in range(2, m + 1))


def thm37_l(m: int) -> int:
    return 2 * m ** 3 * 10 ** (50 * m) + 2 * m ** 3 * (m + 1) ** (m - 1)


@dataclass(frozen=True)
class BoundsReport:
    m: int
    lam: int
    k: int
    side: str
    degrees: tuple
    bt_exponential: int
    new_edge_conn: int
    new_min_degree: int
    merker_f: int
    new_f: int
    thm37_l: int
    bipartite_thresholds: tuple
    simple_thresholds: tuple
    corollary_partition: tuple

    def to_json(self) -> dict:
        s = str
        return {
            "m": self.m,
            "lambda": self.lam,
            "k": self.k,
            "partite_set": self.side,
            "nonleaf_degrees": list(self.degrees),
            "bt_exponential": s(self.bt_exponential),
            "bt_exponential_symbolic": f"{self.m}^{5 * self.m}",
            "new_edge_conn": s(self.new_edge_conn),
            "new_min_degree": s(self.new_min_degree),
            "new_min_degree_symbolic": f"{self.m}^{200 * self.m}",
            "merker_f": s(self.merker_f),
            "new_f": s(self.new_f),
            "thm37_l": s(self.thm37_l),
            "bipartite_thresholds": [s(v) for v in self.bipartite_thresholds],
            "simple_thresholds": [s(v) for v in self.simple_thresholds],
            "corollary_partition": [s(v) for v in self.corollary_partition],
        }


def bounds_report(t: TreePattern | int, lam: int = 0, k: int = 1) -> BoundsReport:
    """Closed-form thresholds for a tree of size ``m`` in exact integers."""
    if isinstance(t, int):
        t = path_pattern(t)
    if lam < 0 or k < 1:
        raise InvalidParams("lambda must be nonnegative and k positive")
    m = t.m
    side, degs = leaf_partite_select(t)
    f = merker_f(m, lam, k)
    if m >= 2 and not (lam + k) * m ** m <= f <= (lam + k) * m ** (4 * m):
        raise InternalError(f"sandwich bound fails for m={m}, lambda={lam}, k={k}")
    return BoundsReport(
        m=m, lam=lam, k=k, side=side, degrees=tuple(degs),
        bt_exponential=m ** (5 * m),
        new_edge_conn=50 * m * m,
        new_min_degree=m ** (200 * m),
        merker_f=f,
        new_f=m * m * (lam + 3),
        thm37_l=thm37_l(m),
        bipartite_thresholds=paper_bipartite_thresholds(t),
        simple_thresholds=paper_simple_thresholds(t),
        corollary_partition=(20 * m * m, m ** (199 * m)),
    )
