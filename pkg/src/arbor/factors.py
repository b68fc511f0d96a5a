"""Degree-constrained factors of bipartite multigraphs.

* Hoffman factors: every degree within 1 of a fixed fraction of the host
  degree.
* Modulo factors: exact degrees on X, prescribed residues on Y, with
  slack on both sides of Y relative to a connector factor.
* The inductive multi-factor engine peeling off one modulo factor at a
  time, and the divisibility split into two semi-regular halves.

Half-integer comparisons against ``d_T(v)/2`` are done on doubled integers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from ._flow import degree_constrained_subgraph
from .budget import default_budget
from .connectivity import edge_connectivity, partition_connected_decompose
from .errors import (
    Infeasible,
    InfeasibleWitness,
    InternalError,
    InvalidParams,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .graph import X, BipartitionedGraph, Factor

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreePlan:
    """Moduli ``k_1..k_b`` and per-vertex targets ``f_1..f_b``."""

    k: tuple
    f: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        object.__setattr__(self, "f", tuple(tuple(int(x) for x in row) for row in self.f))
        if len(self.k) != len(self.f):
            raise InvalidParams("plan needs one target function per modulus")
        if any(v < 1 for v in self.k):
            raise InvalidParams("moduli must be positive")

    @property
    def b(self) -> int:
        return len(self.k)

    def to_json(self) -> dict:
        return {"k": list(self.k), "f": [list(row) for row in self.f]}

    @classmethod
    def from_json(cls, doc: dict) -> DegreePlan:
        return cls(tuple(doc["k"]), tuple(tuple(r) for r in doc["f"]))


@dataclass(frozen=True)
class FactorSystem:
    """Reserved factors ``F_0..F_b`` and connectors ``T_1..T_b``."""

    reserved: tuple
    connectors: tuple


def _require_strict(g: BipartitionedGraph, copies=None):
    side = g.side
    ends = g.graph.ends
    pool = range(g.graph.copy_count) if copies is None else copies
    for i in pool:
        u, v = ends[i]
        if side[u] == side[v]:
            raise PreconditionViolated(
                f"copy {list(g.graph.copy_id(i))} does not cross the bipartition")


def _sum_congruent(g: BipartitionedGraph, f, k: int) -> bool:
    sx = sum(f[v] for v in g.xs)
    sy = sum(f[v] for v in g.ys)
    return (sy - sx) % k == 0


# -- Hoffman factors -------------------------------------------------------


def hoffman_factor(g: BipartitionedGraph, eps, copies=None, ceiling=None) -> Factor:
    """Factor ``F`` with ``|d_F(v) - eps * d_G(v)| < 1`` at every vertex.

    ``copies`` restricts the host to a factor. ``ceiling`` optionally gives
    preferred per-vertex upper bounds; they are dropped if they make the
    problem infeasible.
    """
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise InvalidParams("epsilon must lie in [0, 1]")
    gr = g.graph
    pool = gr.all_copies if copies is None else frozenset(copies)
    _require_strict(g, pool)
    deg = gr.degrees(pool)
    lo = [math.floor(eps * d) for d in deg]
    hi = [math.ceil(eps * d) for d in deg]
    chosen = None
    if ceiling is not None:
        tight = [max(a, min(b, c)) for a, b, c in zip(lo, hi, ceiling)]
        chosen = degree_constrained_subgraph(gr, g.side, pool, lo, tight)
    if chosen is None:
        chosen = degree_constrained_subgraph(gr, g.side, pool, lo, hi)
    if chosen is None:
        raise InternalError("Hoffman factor search failed on a valid instance")
    out = gr.degrees(chosen)
    for v, (a, d) in enumerate(zip(out, deg)):
        if abs(a - eps * d) >= 1:
            raise InternalError(f"Hoffman window violated at vertex {v}")
    return Factor(gr, chosen)


def nested_factor_chain(h: BipartitionedGraph, m: int, copies=None) -> list[Factor]:
    """``H_1 = h``, and ``H_{i+1}`` a Hoffman factor of ``H_i`` with
    ``eps = 1/(m+1)``, preferring degrees at most ``d_{H_i}(v)/m``."""
    if m < 1:
        raise InvalidParams("m must be positive")
    first = Factor(h.graph, h.graph.all_copies if copies is None else frozenset(copies))
    chain = [first]
    eps = Fraction(1, m + 1)
    for _ in range(m - 1):
        prev = chain[-1]
        ceiling = [d // m for d in prev.degrees()]
        chain.append(hoffman_factor(h, eps, prev.copies, ceiling))
    return chain


# -- congruence-constrained factor search ---------------------------------


def _allowed_values(lo, hi, q, r):
    start = lo + ((r - lo) % q)
    return list(range(start, hi + 1, q))


def congruence_factor_search(g: BipartitionedGraph, free, forced, allowed, budget=None):
    """Complete search for ``H = forced + S`` (``S`` drawn from ``free``) whose
    degree at every vertex lies in ``allowed[v] = (lo, hi, modulus, residue)``.

    Branch-and-bound: the interval relaxation is a bounded flow; a vertex
    whose relaxed degree misses its residue class is branched over its
    admissible exact values, nearest first. Returns the chosen free copies,
    ``None`` when no such factor exists, or raises
    :class:`SearchBudgetExceeded`.
    """
    gr = g.graph
    n = gr.vertex_count
    budget = default_budget() if budget is None else budget
    base = gr.degrees(forced)
    values = []
    for v in range(n):
        lo, hi, q, r = allowed[v]
        vals = _allowed_values(max(lo, base[v]), hi, q, r)
        if not vals:
            return None
        values.append(vals)
    fixed: dict[int, int] = {}
    nodes = 0

    def relax():
        lo = [0] * n
        hi = [0] * n
        for v in range(n):
            if v in fixed:
                lo[v] = hi[v] = fixed[v] - base[v]
            else:
                lo[v] = values[v][0] - base[v]
                hi[v] = values[v][-1] - base[v]
        return degree_constrained_subgraph(gr, g.side, free, lo, hi)

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"congruence search exceeded {budget} nodes")
        sol = relax()
        if sol is None:
            return None
        deg = gr.degrees(sol)
        for v in range(n):
            if v in fixed:
                continue
            d = deg[v] + base[v]
            lo, hi, q, r = allowed[v]
            if (d - r) % q:
                break
        else:
            return sol
        for d_v in sorted(values[v], key=lambda c: (abs(c - d), c)):
            fixed[v] = d_v
            found = rec()
            if found is not None:
                return found
            del fixed[v]
        return None

    return rec()


# -- modulo factors -------------------------------------------------------


def _check_disjoint(factors, names):
    seen = {}
    for name, fac in zip(names, factors):
        for i in fac.copies:
            if i in seen:
                raise PreconditionViolated(f"{name} and {seen[i]} share copy {list(fac.host.copy_id(i))}")
            seen[i] = name


def modulo_factor(g: BipartitionedGraph, f, k: int, F: Factor, F0: Factor, T: Factor, *,
                  check_pre: bool = True, min_y_degree: int = 0, min_y_residual: int = 0,
                  budget=None) -> Factor:
    """Factor ``H`` with ``F <= H``, ``H`` disjoint from ``F0``, ``d_H = f`` on
    X, and on Y ``d_H == f (mod k)`` with
    ``min(d_H - d_F, d_H0 - d_F0) > d_T/2 - k`` where ``H0`` is the
    complement.

    ``min_y_degree`` / ``min_y_residual`` add floors on ``d_H(y)`` and on
    ``d_G(y) - d_F0(y) - d_H(y)``; the multi-factor engine uses them to keep
    every part's minimum degree up. ``check_pre=False`` skips only the
    connector edge-connectivity test.
    """
    gr = g.graph
    n = gr.vertex_count
    if k < 1:
        raise InvalidParams("k must be positive")
    if len(f) != n:
        raise InvalidParams("f must give a value for every vertex")
    for fac in (F, F0, T):
        if fac.host != gr:
            raise PreconditionViolated("factors must live on the host graph")
    _require_strict(g)
    _check_disjoint((F, F0, T), ("F", "F0", "T"))
    if not _sum_congruent(g, f, k):
        raise PreconditionViolated(f"sum of f over Y is not congruent to sum over X mod {k}")
    dG, dF, dF0, dT = gr.degrees(), F.degrees(), F0.degrees(), T.degrees()
    for v in g.xs:
        if not 2 * dF[v] + dT[v] <= 2 * f[v] <= 2 * dG[v] - 2 * dF0[v] - dT[v]:
            raise PreconditionViolated(
                f"window d_F + d_T/2 <= f <= d_G - d_F0 - d_T/2 fails at X-vertex {v}")
    if check_pre and 3 * k - 3 > 0:
        conn = edge_connectivity(gr, T.copies)[0] if n >= 2 else 0
        if conn < 3 * k - 3:
            raise PreconditionViolated(f"connector T is {conn}-edge-connected, needs {3 * k - 3}")
    allowed = []
    for v in range(n):
        if g.side[v] == X:
            allowed.append((f[v], f[v], 1, 0))
            continue
        lo = max(dF[v], -((-(2 * dF[v] + dT[v] - 2 * k + 1)) // 2), min_y_degree)
        hi = min(dG[v] - dF0[v], (2 * dG[v] - 2 * dF0[v] - dT[v] + 2 * k - 1) // 2,
                 dG[v] - dF0[v] - min_y_residual)
        allowed.append((lo, hi, k, f[v] % k))
    free = gr.all_copies - F.copies - F0.copies
    try:
        extra = congruence_factor_search(g, free, F.copies, allowed, budget)
    except SearchBudgetExceeded as exc:
        log.warning("modulo factor search budget exhausted on %r (k=%d)", gr, k)
        raise InfeasibleWitness(str(exc), stage="modulo_factor", detail="budget") from exc
    if extra is None:
        log.warning("modulo factor search exhausted on %r (k=%d)", gr, k)
        raise InfeasibleWitness("no factor meets the modulo contract", stage="modulo_factor",
                                detail="exhausted")
    h = Factor(gr, F.copies | extra)
    problems = modulo_factor_problems(g, f, k, F, F0, T, h)
    if problems:
        raise InternalError(f"modulo factor post-condition: {problems[0]}")
    return h


def modulo_factor_problems(g: BipartitionedGraph, f, k, F, F0, T, H) -> list[str]:
    """Every violated post-condition clause of a modulo factor."""
    gr = g.graph
    issues = []
    if not F.copies <= H.copies:
        issues.append("H does not include F")
    if H.copies & F0.copies:
        issues.append("H meets F0")
    dG, dF, dF0, dT, dH = gr.degrees(), F.degrees(), F0.degrees(), T.degrees(), H.degrees()
    for v in range(gr.vertex_count):
        if g.side[v] == X:
            if dH[v] != f[v]:
                issues.append(f"d_H({v}) = {dH[v]} != f = {f[v]}")
        else:
            if (dH[v] - f[v]) % k:
                issues.append(f"d_H({v}) = {dH[v]} not congruent to {f[v]} mod {k}")
            slack = min(dH[v] - dF[v], dG[v] - dH[v] - dF0[v])
            if not 2 * slack > dT[v] - 2 * k:
                issues.append(f"slack at Y-vertex {v} is {slack}, needs > {dT[v]}/2 - {k}")
    return issues


# -- the inductive multi-factor engine --------------------------------------


def multi_modulo_decompose(g: BipartitionedGraph, plan: DegreePlan, system: FactorSystem, *,
                           check_pre: bool = True, min_degree: int = 0,
                           budget=None) -> list[Factor]:
    """Factors ``G_0..G_b`` partitioning the copies of ``g`` with
    ``F_i <= G_i``, ``d_{G_i} = f_i`` on X, ``d_{G_i} == f_i (mod k_i)`` on Y and
    ``d_{G_i}(y) > d_{T_i}(y)/2 - k_i``, ``d_{G_0}(y) > d_{T_b}(y)/2 - k_b``.

    Built one factor at a time: ``H_n = M_n + T_n + F_n``, ``G_n`` a modulo
    factor of ``H_n`` containing ``F_n``, ``M_{n+1} = H_n - G_n``; finally
    ``G_0`` is everything left over.
    """
    gr = g.graph
    b = plan.b
    if len(system.reserved) != b + 1 or len(system.connectors) != b:
        raise InvalidParams(f"need {b + 1} reserved factors and {b} connectors")
    reserved, connectors = list(system.reserved), list(system.connectors)
    _require_strict(g)
    names = [f"F{i}" for i in range(b + 1)] + [f"T{i}" for i in range(1, b + 1)]
    _check_disjoint(reserved + connectors, names)
    for i in range(b):
        if len(plan.f[i]) != gr.vertex_count:
            raise InvalidParams(f"f_{i + 1} must give a value for every vertex")
        if not _sum_congruent(g, plan.f[i], plan.k[i]):
            raise PreconditionViolated(f"plan congruence fails for index {i + 1}")
    dG = gr.degrees()
    dF = [r.degrees() for r in reserved]
    dT = [None] + [t.degrees() for t in connectors]
    for v in g.xs:
        for i in range(1, b + 1):
            f_i = plan.f[i - 1]
            if 2 * dF[i][v] + dT[i][v] > 2 * f_i[v]:
                raise PreconditionViolated(f"index {i}: d_F + d_T/2 > f at X-vertex {v}")
            lhs = 2 * sum(plan.f[t - 1][v] for t in range(1, i + 1)) + dT[i][v]
            lhs += 2 * sum(dT[t][v] + dF[t][v] for t in range(i + 1, b + 1))
            if lhs > 2 * (dG[v] - dF[0][v]):
                raise PreconditionViolated(f"index {i}: degree budget exceeded at X-vertex {v}")
    if check_pre:
        for i in range(1, b + 1):
            need = 3 * plan.k[i - 1] - 3
            if need > 0 and edge_connectivity(gr, connectors[i - 1].copies)[0] < need:
                raise PreconditionViolated(f"connector T{i} is not {need}-edge-connected")

    union = set()
    for fac in reserved + connectors:
        union |= fac.copies
    rest = gr.all_copies - union
    parts = []
    for i in range(1, b + 1):
        h_n = rest | connectors[i - 1].copies | reserved[i].copies
        outside = Factor(gr, gr.all_copies - h_n)
        g_n = modulo_factor(
            g, plan.f[i - 1], plan.k[i - 1], reserved[i], outside, connectors[i - 1],
            check_pre=False, min_y_degree=min_degree,
            min_y_residual=min_degree if i == b else 0, budget=budget,
        )
        parts.append(g_n)
        rest = h_n - g_n.copies
    used = set()
    for p in parts:
        used |= p.copies
    result = [Factor(gr, gr.all_copies - used)] + parts
    problems = multi_modulo_problems(g, plan, system, result)
    if problems:
        raise InternalError(f"multi-factor post-condition: {problems[0]}")
    return result


def multi_modulo_problems(g: BipartitionedGraph, plan: DegreePlan, system: FactorSystem,
                          parts) -> list[str]:
    gr = g.graph
    b = plan.b
    issues = []
    seen = set()
    for i, p in enumerate(parts):
        if seen & p.copies:
            issues.append(f"G_{i} overlaps an earlier factor")
        seen |= p.copies
    if seen != set(gr.all_copies):
        issues.append("factors do not cover every copy")
    for i in range(b + 1):
        if not system.reserved[i].copies <= parts[i].copies:
            issues.append(f"G_{i} does not include F_{i}")
    degs = [p.degrees() for p in parts]
    for i in range(1, b + 1):
        k, f = plan.k[i - 1], plan.f[i - 1]
        dT = system.connectors[i - 1].degrees()
        for v in range(gr.vertex_count):
            d = degs[i][v]
            if g.side[v] == X:
                if d != f[v]:
                    issues.append(f"d_G{i}({v}) = {d} != {f[v]}")
            else:
                if (d - f[v]) % k:
                    issues.append(f"d_G{i}({v}) not congruent to {f[v]} mod {k}")
                if not 2 * d > dT[v] - 2 * k:
                    issues.append(f"d_G{i}({v}) = {d} too small against T{i}")
                if i == b and not 2 * degs[0][v] > dT[v] - 2 * k:
                    issues.append(f"d_G0({v}) = {degs[0][v]} too small against T{b}")
    return issues


# -- semi-regular split -------------------------------------------------------


def semi_regular_split(g: BipartitionedGraph, m: int, lam: int, l: int, *,
                       check_pre: bool = True, budget=None) -> tuple[Factor, Factor]:
    """Split into two (lam, l)-partition-connected factors ``G_1, G_2`` with
    ``m | d_{G_1}`` on X and ``m | d_{G_2}`` on Y.

    Two disjoint (lam, l)-partition-connected factors are reserved, one for
    each half; the remaining copies are distributed by the congruence
    search (X-degrees of ``G_1`` in ``mZ``, Y-degrees congruent to ``d_G``).
    """
    gr = g.graph
    if m < 1:
        raise InvalidParams("m must be positive")
    _require_strict(g)
    if gr.copy_count % m:
        raise PreconditionViolated(f"|E| = {gr.copy_count} is not divisible by {m}")
    if check_pre:
        try:
            partition_connected_decompose(gr, 2 * lam + 2 * m, 2 * l)
        except Infeasible as exc:
            raise PreconditionViolated(
                f"host is not ({2 * lam + 2 * m}, {2 * l})-partition-connected") from exc
    keep_in, keep_out = frozenset(), frozenset()
    if lam or l:
        try:
            cert = partition_connected_decompose(gr, 2 * lam, 2 * l)
        except Infeasible as exc:
            raise InfeasibleWitness(
                f"host lacks two disjoint ({lam}, {l})-partition-connected factors",
                stage="semi_regular_split") from exc
        trees, bic = cert.trees, cert.bicircular
        keep_in = frozenset().union(*(t.copies for t in trees[:lam] + bic[:l]))
        keep_out = frozenset().union(*(t.copies for t in trees[lam:] + bic[l:]))
    dG = gr.degrees()
    dout = gr.degrees(keep_out)
    allowed = []
    for v in range(gr.vertex_count):
        hi = dG[v] - dout[v]
        residue = 0 if g.side[v] == X else dG[v] % m
        allowed.append((0, hi, m, residue))
    free = gr.all_copies - keep_in - keep_out
    try:
        extra = congruence_factor_search(g, free, keep_in, allowed, budget)
    except SearchBudgetExceeded as exc:
        raise InfeasibleWitness(str(exc), stage="semi_regular_split", detail="budget") from exc
    if extra is None:
        raise InfeasibleWitness("no divisibility split extends the reserved factors",
                                stage="semi_regular_split", detail="exhausted")
    g1 = Factor(gr, keep_in | extra)
    g2 = Factor(gr, gr.all_copies - g1.copies)
    for name, part in (("G_1", g1), ("G_2", g2)):
        try:
            partition_connected_decompose(gr, lam, l, part.copies)
        except Infeasible as exc:
            raise InternalError(f"{name} lost partition-connectivity") from exc
    d1, d2 = g1.degrees(), g2.degrees()
    for v in range(gr.vertex_count):
        if (d1[v] if g.side[v] == X else d2[v]) % m:
            raise InternalError(f"divisibility fails at vertex {v}")
    return g1, g2
