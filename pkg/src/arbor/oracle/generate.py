"""Seeded instance generators."""

from __future__ import annotations

import random

from ..connectivity import edge_connectivity
from ..errors import InvalidParams
from ..graph import Multigraph

MODELS = ("circulant", "random_bipartite", "random_regularish", "doubled")


def circulant(n: int, offsets) -> Multigraph:
    """Vertex ``i`` joined to ``i +- s`` for every offset ``s``."""
    offsets = sorted(set(int(s) for s in offsets))
    if n < 2 or not offsets or any(not 0 < s <= n // 2 for s in offsets):
        raise InvalidParams("circulant needs n >= 2 and offsets in 1..n/2")
    pairs = set()
    for i in range(n):
        for s in offsets:
            j = (i + s) % n
            pairs.add((min(i, j), max(i, j)))
    return Multigraph(n, tuple((u, v, 1) for u, v in sorted(pairs)))


def random_bipartite(nx: int, ny: int, rng: random.Random, m: int = 1, p: float = 0.6,
                     max_mult: int = 1) -> Multigraph:
    """X = ``0..nx-1``, Y = ``nx..nx+ny-1``; every X-degree divisible by ``m``.

    Bundles are drawn independently; X-degrees are then repaired upwards
    by adding copies (raising multiplicities past ``max_mult`` only when an
    X-vertex has no other room).
    """
    if nx < 1 or ny < 1 or m < 1 or max_mult < 1:
        raise InvalidParams("random_bipartite needs nx, ny, m, max_mult >= 1")
    mult = {}
    for x in range(nx):
        for y in range(nx, nx + ny):
            if rng.random() < p:
                mult[(x, y)] = rng.randint(1, max_mult)
    for x in range(nx):
        deg = sum(c for (a, _), c in mult.items() if a == x)
        ys = list(range(nx, nx + ny))
        while deg % m or deg == 0:
            room = [y for y in ys if mult.get((x, y), 0) < max_mult]
            y = rng.choice(room or ys)
            mult[(x, y)] = mult.get((x, y), 0) + 1
            deg += 1
    return Multigraph(nx + ny, tuple((u, v, c) for (u, v), c in sorted(mult.items())))


def random_regularish(n: int, d: int, rng: random.Random) -> Multigraph:
    """Simple graph with all degrees close to ``d``: a union of random
    perfect-ish matchings over a Hamiltonian cycle."""
    if n < 3 or d < 2 or d >= n:
        raise InvalidParams("random_regularish needs n >= 3 and 2 <= d < n")
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = {(min(perm[i], perm[(i + 1) % n]), max(perm[i], perm[(i + 1) % n])) for i in range(n)}
    deg = [2] * n
    attempts = 0
    while attempts < 50 * n * d:
        attempts += 1
        low = [v for v in range(n) if deg[v] < d]
        if len(low) < 2:
            break
        u, v = rng.sample(low, 2)
        key = (min(u, v), max(u, v))
        if key in pairs:
            continue
        pairs.add(key)
        deg[u] += 1
        deg[v] += 1
    return Multigraph(n, tuple((u, v, 1) for u, v in sorted(pairs)))


def doubled(g: Multigraph, times: int = 2) -> Multigraph:
    if times < 1:
        raise InvalidParams("times must be positive")
    return g.scaled(times)


def generate(model: str, params: dict, seed: int = 0) -> Multigraph:
    rng = random.Random(seed)
    try:
        if model == "circulant":
            g = circulant(params["n"], params["offsets"])
            if params.get("check", True) and g.vertex_count > 2 * max(params["offsets"]):
                lam = edge_connectivity(g)[0]
                if lam != 2 * len(set(params["offsets"])):
                    raise InvalidParams(f"circulant is only {lam}-edge-connected")
            return g
        if model == "random_bipartite":
            return random_bipartite(params["nx"], params["ny"], rng, params.get("m", 1),
                                    params.get("p", 0.6), params.get("max_mult", 1))
        if model == "random_regularish":
            return random_regularish(params["n"], params["d"], rng)
        if model == "doubled":
            return doubled(params["base"], params.get("times", 2))
    except KeyError as exc:
        raise InvalidParams(f"model {model!r} needs parameter {exc.args[0]!r}") from None
    raise InvalidParams(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
