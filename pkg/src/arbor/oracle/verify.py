"""Independent checker for decomposition certificates.

Shares nothing with the constructions beyond the graph types: it only
counts copies and compares endpoint pairs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..certificate import DecompositionCertificate
from ..graph import Multigraph, TreePattern
from ..oracle.trees import canonical_tree_code

# clause names, in the order they are checked
FORMAT = "format"
INJECTIVITY = "injectivity"
PARTITION = "partition"
EMBEDDING = "embedding"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str | None = None
    copy: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    @property
    def reason(self) -> str:
        if self.ok:
            return "accepted"
        where = f" at copy {self.copy}" if self.copy is not None else ""
        return f"{self.clause} violation{where}: {self.detail}"


def _reject(clause, copy, detail):
    return Verdict(False, clause, copy, detail)


def verify_decomposition(g: Multigraph, t: TreePattern, cert: DecompositionCertificate) -> Verdict:
    """Accept iff the certificate's copies partition ``g``'s edge copies and
    each realizes ``t`` under its embedding."""
    if canonical_tree_code(cert.pattern.tree) != canonical_tree_code(t.tree):
        return _reject(FORMAT, None, "certificate pattern is not isomorphic to the tree")
    t = cert.pattern
    n, m = g.vertex_count, t.m
    nb = len(g.bundles)
    for idx, c in enumerate(cert.copies):
        if len(c.embedding) != t.vertex_count:
            return _reject(FORMAT, idx, f"embedding has {len(c.embedding)} entries, "
                                        f"pattern has {t.vertex_count} vertices")
        if any(not 0 <= v < n for v in c.embedding):
            return _reject(FORMAT, idx, "embedding uses a vertex outside the host")
        for b, k in c.edges:
            if not (0 <= b < nb and 0 <= k < g.bundles[b][2]):
                return _reject(FORMAT, idx, f"unknown copy id [{b}, {k}]")
    for idx, c in enumerate(cert.copies):
        if len(set(c.embedding)) != len(c.embedding):
            return _reject(INJECTIVITY, idx, "two pattern vertices share a host vertex")
    owner: dict[tuple, int] = {}
    for idx, c in enumerate(cert.copies):
        if len(c.edges) != m:
            return _reject(PARTITION, idx, f"copy has {len(c.edges)} edges, pattern has {m}")
        for e in c.edges:
            if e in owner:
                return _reject(PARTITION, idx, f"copy id {list(e)} already used by copy {owner[e]}")
            owner[e] = idx
    if len(owner) != g.copy_count:
        missing = next([b, k] for b, (_, _, mult) in enumerate(g.bundles)
                       for k in range(mult) if (b, k) not in owner)
        return _reject(PARTITION, None, f"copy id {missing} is not covered")
    for idx, c in enumerate(cert.copies):
        want = Counter(frozenset((c.embedding[a], c.embedding[b])) for a, b in t.edges)
        got = Counter(frozenset(g.bundles[b][:2]) for b, _ in c.edges)
        if want != got:
            return _reject(EMBEDDING, idx, "edges do not realize the pattern under the embedding")
    return Verdict(True)
