"""Decomposition certificates: a partition of a host's edge copies into
embedded copies of a tree pattern."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError
from .graph import Multigraph, TreePattern, parse_tree, serialize_graph


@dataclass(frozen=True)
class TreeCopy:
    """One embedded copy of the pattern.

    ``embedding[a]`` is the host vertex of pattern vertex ``a``; ``edges``
    lists the host copies as ``(bundle, copy)`` pairs.
    """

    embedding: tuple
    edges: tuple

    def to_json(self) -> dict:
        return {"embedding": list(self.embedding), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class DecompositionCertificate:
    pattern: TreePattern
    copies: tuple
    provenance: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, host: Multigraph, pattern: TreePattern, pieces, provenance=()):
        """From ``(embedding, flat copy indices)`` pairs."""
        copies = tuple(
            TreeCopy(tuple(emb), tuple(host.copy_id(i) for i in edges)) for emb, edges in pieces
        )
        return cls(pattern, copies, tuple(provenance))

    def __len__(self):
        return len(self.copies)

    def flat_pieces(self, host: Multigraph) -> list[tuple[tuple, list[int]]]:
        return [(c.embedding, [host.copy_index(e) for e in c.edges]) for c in self.copies]

    def with_provenance(self, *records) -> DecompositionCertificate:
        return DecompositionCertificate(self.pattern, self.copies, self.provenance + records)

    def to_json(self) -> dict:
        return {
            "pattern": serialize_graph(self.pattern.tree),
            "copies": [c.to_json() for c in self.copies],
            "provenance": list(self.provenance),
        }

    @classmethod
    def from_json(cls, doc: dict) -> DecompositionCertificate:
        try:
            pattern = parse_tree(doc["pattern"])
            copies = tuple(
                TreeCopy(tuple(int(v) for v in c["embedding"]),
                         tuple((int(e[0]), int(e[1])) for e in c["edges"]))
                for c in doc["copies"]
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise FormatError(f"malformed certificate: {exc!r}") from None
        return cls(pattern, copies, tuple(doc.get("provenance", ())))
