"""Ground-truth oracles: exhaustive searches, the certificate verifier,
tree canonical forms and instance generators."""

from .brute import BruteAnswer, brute_force_partition_connectivity
from .exact import exact_t_decomposition
from .generate import generate
from .trees import canonical_tree_code, free_trees, prufer_trees
from .verify import Verdict, verify_decomposition

__all__ = [
    "BruteAnswer",
    "Verdict",
    "brute_force_partition_connectivity",
    "canonical_tree_code",
    "exact_t_decomposition",
    "free_trees",
    "generate",
    "prufer_trees",
    "verify_decomposition",
]
