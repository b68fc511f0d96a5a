"""Certified decompositions of highly partition-connected graphs into
copies of a fixed tree."""

__version__ = "0.1.0"

from .certificate import DecompositionCertificate, TreeCopy
from .connectivity import (
    PartitionConnectivityCertificate,
    edge_connectivity,
    is_partition_connected,
    min_outdegree_orientation,
    partition_connected_decompose,
    spanning_tree_packing,
)
from .decomposition import bounds_report, leaf_partite_select, simple_t_decompose
from .errors import ArborError, Infeasible
from .graph import (
    BipartitionedGraph,
    Factor,
    Multigraph,
    Orientation,
    TreePattern,
    parse_graph,
    parse_tree,
    serialize_graph,
)

__all__ = [
    "ArborError",
    "BipartitionedGraph",
    "DecompositionCertificate",
    "Factor",
    "Infeasible",
    "Multigraph",
    "Orientation",
    "PartitionConnectivityCertificate",
    "TreeCopy",
    "TreePattern",
    "bounds_report",
    "edge_connectivity",
    "is_partition_connected",
    "leaf_partite_select",
    "min_outdegree_orientation",
    "parse_graph",
    "parse_tree",
    "partition_connected_decompose",
    "serialize_graph",
    "simple_t_decompose",
    "spanning_tree_packing",
]
