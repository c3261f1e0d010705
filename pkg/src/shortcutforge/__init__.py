"""Diameter-reducing shortcut sets and hop-bounded distance preservers.

Given a digraph G, a shortcut set H is a set of transitive-closure edges
whose addition collapses the hop diameter; a (beta, eps) hopset plays the
same role for weighted distances, guaranteeing that beta-hop paths in
G ∪ H already come within a (1+eps) factor of the true distances.
"""

__version__ = "0.1.0"

from .chain_decomp import ChainDecomposition, decompose
from .generators import FAMILIES, GenSpec, generate, subdivide
from .graph_core import (
    Digraph,
    LoadReport,
    WeightedDigraph,
    apsp,
    bounded_reachability,
    condense,
    dump_edge_list,
    hop_limited_dist,
    is_acyclic,
    lift_shortcuts,
    load_edge_list,
    scc_star_edges,
    transitive_closure,
    unit_weights,
    weighted_closure,
)
from .hopset_algos import (
    HopsetEdges,
    HopsetParams,
    NicePathCollection,
    SubpathPartition,
    as_eps,
    build_hopset,
    geometric_ladder,
    hopset_large_hop,
    hopset_small_hop,
    ladder_size_limit,
    nice_collection,
    partition_subpaths,
)
from .line_shortcut import PathShortcut, shortcut_path
from .oracles import (
    Check,
    VerificationReport,
    check_lb_properties,
    verify_hopset,
    verify_nice,
    verify_shortcut,
)
from .shortcut_algos import (
    FirstIncomingEdge,
    ShortcutParams,
    ShortcutSet,
    build_shortcuts,
    first_incoming_edge,
    folklore,
    shortcut_large_d,
    shortcut_small_diam,
    small_diam_limit,
    tc_spanner,
    transitive_reduction,
)

__all__ = [
    "__version__",
    "ChainDecomposition",
    "decompose",
    "FAMILIES",
    "GenSpec",
    "generate",
    "subdivide",
    "Digraph",
    "LoadReport",
    "WeightedDigraph",
    "apsp",
    "bounded_reachability",
    "condense",
    "dump_edge_list",
    "hop_limited_dist",
    "is_acyclic",
    "lift_shortcuts",
    "load_edge_list",
    "scc_star_edges",
    "transitive_closure",
    "unit_weights",
    "weighted_closure",
    "HopsetEdges",
    "HopsetParams",
    "NicePathCollection",
    "SubpathPartition",
    "as_eps",
    "build_hopset",
    "geometric_ladder",
    "hopset_large_hop",
    "hopset_small_hop",
    "ladder_size_limit",
    "nice_collection",
    "partition_subpaths",
    "PathShortcut",
    "shortcut_path",
    "Check",
    "VerificationReport",
    "check_lb_properties",
    "verify_hopset",
    "verify_nice",
    "verify_shortcut",
    "FirstIncomingEdge",
    "ShortcutParams",
    "ShortcutSet",
    "build_shortcuts",
    "first_incoming_edge",
    "folklore",
    "shortcut_large_d",
    "shortcut_small_diam",
    "small_diam_limit",
    "tc_spanner",
    "transitive_reduction",
]
