"""Approximate coloring of (even-hole, cap)-free graphs within floor(3/2 * omega) colors."""
from .coloring import (
    Coloring,
    ColoringReport,
    Ordering,
    beta_greedy_color,
    clique_number_c4free,
    color,
    color_atom,
    merge_on_separator,
    min_degree_last_ordering,
    peel_color_core,
)
from .decomposition import (
    DecompositionTree,
    TwinPartition,
    clique_cutset_decompose,
    lexm_minimal_ordering,
    strip_universal_vertices,
    twin_partition,
)
from .graph import (
    Graph,
    connected_components,
    from_edge_list,
    induced_subgraph,
    is_clique_set,
    parse_dimacs,
    write_dimacs,
)

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "ColoringReport",
    "DecompositionTree",
    "Graph",
    "Ordering",
    "TwinPartition",
    "beta_greedy_color",
    "clique_cutset_decompose",
    "clique_number_c4free",
    "color",
    "color_atom",
    "connected_components",
    "from_edge_list",
    "induced_subgraph",
    "is_clique_set",
    "lexm_minimal_ordering",
    "merge_on_separator",
    "min_degree_last_ordering",
    "parse_dimacs",
    "peel_color_core",
    "strip_universal_vertices",
    "twin_partition",
    "write_dimacs",
]
