"""Exact and heuristic Y_{k,b}-tiling solvers, the fractional hom(Y)-tiling LP,
and brute-force checkers for the small combinatorial facts around them."""

from .fractional import FractionalTiling, from_integral, lp_max_weight, verify_fractional
from .hypergraph import (
    BlowUp,
    Hypergraph,
    HypergraphError,
    Partition,
    Pattern,
    Y32,
    blow_up,
    build,
    complete,
    conjecture_bound,
    degree_into_set,
    density_triple,
    gen_clique_plus_isolated,
    gen_cover_construction,
    gen_kpartite_extremal,
    gen_random,
    induced,
)
from .kernels import BACKEND
from .tiling import (
    MixedTiling,
    PatternCopy,
    Tiling,
    enumerate_copies,
    greedy_tiling,
    max_mixed_tiling_exact,
    max_pattern_free_edges,
    max_tiling_exact,
    verify_tiling,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BlowUp", "FractionalTiling", "Hypergraph", "HypergraphError", "MixedTiling",
    "Partition", "Pattern", "PatternCopy", "Tiling", "Y32", "blow_up", "build", "complete",
    "conjecture_bound", "degree_into_set", "density_triple", "enumerate_copies", "from_integral",
    "gen_clique_plus_isolated", "gen_cover_construction", "gen_kpartite_extremal", "gen_random",
    "greedy_tiling", "induced", "lp_max_weight", "max_mixed_tiling_exact", "max_pattern_free_edges",
    "max_tiling_exact", "verify_fractional", "verify_tiling",
]
