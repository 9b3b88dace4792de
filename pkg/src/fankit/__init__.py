"""fankit: exact fan packing, decomposition numbers, and extremal constructions.

A fan is k cliques of order r sharing exactly one vertex.  The package
computes the decomposition number phi(G, H) = e(G) - p(G) (e(H) - 1) exactly
on small graphs, builds the extremal fan-free graphs in closed form, runs the
constructive partition-and-extract pipeline on larger hosts, and ships
exhaustive small-n oracles that everything else is checked against.
"""

from .extremal import (
    Constants,
    ExtremalValue,
    constants,
    ex_fan,
    extremal_fan_graph,
    g,
    hanson_bound,
    turan_edges,
    turan_graph,
)
from .fans import (
    FanCopy,
    FanSpec,
    build_fan,
    contains_fan,
    find_fan_centered,
    validate_fan_copy,
)
from .graphs import (
    Graph,
    GraphFormatError,
    common_neighbors,
    delete_vertex,
    e_between,
    from_graph6,
    matching_number,
    maximum_matching,
    to_graph6,
)
from .oracle import (
    ResourceLimitError,
    SearchReport,
    all_graphs,
    ex_bruteforce,
    phi_bruteforce,
    verify_identity,
)
from .packing import (
    BudgetExceededError,
    Packing,
    PhiResult,
    enumerate_copies,
    greedy_packing,
    max_packing,
    phi,
)
from .pipeline import (
    DecompositionReport,
    GrowthInfeasibleError,
    Partition,
    PipelineConfig,
    PruningInfeasibleError,
    check_balance,
    classify_vertices,
    grow_complete_multipartite,
    max_cut_partition,
    peel_low_degree,
    prune_to_g0,
    run_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphFormatError",
    "from_graph6",
    "to_graph6",
    "e_between",
    "common_neighbors",
    "matching_number",
    "maximum_matching",
    "delete_vertex",
    "FanSpec",
    "FanCopy",
    "build_fan",
    "validate_fan_copy",
    "find_fan_centered",
    "contains_fan",
    "Constants",
    "ExtremalValue",
    "turan_graph",
    "turan_edges",
    "g",
    "extremal_fan_graph",
    "ex_fan",
    "hanson_bound",
    "constants",
    "Packing",
    "PhiResult",
    "BudgetExceededError",
    "enumerate_copies",
    "max_packing",
    "greedy_packing",
    "phi",
    "Partition",
    "PipelineConfig",
    "DecompositionReport",
    "PruningInfeasibleError",
    "GrowthInfeasibleError",
    "max_cut_partition",
    "peel_low_degree",
    "classify_vertices",
    "prune_to_g0",
    "run_pipeline",
    "grow_complete_multipartite",
    "check_balance",
    "SearchReport",
    "ResourceLimitError",
    "all_graphs",
    "ex_bruteforce",
    "phi_bruteforce",
    "verify_identity",
    "__version__",
]
