"""Design and verification toolkit for high-memory spatially-coupled LDPC protographs."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    HarmfulStructureSet,
    LoadProfile,
    bound_report,
    clll_mt_comparison,
    edge_loads,
    literature_lower_bounds,
    memory_bound_girth6,
    memory_bound_girth8,
    min_hitting_set_load,
    union_load,
)
from .counting import (
    CountingBound,
    c4_counting_bound,
    exhaustive_count_valid,
    general_af_bound,
    min_grid_product,
    monte_carlo_fraction,
    uniform_min_product,
)
from .cycles import CycleCandidate, census, enumerate_cycle_candidates, is_active, tanner_girth
from .protograph import (
    BaseGraph,
    ComponentMatrices,
    CouplingPattern,
    PartitionMatrix,
    SparseBinaryMatrix,
    build_sc_matrix,
    explicit_product_assignment,
    make_base_graph,
    spread_edges,
)
from .search import SearchConfig, SearchResult, search_assignment, verify_assignment

__all__ = [
    "BaseGraph",
    "BoundReport",
    "ComponentMatrices",
    "CountingBound",
    "CouplingPattern",
    "CycleCandidate",
    "HarmfulStructureSet",
    "LoadProfile",
    "PartitionMatrix",
    "SearchConfig",
    "SearchResult",
    "SparseBinaryMatrix",
    "bound_report",
    "build_sc_matrix",
    "c4_counting_bound",
    "census",
    "clll_mt_comparison",
    "edge_loads",
    "enumerate_cycle_candidates",
    "exhaustive_count_valid",
    "explicit_product_assignment",
    "general_af_bound",
    "is_active",
    "literature_lower_bounds",
    "make_base_graph",
    "memory_bound_girth6",
    "memory_bound_girth8",
    "min_grid_product",
    "min_hitting_set_load",
    "monte_carlo_fraction",
    "search_assignment",
    "spread_edges",
    "tanner_girth",
    "uniform_min_product",
    "union_load",
    "verify_assignment",
]
