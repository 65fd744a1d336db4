"""Exact-arithmetic engine for step graphons and kernels."""

from .core import (
    ColoringTemplate,
    GraphStats,
    PartWeighting,
    SimpleGraph,
    StepKernel,
    affine_combine,
    common_refinement,
    complete_bipartite,
    complete_graph,
    constant_graphon,
    corner_scale,
    cycle_graph,
    diagonal_average,
    graph_stats,
    path_graph,
    split_parts,
    subgraphon,
)
from .errors import AlignmentError, CapacityError, DomainError
from .homdensity import (
    DeficitPolynomial,
    build_K2a2bC5,
    commonness_margin,
    density,
    density_brute,
    epsilon_expansion,
    mono_sum,
    reflect,
    rooted_density,
)
from .spectral import SpectralDecomposition, cycle_trace_check, decompose, rooted_cycle_identity
from .cutnorm import cut_distance_upper, cut_norm, density_lipschitz_check, local_window_check
from .constructions import (
    binary_coloring,
    certified_constants,
    chromatic_coloring,
    kappa_upper,
    local_deficit,
    odd_girth_kernel,
    permutation_family,
)
from .independence import alpha_lower, low_degree_peel, verify_certificate
from .sampler import (
    convergence_report,
    injective_hom_count,
    mono_count,
    sample_coloring,
    sample_w_random,
)

__version__ = "0.1.0"
