"""Threshold random graphs on the hyperbolic disk and the weighted torus.

Sampling, exact structural parameters (degeneracy, colouring, cliques,
separators), closed-form theory bounds, and a reproducible sweep harness.
"""

from .geometry import (
    HrgParams,
    InnerBallBounds,
    PolarPoint,
    TheoryBounds,
    connection_angle,
    distance,
    inner_ball_bounds,
    inner_ball_measure,
    jung_covering_radius,
    line_distance,
    r_star,
    radial_cdf,
    radial_quantile,
    theory_bounds,
)
from .graph_params import (
    CliqueBudgetExceeded,
    DegeneracyResult,
    InnerDegreeProfile,
    SeparatorPartition,
    certify_clique,
    core,
    degeneracy,
    exact_clique,
    extend_core_clique,
    greedy_colour,
    inner_degrees,
    separator_partition,
    validate_colouring,
    write_colouring,
    write_ordering,
)
from .graphs import Graph, from_edge_array, read_edge_list, write_edge_list
from .experiments import (
    ExperimentRecord,
    GapSummary,
    SweepConfig,
    compare_models,
    parse_config,
    read_csv,
    run_sweep,
    validate_records,
    write_csv,
)
from .samplers import (
    GirgParams,
    GirgPointSet,
    HrgPointSet,
    build_edges_naive,
    build_edges_sweep,
    build_girg_edges,
    girg_inner_prob,
    read_girg_coords,
    read_hrg_coords,
    sample_girg,
    sample_girg_points,
    sample_hrg,
    sample_hrg_poisson,
    write_girg_coords,
    write_hrg_coords,
)

__version__ = "0.1.0"

__all__ = [
    "CliqueBudgetExceeded",
    "DegeneracyResult",
    "ExperimentRecord",
    "GapSummary",
    "GirgParams",
    "GirgPointSet",
    "Graph",
    "HrgParams",
    "HrgPointSet",
    "InnerBallBounds",
    "InnerDegreeProfile",
    "PolarPoint",
    "SeparatorPartition",
    "SweepConfig",
    "TheoryBounds",
    "build_edges_naive",
    "build_edges_sweep",
    "build_girg_edges",
    "certify_clique",
    "compare_models",
    "connection_angle",
    "core",
    "degeneracy",
    "distance",
    "exact_clique",
    "extend_core_clique",
    "from_edge_array",
    "girg_inner_prob",
    "greedy_colour",
    "inner_ball_bounds",
    "inner_ball_measure",
    "inner_degrees",
    "jung_covering_radius",
    "line_distance",
    "parse_config",
    "r_star",
    "radial_cdf",
    "radial_quantile",
    "read_csv",
    "read_edge_list",
    "read_girg_coords",
    "read_hrg_coords",
    "run_sweep",
    "sample_girg",
    "sample_girg_points",
    "sample_hrg",
    "sample_hrg_poisson",
    "separator_partition",
    "theory_bounds",
    "validate_colouring",
    "validate_records",
    "write_colouring",
    "write_csv",
    "write_edge_list",
    "write_girg_coords",
    "write_hrg_coords",
    "write_ordering",
]
