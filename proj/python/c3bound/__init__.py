"""First-moment bounds on 3-colourability of sparse random multigraphs.

Thin wrapper over the C++ core; see the individual function docstrings in
`c3bound._core`.
"""

from ._core import (
    BoundReport,
    BracketError,
    CapacityError,
    ConvergenceError,
    DegreeProfileEmpirical,
    DomainError,
    Error,
    McResult,
    ModelParams,
    MonotonicityError,
    MultiGraph,
    OccupancyProfile,
    ParameterError,
    ParseError,
    PhiSolution,
    PoissonProfile,
    SpreadVector,
    ThresholdResult,
    admissible,
    bound,
    bound_per_vertex,
    build_occupancy_profile,
    build_profile,
    count_proper,
    count_rigid,
    degree_profile,
    derive_stream_seed,
    in_subspace,
    is_proper,
    is_rigid,
    large_deviation_rate,
    log_bound,
    log_pattern_count,
    mc_first_moment,
    occupancy,
    pattern_count,
    poisson_pmf,
    read_graph_file,
    repair_to_rigid,
    rotated_residual,
    sample_graph,
    scan,
    solve_system,
    system_residual,
    threshold_search,
    type_fraction,
    type_normalizer,
    write_graph_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
