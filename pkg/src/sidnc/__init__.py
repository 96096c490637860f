"""Strict instantly-decodable network coding (S-IDNC) broadcast simulator."""

from .algorithms import (
    MaximalCliqueFamily,
    SolutionFamily,
    bron_kerbosch,
    brute_force_min_apdd,
    exact_chromatic_number,
    heuristic_max_clique,
    heuristic_solution_search,
    hybrid_solution_search,
    optimal_solution_search,
)
from .analytics import (
    DecodingTimes,
    ThroughputModel,
    apdd,
    apdd_upper_bound,
    clique_lower_bound,
    completion_coefficient,
    conflict_probability,
    degree_upper_bound,
    expected_edge_count,
    expected_min_completion,
    geller_lower_bound,
    round_success_probability,
    solution_apdd,
    staircase_upper_bound,
)
from .errors import (
    BranchLimitExceeded,
    ConflictingCodingSet,
    EmptyDomain,
    InvalidSolution,
    SIdncError,
    SizeLimitExceeded,
    SlotCapExceeded,
)
from .experiment import LIMITS, ExperimentSpec, ResultRow, emit_csv, run_experiment
from .graphs import (
    CodingSet,
    GIdncGraph,
    SIdncGraph,
    Solution,
    affiliated_sidnc_graph,
    build_gidnc_graph,
    build_sidnc_graph,
    complement,
    is_clique,
    validate_solution,
)
from .schemes import (
    SchemeSpec,
    TransmissionLog,
    run_fully_online,
    run_gidnc,
    run_rlnc,
    run_scheme,
    run_semi_online,
)
from .state import (
    BroadcastConfig,
    ErasureChannel,
    StateFeedbackMatrix,
    apply_reception,
    fig1_sfm,
    format_sfm,
    load_sfm,
    parse_sfm,
    systematic_phase,
)

__version__ = "0.1.0"
