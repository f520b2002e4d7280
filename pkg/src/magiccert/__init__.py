"""Certify set magic of quantum state collections from pairwise overlaps."""

from .states import (
    DensityMatrix,
    PureState,
    depolarize,
    named_state,
    overlap,
    random_pure,
    states_equal,
    tensor,
)
from .stabilizer import (
    StabilizerSet,
    contains,
    enumerate_stabilizer_states,
    export_states,
    is_valid_stabilizer_overlap,
    overlap_spectrum,
)
from .graphs import (
    EdgeWeights,
    EventGraph,
    LinearFunctional,
    VertexLabeling,
    classical_max,
    complete,
    cycle,
    cycle_functional,
    evaluate,
    functional_by_name,
    functional_from_doc,
    functional_to_doc,
    hub_functional,
    incoherent_vertices,
    overlaps_from_labeling,
    restrict,
)
from .seesaw import (
    CycleOptimum,
    OptResult,
    SeesawConfig,
    classical_quantum_ratio,
    optimal_cycle_states,
    optimal_cycle_value,
    seesaw_maximize,
)
from .oracle import (
    BruteForceReport,
    MerminReport,
    full_set_magic_bound,
    full_set_magic_rows,
    mermin_demo,
    qudit_hub4_positive_cap,
    stabilizer_brute_max,
    stabilizer_renyi2,
    t_pair_demo,
    two_stabilizer_triangle_bound,
)
from .witness import (
    OverlapEstimate,
    Verdict,
    certify_full_set_magic,
    certify_set_magic,
    conservative_value,
    exact_estimates,
    hoeffding_halfwidth,
    point_value,
)
from .network import (
    Assignment,
    QpuSpec,
    RunReport,
    Scenario,
    ScenarioValidationError,
    assign_edges,
    report_to_doc,
    run_scenario,
    scenario_from_json,
    swap_test_sample,
)

__version__ = "0.1.0"
