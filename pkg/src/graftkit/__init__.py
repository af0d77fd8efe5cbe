"""graftkit: joins in grafts, join distances, and ear-decomposition certificates."""

__version__ = "0.1.0"

from .errors import CapacityError, GraftkitError, InputError
from .multigraph import (
    Circuit,
    EarShape,
    Multigraph,
    Path,
    as_walkable,
    classify_ear,
    connected_components,
    cut,
    edges_between,
    extract_path_and_circuits,
    make_path,
    subpath,
    trivial_path,
)
from .grafts import (
    BalancedPathVerdict,
    BipartiteGraft,
    Graft,
    RelativeEar,
    VerifyOutcome,
    bipartite_graft_sum,
    classify_balanced_path,
    graft_sum,
    is_balanced_path,
    is_graft,
    is_join,
    relate_ear,
    relative_weight,
    rooted_base,
    single_vertex_graft,
)
from .solver import (
    DistanceResult,
    SolveResult,
    SolverLimits,
    best_min_join,
    cyclomatic_number,
    distance,
    find_any_join,
    max_matching,
    min_join,
    min_join_oracle,
    minimum_join_size,
    shortest_path,
    verify_minimum,
)
from .factorcritical import (
    GraftOddEarDecomposition,
    OddEarDecomposition,
    graft_odd_ear_decomposition,
    is_factor_critical_graft,
    is_factor_critical_graph,
    odd_ear_decomposition,
    verify_graft_odd_ear_decomposition,
    verify_odd_ear_decomposition,
)
from .quasicomb import (
    CriticalityReport,
    CriticalJoinReport,
    comb_distance_sufficiency,
    critical_join_report,
    has_critical_quasicomb_shape,
    is_comb,
    is_critical,
    is_quasicomb,
)
from .eargraft import (
    BuildResult,
    DecompositionStep,
    EarCandidate,
    EarDecomposition,
    FinalSummary,
    PathWitness,
    build,
    candidate_graft,
    decompose,
    ear_path_witness,
    is_effective,
    straight_ear_unique_join,
    verify_decomposition,
)
from .generators import (
    GenConfig,
    generate,
    random_critical_quasicomb,
    random_factor_critical,
    random_graft,
)
