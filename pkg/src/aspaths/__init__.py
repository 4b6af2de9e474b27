"""aspaths: almost-shortest path enumeration on weighted graphs.

Enumerates every walk (or every nonbacktracking walk) of bounded length
between two nodes, provides the path-counting formulas of the Chung-Lu
independent-edge model with exact and Monte-Carlo validation hooks, and
ships desk-scale experiment drivers for path-ratio and edge-deletion
survival studies.
"""

from .counting import (
    DegreeSequence,
    EdgeClassification,
    classify_edges,
    expected_nbp_upper,
    expected_sp_exact,
    expected_sp_lower,
    load_degree_sequence,
    path_probability,
    save_degree_sequence,
)
from .errors import (
    AsPathsError,
    BudgetError,
    DegenerateQuery,
    DuplicateEdge,
    EmptyCollection,
    GuardViolation,
    InadmissibleSequence,
    InfeasibleConfig,
    InsufficientPairs,
    InvalidEdge,
    NonPositiveWeight,
    PathBudgetExceeded,
    PreconditionViolated,
    TargetUnreachable,
    TreeBudgetExceeded,
    ValidationError,
)
from .experiments import (
    DeletionConfig,
    DeletionReport,
    RatioConfig,
    RatioReport,
    SummaryStats,
    edge_deletion_experiment,
    ratio_experiment,
    summarize,
    surviving_fraction,
)
from .graph import (
    EPSILON,
    FROM_SOURCE,
    TO_TARGET,
    DistanceMap,
    Graph,
    SortedAdjacency,
    build_graph,
    read_edge_list,
    shortest_distances,
    sorted_in_neighbors,
    write_edge_list,
)
from .nonbacktracking import (
    NbpDistanceMap,
    ShortestPathTree,
    build_shortest_path_tree,
    nbp_distances,
    nbp_pathfind,
)
from .paths import (
    Path,
    PathQuery,
    brute_force_walks,
    filter_simple,
    format_path_line,
    is_nonbacktracking,
    is_simple,
    pathfind,
    paths_to_json,
)
from .randgraph import (
    McmcConfig,
    RngSeed,
    mcmc_degree_sequence,
    sample_chung_lu,
    sample_erdos_renyi,
)

__version__ = "0.1.0"
