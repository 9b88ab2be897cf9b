"""Exact graph pebbling: engines, closed forms, rational LP, extremal builds."""

from pebbling.catalogs import catalog_names, load_catalog
from pebbling.construct import (
    ExtremalSpec,
    antipodal_witness,
    build_gnd,
    unsolvable_witness_odd,
)
from pebbling.engine import (
    FractionalDistribution,
    MoveSequence,
    PebbleDistribution,
    apply_move,
    is_reachable,
    max_pebbles_to,
    weight,
)
from pebbling.errors import BudgetExceededError
from pebbling.exact import (
    Budget,
    PebblingStat,
    arbitrary_target_number,
    is_solvable_distribution,
    max_unsolvable_witness,
    optimal_pebbling_number,
    pebbling_number,
    rooted_pebbling_number,
)
from pebbling.formulas import (
    BoundReport,
    PathPartition,
    complete_graph_formula,
    cycle_pebbling_formula,
    diam2_bounds,
    diambound_threshold,
    fractional_pebbling_number,
    gnd_lower_bound,
    maximal_path_partition,
    radius_bound,
    tree_pebbling_formula,
)
from pebbling.graphs import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    bfs_spanning_tree,
    diameter,
    distance_matrix,
    is_vertex_transitive,
    load_graph,
    make_family,
    parse_graph6,
    serialize_graph6,
)
from pebbling.optimize import (
    LinearProgram,
    LpSolution,
    build_opt_model,
    export_lp,
    optimal_fractional_pebbling,
    rationalize_to_integer,
    solve_ip,
    solve_lp,
    vertex_transitive_m,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Budget",
    "BudgetExceededError",
    "DisconnectedGraphError",
    "ExtremalSpec",
    "FractionalDistribution",
    "Graph",
    "GraphError",
    "LinearProgram",
    "LpSolution",
    "MoveSequence",
    "PathPartition",
    "PebbleDistribution",
    "PebblingStat",
    "antipodal_witness",
    "apply_move",
    "arbitrary_target_number",
    "bfs_spanning_tree",
    "build_gnd",
    "build_opt_model",
    "catalog_names",
    "complete_graph_formula",
    "cycle_pebbling_formula",
    "diam2_bounds",
    "diambound_threshold",
    "diameter",
    "distance_matrix",
    "export_lp",
    "fractional_pebbling_number",
    "gnd_lower_bound",
    "is_reachable",
    "is_solvable_distribution",
    "is_vertex_transitive",
    "load_catalog",
    "load_graph",
    "make_family",
    "max_pebbles_to",
    "max_unsolvable_witness",
    "maximal_path_partition",
    "optimal_fractional_pebbling",
    "optimal_pebbling_number",
    "parse_graph6",
    "pebbling_number",
    "radius_bound",
    "rationalize_to_integer",
    "rooted_pebbling_number",
    "serialize_graph6",
    "solve_ip",
    "solve_lp",
    "tree_pebbling_formula",
    "unsolvable_witness_odd",
    "vertex_transitive_m",
    "weight",
    "__version__",
]
