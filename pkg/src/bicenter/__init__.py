"""Weighted bichromatic two-center problem on graphs and trees."""

from .generate import random_instance, random_rectangle_sets
from .geometry import (
    candidate_values_edge_pair,
    candidate_values_graph,
    distance_function,
    feasible_intervals,
)
from .graph_solver import feasibility_graph, local_feasibility, solve_graph
from .model import (
    EdgePoint,
    Graph,
    Instance,
    InstanceError,
    Solution,
    normalize,
    objective,
    phi,
    point_distance,
    validate_and_build,
)
from .oracle import (
    OracleTooLarge,
    oracle_feasible,
    oracle_pierce,
    oracle_solve,
    oracle_solve_by_assignment,
)
from .piercing import Box, CornerRectangle, LazyMinTree, RectangleSet, pierce
from .solve import SolverMismatch, pick_solver, solve
from .textio import InstanceFormatError, format_instance, parse_instance, read_instance
from .tree_solver import (
    centroid,
    feasibility_tree,
    locate_center_edges,
    locate_center_subtrees,
    solve_tree_weighted,
)
from .unweighted import prune_unpaired_leaves, solve_tree_unweighted, unweighted_center

__all__ = [
    "Box",
    "candidate_values_edge_pair",
    "candidate_values_graph",
    "centroid",
    "CornerRectangle",
    "distance_function",
    "EdgePoint",
    "feasibility_graph",
    "feasibility_tree",
    "feasible_intervals",
    "format_instance",
    "Graph",
    "Instance",
    "InstanceError",
    "InstanceFormatError",
    "LazyMinTree",
    "local_feasibility",
    "locate_center_edges",
    "locate_center_subtrees",
    "normalize",
    "objective",
    "oracle_feasible",
    "oracle_pierce",
    "oracle_solve",
    "oracle_solve_by_assignment",
    "OracleTooLarge",
    "parse_instance",
    "phi",
    "pick_solver",
    "pierce",
    "point_distance",
    "prune_unpaired_leaves",
    "random_instance",
    "random_rectangle_sets",
    "read_instance",
    "RectangleSet",
    "Solution",
    "solve",
    "solve_graph",
    "solve_tree_unweighted",
    "solve_tree_weighted",
    "SolverMismatch",
    "unweighted_center",
    "validate_and_build",
]
