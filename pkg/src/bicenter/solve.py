"""Solver selection and the mapping between an input instance and its normalized form."""

from __future__ import annotations

from typing import Optional

from .graph_solver import solve_graph
from .model import EdgePoint, Instance, Solution, normalize, objective, vertex_point
from .tree_solver import solve_tree_weighted
from .unweighted import solve_tree_unweighted

SOLVERS = ("graph", "tree", "tree-unweighted")


class SolverMismatch(RuntimeError):
    """A solver produced a solution whose objective disagrees with its reported value."""


def has_common_weight(instance: Instance) -> bool:
    return len({instance.weights[v] for v in range(instance.n) if instance.partner[v] >= 0}) <= 1


def pick_solver(instance: Instance) -> str:
    if not instance.is_tree:
        return "graph"
    return "tree-unweighted" if has_common_weight(instance) else "tree"


def _lift(original: Instance, p: EdgePoint) -> EdgePoint:
    # an appended vertex hangs off vertex 0 and weighs nothing, so vertex 0 is at least as good
    if p.edge >= original.m:
        return vertex_point(original, 0)
    return p


def solve(instance: Instance, solver: Optional[str] = None) -> Solution:
    """Solve ``instance`` with the chosen (or auto-selected) solver; ids refer to ``instance``."""
    solver = solver or pick_solver(instance)
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    if solver == "tree-unweighted":
        sol = solve_tree_unweighted(instance)
    else:
        work = normalize(instance)
        sol = solve_graph(work) if solver == "graph" else solve_tree_weighted(work)
        sol = Solution(sol.lam, _lift(instance, sol.q1), _lift(instance, sol.q2),
                       sol.assignment[: instance.k], sol.solver)
    check = objective(instance, sol.q1, sol.q2, sol.assignment)
    if check != sol.lam:
        raise SolverMismatch(f"{solver} reported {sol.lam} but its solution evaluates to {check}")
    return sol
