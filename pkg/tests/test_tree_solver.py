from fractions import Fraction as F

import pytest
from hypothesis import given

from bicenter import (
    EdgePoint,
    InstanceError,
    candidate_values_edge_pair,
    candidate_values_graph,
    centroid,
    feasibility_graph,
    feasibility_tree,
    locate_center_edges,
    locate_center_subtrees,
    normalize,
    objective,
    oracle_solve,
    random_instance,
    solve_graph,
    solve_tree_weighted,
    validate_and_build,
)
from bicenter.rooted import RootedTree

from conftest import path, small_instances, star

# oracle values frozen for random_instance(seed, 6, "tree")
FROZEN_TREES = [
    (1, 0), (2, F(225, 8)), (3, F(260, 9)), (4, F(100, 7)), (5, F(46, 3)), (6, F(25, 2)),
    (7, F(140, 9)), (8, 30), (9, F(64, 3)), (10, 16), (11, F(280, 9)), (12, F(54, 5)),
]

trees = small_instances(kind="tree", max_n=9)


def test_rooted_tree_matches_matrix():
    inst = random_instance(4, 40, "tree")
    rt = RootedTree(inst)
    assert len(inst.graph.adjacency[rt.root]) == 1
    for u in range(0, 40, 3):
        for v in range(0, 40, 7):
            assert rt.distance(u, v) == inst.dist[u][v]


def test_rooted_tree_rejects_cycles(triangle):
    with pytest.raises(InstanceError):
        RootedTree(triangle)


def test_feasibility_examples(unit_path):
    found = feasibility_tree(unit_path, F(1, 2))
    assert found is not None and objective(unit_path, *found) <= F(1, 2)
    assert feasibility_tree(unit_path, F(2, 5)) is None
    found = feasibility_tree(unit_path, F(3, 2))
    assert found is not None and objective(unit_path, *found) <= F(3, 2)


def test_feasibility_needs_tree(triangle):
    with pytest.raises(InstanceError):
        feasibility_tree(normalize(triangle), 1)


def test_centroid_examples():
    assert centroid(path([1] * 5, pairs=[])) == 2
    assert centroid(path([1] * 4, pairs=[])) == 1
    assert centroid(star(5, [])) == 0


@given(trees)
def test_centroid_balances(inst):
    c = centroid(inst)
    # every component of T - c holds at most n/2 vertices
    seen = {c}
    for nb, _ in inst.graph.adjacency[c]:
        stack, size = [nb], 0
        seen.add(nb)
        while stack:
            x = stack.pop()
            size += 1
            for y, _ in inst.graph.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        assert size <= inst.n // 2


def test_report_on_path_vertex(unit_path):
    r = locate_center_subtrees(unit_path, 1)
    assert r.entries == (0, 2)
    assert r.taus == (1, 2)
    # the far side gets a center, the near side the other one
    assert r.designated == (1, 0)
    assert r.verdict is None


def test_report_on_star_hub():
    inst = normalize(star(4, [(1, 3), (2, 4)]))
    r = locate_center_subtrees(inst, 0)
    assert r.case == "t1=t2=t3"
    assert r.verdict == 1 == oracle_solve(inst)


def test_report_at_path_midpoint(unit_path):
    r = locate_center_subtrees(unit_path, EdgePoint(1, F(1, 2)))
    assert r.taus == (F(3, 2), F(3, 2))
    assert sorted(r.designated) == [0, 1]
    assert r.verdict is None


def test_solve_examples(unit_path, weighted_path):
    assert solve_tree_weighted(unit_path).lam == F(1, 2)
    assert solve_tree_weighted(weighted_path).lam == F(2, 3)


def test_solve_needs_tree(triangle):
    with pytest.raises(InstanceError):
        solve_tree_weighted(normalize(triangle))


@pytest.mark.parametrize("seed, lam", FROZEN_TREES)
def test_frozen_values(seed, lam):
    assert solve_tree_weighted(normalize(random_instance(seed, 6, "tree"))).lam == lam


def test_fractional_data():
    inst = validate_and_build(
        [F(3, 2), 1, F(5, 4), 2, F(1, 3), 1],
        [(0, 1, F(1, 2)), (1, 2, 3), (1, 3, F(7, 3)), (3, 4, 1), (4, 5, F(5, 2))],
        [(0, 4), (2, 5), (1, 3)],
    )
    assert solve_tree_weighted(inst).lam == oracle_solve(inst)


@given(trees)
def test_feasibility_agrees_with_graph(inst):
    work = normalize(inst)
    lam = oracle_solve(work)
    for v in candidate_values_graph(work):
        found = feasibility_tree(work, v)
        assert (found is not None) == (feasibility_graph(work, v) is not None) == (v >= lam)
        if found is not None:
            assert objective(work, *found) <= v


@given(trees)
def test_solvers_agree(inst):
    work = normalize(inst)
    sol = solve_tree_weighted(work)
    assert sol.lam == solve_graph(work).lam == oracle_solve(work)
    assert objective(work, sol.q1, sol.q2, sol.assignment) == sol.lam


@given(trees)
def test_phase_one_edges_hold_the_optimum(inst):
    work = normalize(inst)
    loc = locate_center_edges(work)
    lam = oracle_solve(work)
    if loc.verdict is not None:
        assert loc.verdict == lam
    else:
        assert lam in candidate_values_edge_pair(work, loc.e1, loc.e2)
