"""Acceptance criteria, each at its stated tolerance (exact equality throughout).

Every test records one PASS/FAIL line, listed under "acceptance criteria" in the
pytest terminal summary.
"""

import random
import time
from functools import lru_cache

import pytest

from bicenter import (
    EdgePoint,
    LazyMinTree,
    candidate_values_edge_pair,
    candidate_values_graph,
    centroid,
    feasibility_graph,
    feasibility_tree,
    locate_center_edges,
    locate_center_subtrees,
    normalize,
    oracle_pierce,
    oracle_solve,
    pierce,
    prune_unpaired_leaves,
    random_instance,
    solve_graph,
    solve_tree_unweighted,
    solve_tree_weighted,
    unweighted_center,
)
from bicenter.generate import random_rectangle_sets
from bicenter.model import point_vertex
from bicenter.oracle import optimal_placements

SEEDS = range(200)


def graph_case(seed):
    rng = random.Random(f"graph-{seed}")
    n = rng.randint(4, 8)
    m = rng.randint(n - 1, min(12, n * (n - 1) // 2))
    return normalize(random_instance(seed, n, "connected-graph", m, weights=(0, 5), lengths=(1, 9)))


def tree_case(seed):
    n = random.Random(f"tree-{seed}").randint(4, 10)
    return normalize(random_instance(seed, n, "tree", weights=(0, 5), lengths=(1, 9)))


def unit_tree_case(seed):
    n = random.Random(f"unit-{seed}").randint(4, 20)
    return random_instance(seed, n, "tree", weights=(1, 1), lengths=(1, 9))


@lru_cache(maxsize=None)
def graph_results():
    out = []
    for seed in SEEDS:
        inst = graph_case(seed)
        out.append((seed, inst, oracle_solve(inst), solve_graph(inst).lam))
    return out


@lru_cache(maxsize=None)
def tree_results():
    out = []
    for seed in SEEDS:
        inst = tree_case(seed)
        out.append((seed, inst, oracle_solve(inst), solve_graph(inst).lam, solve_tree_weighted(inst).lam))
    return out


def test_c1_graph_oracle_equivalence(criterion):
    start = time.perf_counter()
    bad = [seed for seed, _, ref, got in graph_results() if got != ref]
    took = time.perf_counter() - start
    ok = not bad and took < 60
    criterion("1 graph solver = oracle on 200 connected graphs", ok, f"{len(bad)} mismatches, {took:.1f}s")
    assert ok, bad


def test_c2_tree_oracle_equivalence(criterion):
    start = time.perf_counter()
    bad = [seed for seed, _, ref, g, t in tree_results() if not (ref == g == t)]
    took = time.perf_counter() - start
    ok = not bad and took < 60
    criterion("2 tree solver = graph solver = oracle on 200 trees", ok, f"{len(bad)} mismatches, {took:.1f}s")
    assert ok, bad


def test_c3_unweighted_consistency(criterion):
    start = time.perf_counter()
    bad = []
    for seed in SEEDS:
        pruned = prune_unpaired_leaves(unit_tree_case(seed))
        lam = solve_tree_unweighted(pruned).lam
        if lam != solve_tree_weighted(normalize(pruned)).lam or lam > unweighted_center(pruned).radius:
            bad.append(seed)
    took = time.perf_counter() - start
    ok = not bad and took < 30
    criterion("3 unweighted = weighted and lambda <= eps* on 200 unit trees", ok,
              f"{len(bad)} mismatches, {took:.1f}s")
    assert ok, bad


def test_c4_pierce_fuzz(criterion):
    start = time.perf_counter()
    bad = []
    for seed in range(1000):
        box, sets = random_rectangle_sets(seed, k_max=6)
        got, ref = pierce(box, sets), oracle_pierce(box, sets)
        if (got is None) != (ref is None) or (got is not None and not all(s.hit(*got) for s in sets)):
            bad.append(seed)
    took = time.perf_counter() - start
    ok = not bad and took < 30
    criterion("4 pierce agrees with the brute-force piercer on 1000 families", ok,
              f"{len(bad)} mismatches, {took:.1f}s")
    assert ok, bad


def test_c5_candidate_completeness(criterion):
    bad = []
    for seed, inst, ref, _ in graph_results():
        if ref not in candidate_values_graph(inst):
            bad.append(("graph", seed))
    for seed, inst, ref, _, _ in tree_results():
        if ref not in candidate_values_graph(inst):
            bad.append(("tree", seed))
        loc = locate_center_edges(inst)
        if ref not in candidate_values_edge_pair(inst, loc.e1, loc.e2):
            bad.append(("edges", seed))
    ok = not bad
    criterion("5 optimum lies in the candidate sets (graph-wide and located edge pair)", ok,
              f"{len(bad)} misses")
    assert ok, bad


def _bracket_ok(inst, lam, feasible):
    values = candidate_values_graph(inst)
    i = values.index(lam)
    if feasible(inst, lam) is None:
        return False
    return i == 0 or feasible(inst, values[i - 1]) is None


def test_c6_feasibility_bracket(criterion):
    bad = []
    for seed, inst, ref, _ in graph_results():
        if not _bracket_ok(inst, ref, feasibility_graph):
            bad.append(("graph", seed))
    for seed, inst, ref, _, _ in tree_results():
        if not _bracket_ok(inst, ref, feasibility_graph):
            bad.append(("graph-on-tree", seed))
        if not _bracket_ok(inst, ref, feasibility_tree):
            bad.append(("tree", seed))
    ok = not bad
    criterion("6 feasible at lambda*, infeasible at the preceding candidate", ok, f"{len(bad)} failures")
    assert ok, bad


def test_c7_lazy_min_tree_replay(criterion):
    rng = random.Random(7)
    keys = sorted(rng.sample(range(10 ** 6), 300))
    tree = LazyMinTree(keys)
    ref = [0] * len(keys)
    bad = 0
    for _ in range(10 ** 4):
        i, j = sorted(rng.randrange(len(keys)) for _ in range(2))
        lo_open, hi_open = rng.random() < 0.5, rng.random() < 0.5
        c = rng.choice((-1, 1, 2))
        tree.range_add(keys[i], keys[j], c, lo_open, hi_open)
        for x in range(i + lo_open, j + 1 - hi_open):
            ref[x] += c
        if tree.global_min() != min(ref):
            bad += 1
    ok = bad == 0
    criterion("7 LazyMinTree matches a naive array over 10^4 range-adds", ok, f"{bad} divergent steps")
    assert ok


def _inside(inst, report, j, p: EdgePoint):
    members = report.members(j)
    v = point_vertex(inst, p)
    if v is not None:
        return v in members
    a, b, _ = inst.graph.edges[p.edge]
    return a in members and b in members


def _region_sound(inst, report, placements):
    j1, j2 = report.designated
    for q1, q2 in placements:
        for p1, p2 in ((q1, q2), (q2, q1)):
            if _inside(inst, report, j1, p1) and _inside(inst, report, j2, p2):
                return True
    return False


def test_c8_region_soundness(criterion):
    bad = []
    for seed in range(100):
        inst = tree_case(1000 + seed)
        ref = oracle_solve(inst)
        report = locate_center_subtrees(inst, centroid(inst))
        if report.verdict is not None:
            sound = report.verdict == ref
        else:
            sound = _region_sound(inst, report, optimal_placements(inst))
        if not sound:
            bad.append(seed)
    ok = not bad
    criterion("8 centroid regions hold an optimal placement (or the verdict is optimal)", ok,
              f"{len(bad)} unsound reports")
    assert ok, bad


@pytest.mark.parametrize(
    "label, build, run, limit",
    [
        ("graph solver, n=40 m=80",
         lambda: normalize(random_instance(40, 40, "connected-graph", 80)), solve_graph, 10),
        ("weighted tree solver, n=10^4",
         lambda: random_instance(41, 10 ** 4, "tree"), lambda i: solve_tree_weighted(normalize(i)), 5),
        ("unweighted tree solver, n=10^5",
         lambda: random_instance(42, 10 ** 5, "tree", weights=(1, 1)), solve_tree_unweighted, 2),
    ],
)
def test_wall_clock_guards(criterion, label, build, run, limit):
    inst = build()
    start = time.perf_counter()
    run(inst)
    took = time.perf_counter() - start
    ok = took < limit
    criterion(f"wall clock: {label} under {limit}s", ok, f"{took:.2f}s")
    assert ok
