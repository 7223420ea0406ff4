from fractions import Fraction as F

import pytest
from hypothesis import given

from bicenter import (
    Box,
    CornerRectangle,
    OracleTooLarge,
    RectangleSet,
    normalize,
    objective,
    oracle_feasible,
    oracle_pierce,
    oracle_solve,
    oracle_solve_by_assignment,
    random_instance,
)
from bicenter.oracle import candidate_points, optimal_placements, oracle_cap

from conftest import path, small_instances


def test_solve_examples(unit_path, weighted_path):
    assert oracle_solve(unit_path) == F(1, 2)
    assert oracle_solve(weighted_path) == F(2, 3)
    assert oracle_solve(path([5, 1, 1, 4], pairs=[(0, 3)])) == 0


def test_feasible_examples(unit_path):
    lam = oracle_solve(unit_path)
    assert oracle_feasible(unit_path, lam)
    assert not oracle_feasible(unit_path, lam - F(1, 10 ** 6))
    assert not oracle_feasible(unit_path, 0)


def test_pierce_examples():
    box = Box(1, 1)
    assert oracle_pierce(box, [RectangleSet(0, (CornerRectangle(0, 1, 0, 1),))]) == (0, 0)
    apart = [
        RectangleSet(0, (CornerRectangle(0, F(2, 5), 0, F(2, 5)),)),
        RectangleSet(1, (CornerRectangle(F(3, 5), 1, F(3, 5), 1),)),
    ]
    assert oracle_pierce(box, apart) is None
    halves = [
        RectangleSet(0, (CornerRectangle(0, F(1, 2), 0, 1),)),
        RectangleSet(1, (CornerRectangle(F(1, 2), 1, 0, 1),)),
    ]
    assert oracle_pierce(box, halves)[0] == F(1, 2)


def test_size_guard(monkeypatch):
    big = random_instance(1, 14, "tree")
    with pytest.raises(OracleTooLarge):
        oracle_solve(big)
    monkeypatch.setenv("BICENTER_ORACLE_CAP", "20")
    assert oracle_cap() == 20
    assert oracle_solve(big) >= 0


def test_candidate_points_include_vertices(unit_path):
    pts = candidate_points(unit_path)
    assert len(pts) == len(set(pts))
    assert len(pts) >= unit_path.n


@given(small_instances(max_n=6))
def test_two_oracles_agree(inst):
    work = normalize(inst)
    if work.k <= 3:
        assert oracle_solve_by_assignment(work) == oracle_solve(work)


@given(small_instances(max_n=5))
def test_placements_attain_the_optimum(inst):
    lam = oracle_solve(inst)
    placements = optimal_placements(inst)
    assert placements
    for q1, q2 in placements[:20]:
        assert objective(inst, q1, q2) == lam
