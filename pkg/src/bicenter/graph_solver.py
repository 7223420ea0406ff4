"""Two-center search on general graphs.

For a fixed lambda and a pair of edges (e1, e2) each pair of vertices turns into a
family of corner rectangles in the box l(e1) x l(e2); lambda is feasible on that
edge pair exactly when some point pierces every family.  The optimum is the
smallest feasible candidate value.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from .geometry import candidate_values_graph, interval_bounds
from .model import EdgePoint, Instance, Scalar, Solution, make_solution
from .piercing import Box, pierce, rectangles_from_bounds

Witness = Tuple[EdgePoint, EdgePoint]


class _Level:
    """Feasible-interval bounds of every (vertex, edge) under one lambda."""

    def __init__(self, instance: Instance, lam: Scalar):
        self.instance = instance
        self.lam = lam
        g = instance.graph
        n, m = g.n, g.m
        dist = instance.dist
        w = instance.weights
        self.bounds = [[None] * m for _ in range(n)]
        has = np.zeros((n, m), dtype=bool)
        for e, (a, b, length) in enumerate(g.edges):
            for v in range(n):
                bd = interval_bounds(w[v], dist[v][a], dist[v][b], length, lam)
                self.bounds[v][e] = bd
                has[v, e] = bd[0] is not None or bd[1] is not None
        if instance.pairs:
            vs = [v for v, _ in instance.pairs]
            us = [u for _, u in instance.pairs]
            hv, hu = has[vs], has[us]
            # an edge pair survives only if every pair has some orientation with both sides reachable
            ok = (hv[:, :, None] & hu[:, None, :]) | (hu[:, :, None] & hv[:, None, :])
            self.viable = ok.all(axis=0)
        else:
            self.viable = np.ones((m, m), dtype=bool)

    def local(self, e1: int, e2: int) -> Optional[Witness]:
        if not self.viable[e1, e2]:
            return None
        g = self.instance.graph
        l1, l2 = g.edges[e1][2], g.edges[e2][2]
        bd = self.bounds
        sets = []
        for i, (v, u) in enumerate(self.instance.pairs):
            rs = rectangles_from_bounds(i, bd[v][e1], bd[u][e2], bd[u][e1], bd[v][e2], l1, l2)
            if rs is None:
                return None
            sets.append(rs)
        if not _projections_meet(sets, l1, l2):
            return None
        hit = pierce(Box(l1, l2), sets)
        if hit is None:
            return None
        return EdgePoint(e1, hit[0]), EdgePoint(e2, hit[1])


def _projections_meet(sets, l1, l2) -> bool:
    """Cheap necessary condition: the x- and y-shadows of all families share a point."""
    for axis, length in ((0, l1), (1, l2)):
        gaps = []
        for s in sets:
            lo_reach = hi_reach = None  # largest prefix end, smallest suffix start
            for r in s.rectangles:
                lo, hi = (r.x_lo, r.x_hi) if axis == 0 else (r.y_lo, r.y_hi)
                if lo == 0 and (lo_reach is None or hi > lo_reach):
                    lo_reach = hi
                if hi == length and (hi_reach is None or lo < hi_reach):
                    hi_reach = lo
            a = -1 if lo_reach is None else lo_reach
            b = length + 1 if hi_reach is None else hi_reach
            if a < b:
                gaps.append((a, b))
        if _gaps_cover(gaps, length):
            return False
    return True


def _gaps_cover(gaps, length) -> bool:
    """Do the open gaps (a, b) cover all of [0, length]?"""
    reach = None  # everything up to and excluding `reach` is covered
    for a, b in sorted(gaps):
        if reach is None:
            if a >= 0:
                return False
            reach = b
        elif a < reach:
            if b > reach:
                reach = b
        else:
            return False
        if reach > length:
            return True
    return False


def local_feasibility(instance: Instance, e1: int, e2: int, lam: Scalar) -> Optional[Witness]:
    return _Level(instance, lam).local(e1, e2)


def _feasible(level: _Level) -> Optional[Witness]:
    m = level.instance.m
    for e1 in range(m):
        for e2 in range(e1, m):
            found = level.local(e1, e2)
            if found is not None:
                return found
    return None


def feasibility_graph(instance: Instance, lam: Scalar) -> Optional[Witness]:
    """A witness (q1, q2) with every pair cost at most lam, or None."""
    return _feasible(_Level(instance, lam))


def smallest_feasible(values: List[Scalar], feasible) -> Tuple[int, object]:
    """Binary search a sorted list for the first value whose test is truthy.

    Returns (index, result); index is len(values) when none passes.
    """
    lo, hi = 0, len(values)
    found = None
    while lo < hi:
        mid = (lo + hi) // 2
        res = feasible(values[mid])
        if res is not None:
            hi = mid
            found = res
        else:
            lo = mid + 1
    return lo, found


def solve_graph(instance: Instance) -> Solution:
    values = candidate_values_graph(instance)
    idx, witness = smallest_feasible(values, lambda lam: feasibility_graph(instance, lam))
    if witness is None:
        raise RuntimeError("no candidate value is feasible")
    lam = values[idx]
    return make_solution(instance, lam, witness[0], witness[1], "graph")
