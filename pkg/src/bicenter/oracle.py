"""Brute-force references.  Slow on purpose, exact, and independent of the solvers.

The candidate center points are, per edge, both endpoints plus every point where
two extended distance-function lines cross inside the edge.  Some optimal pair
of centers always sits on such points, so minimising over all pairs of them
gives the optimum.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .model import EdgePoint, Instance, Scalar, canonical_point, simplify
from .piercing import Box, RectangleSet

DEFAULT_CAP = 12
_CHUNK = 256


class OracleTooLarge(ValueError):
    pass


def oracle_cap() -> int:
    raw = os.environ.get("BICENTER_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_CAP


def _guard(instance: Instance, cap: Optional[int]) -> None:
    cap = oracle_cap() if cap is None else cap
    if instance.n > cap:
        raise OracleTooLarge(f"oracle refuses n = {instance.n} (cap {cap}; set BICENTER_ORACLE_CAP)")


def _edge_lines(instance: Instance, e: int):
    """Both full lines of every vertex's distance function on e, as (slope, intercept)."""
    a, b, length = instance.graph.edges[e]
    lines = set()
    for v in range(instance.n):
        w = instance.weights[v]
        da, db = instance.d(v, a), instance.d(v, b)
        lines.add((w, w * da))
        lines.add((-w, w * (db + length)))
    return sorted(lines)


def candidate_points(instance: Instance) -> List[EdgePoint]:
    seen = set()
    points = []

    def add(p: EdgePoint) -> None:
        p = canonical_point(instance, p)
        if p not in seen:
            seen.add(p)
            points.append(p)

    for e in range(instance.m):
        length = instance.graph.length(e)
        add(EdgePoint(e, 0))
        add(EdgePoint(e, length))
        lines = _edge_lines(instance, e)
        for i in range(len(lines)):
            s1, c1 = lines[i]
            for j in range(i + 1, len(lines)):
                s2, c2 = lines[j]
                if s1 == s2:
                    continue
                t = Fraction(c2 - c1) / Fraction(s1 - s2)
                if 0 < t < length:
                    add(EdgePoint(e, simplify(t)))
    return points


def _weighted_distance_matrix(instance: Instance, points: Sequence[EdgePoint]) -> np.ndarray:
    """W[p, v] = w(v) d(v, p), scaled to integers by a common denominator."""
    g = instance.graph
    rows = []
    for p in points:
        a, b, length = g.edges[p.edge]
        rows.append([instance.weights[v] * min(instance.d(v, a) + p.t, instance.d(v, b) + length - p.t)
                     for v in range(instance.n)])
    den = 1
    for row in rows:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
    scaled = [[int(x * den) for x in row] for row in rows]
    big = max((max(r) for r in scaled), default=0)
    dtype = np.int64 if big < 2 ** 62 else object
    return np.array(scaled, dtype=dtype), den


def _min_over_pairs(W: np.ndarray, pairs: Sequence[Tuple[int, int]]) -> Tuple[int, int, int]:
    """min over (p1, p2) of max_i phi_i, with the arg-min pair of point indices."""
    P = W.shape[0]
    vs = [v for v, _ in pairs]
    us = [u for _, u in pairs]
    Wv, Wu = W[:, vs], W[:, us]
    best = None
    where = (0, 0)
    for start in range(0, P, _CHUNK):
        stop = min(P, start + _CHUNK)
        a = np.maximum(Wv[start:stop, None, :], Wu[None, :, :])
        b = np.maximum(Wu[start:stop, None, :], Wv[None, :, :])
        cost = np.minimum(a, b).max(axis=2)
        idx = int(np.argmin(cost))
        val = cost.flat[idx]
        if best is None or val < best:
            best = val
            where = (start + idx // P, idx % P)
    return int(best), where[0], where[1]


def oracle_solve_with_points(instance: Instance, cap: Optional[int] = None) -> Tuple[Scalar, EdgePoint, EdgePoint]:
    _guard(instance, cap)
    if not instance.pairs:
        p = EdgePoint(0, 0)
        return 0, p, p
    points = candidate_points(instance)
    W, den = _weighted_distance_matrix(instance, points)
    best, i, j = _min_over_pairs(W, instance.pairs)
    return simplify(Fraction(best, den)), points[i], points[j]


def oracle_solve(instance: Instance, cap: Optional[int] = None) -> Scalar:
    return oracle_solve_with_points(instance, cap)[0]


def optimal_placements(instance: Instance, cap: Optional[int] = None) -> List[Tuple[EdgePoint, EdgePoint]]:
    """Every candidate-point pair that attains the optimum."""
    _guard(instance, cap)
    points = candidate_points(instance)
    if not instance.pairs:
        return [(p, q) for p in points for q in points]
    W, _ = _weighted_distance_matrix(instance, points)
    best, _, _ = _min_over_pairs(W, instance.pairs)
    vs = [v for v, _ in instance.pairs]
    us = [u for _, u in instance.pairs]
    Wv, Wu = W[:, vs], W[:, us]
    out = []
    P = len(points)
    for start in range(0, P, _CHUNK):
        stop = min(P, start + _CHUNK)
        a = np.maximum(Wv[start:stop, None, :], Wu[None, :, :])
        b = np.maximum(Wu[start:stop, None, :], Wv[None, :, :])
        cost = np.minimum(a, b).max(axis=2)
        for i, j in zip(*np.nonzero(cost == best)):
            out.append((points[start + int(i)], points[int(j)]))
    return out


_feasible_memo: Dict[Instance, Scalar] = {}


def oracle_feasible(instance: Instance, lam: Scalar, cap: Optional[int] = None) -> bool:
    if instance not in _feasible_memo:
        _feasible_memo[instance] = oracle_solve(instance, cap)
    return _feasible_memo[instance] <= lam


def oracle_solve_by_assignment(instance: Instance, cap: Optional[int] = None) -> Scalar:
    """Try every split of the pairs into a red and a blue set; solve each side as a one-center problem.

    Exponential in k, so only meant for k <= 3 or so.
    """
    _guard(instance, cap)
    if not instance.pairs:
        return 0
    points = candidate_points(instance)
    g = instance.graph
    cost: List[List[Scalar]] = []
    for p in points:
        a, b, length = g.edges[p.edge]
        cost.append([instance.weights[v] * min(instance.d(v, a) + p.t, instance.d(v, b) + length - p.t)
                     for v in range(instance.n)])
    best: Optional[Scalar] = None
    for flips in product((False, True), repeat=instance.k):
        red = [u if f else v for (v, u), f in zip(instance.pairs, flips)]
        blue = [v if f else u for (v, u), f in zip(instance.pairs, flips)]
        r = min(max(row[x] for x in red) for row in cost)
        s = min(max(row[x] for x in blue) for row in cost)
        val = max(r, s)
        if best is None or val < best:
            best = val
    return simplify(best)


def oracle_pierce(box: Box, sets: Sequence[RectangleSet]) -> Optional[Tuple[Scalar, Scalar]]:
    xs = {0, box.x_max}
    ys = {0, box.y_max}
    for s in sets:
        for r in s.rectangles:
            xs.update((r.x_lo, r.x_hi))
            ys.update((r.y_lo, r.y_hi))
    for x in sorted(xs):
        for y in sorted(ys):
            if all(s.hit(x, y) for s in sets):
                return x, y
    return None
