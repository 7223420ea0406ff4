"""Weighted vertex-to-point distance functions restricted to one edge.

Along edge e = (a, b) with a < b, a point is described by its offset t from a.
For a vertex v the weighted distance is ``w(v) * min(d(v,a) + t, d(v,b) + l - t)``:
a rising piece, a falling piece, or one rising then falling with a peak at the
semicircular point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Set, Tuple

from .model import Instance, Scalar, ratio, simplify


@dataclass(frozen=True)
class LinearPiece:
    slope: Scalar
    intercept: Scalar
    t_lo: Scalar
    t_hi: Scalar

    def __call__(self, t: Scalar) -> Scalar:
        return self.slope * t + self.intercept


@dataclass(frozen=True)
class EdgeDistanceFunction:
    vertex: int
    edge: int
    weight: Scalar
    length: Scalar
    d_lo: Scalar  # distance from the vertex to the lower-indexed endpoint
    d_hi: Scalar
    pieces: Tuple[LinearPiece, ...]
    breakpoint: Optional[Scalar]

    def __call__(self, t: Scalar) -> Scalar:
        return self.weight * min(self.d_lo + t, self.d_hi + self.length - t)

    @property
    def rising(self) -> Optional[LinearPiece]:
        return next((p for p in self.pieces if p.slope > 0), None)

    @property
    def falling(self) -> Optional[LinearPiece]:
        return next((p for p in self.pieces if p.slope < 0), None)


def _pieces(w: Scalar, da: Scalar, db: Scalar, length: Scalar):
    """(pieces, breakpoint) of w*min(da + t, db + length - t) on [0, length]."""
    tstar = ratio(db + length - da, 2)
    up = LinearPiece(w, w * da, 0, length)
    down = LinearPiece(-w, w * (db + length), 0, length)
    if tstar <= 0:
        return (down,), None
    if tstar >= length:
        return (up,), None
    return (LinearPiece(w, w * da, 0, tstar), LinearPiece(-w, w * (db + length), tstar, length)), tstar


def distance_function(instance: Instance, v: int, e: int) -> EdgeDistanceFunction:
    a, b, length = instance.graph.edges[e]
    w = instance.weights[v]
    da, db = instance.d(v, a), instance.d(v, b)
    pieces, tstar = _pieces(w, da, db, length)
    return EdgeDistanceFunction(v, e, w, length, da, db, pieces, tstar)


@dataclass(frozen=True)
class FeasibleIntervals:
    """Solution set of w(v) d(v, x) <= lam on one edge.

    ``i1`` is [0, a] (touching the lower endpoint), ``i2`` is [b, l].  The whole
    edge is always reported as ``i1 = (0, l)`` with ``i2`` absent.
    """

    length: Scalar
    i1: Optional[Tuple[Scalar, Scalar]]
    i2: Optional[Tuple[Scalar, Scalar]]

    @property
    def empty(self) -> bool:
        return self.i1 is None and self.i2 is None

    def intervals(self) -> List[Tuple[Scalar, Scalar]]:
        return [iv for iv in (self.i1, self.i2) if iv is not None]

    def __contains__(self, t: Scalar) -> bool:
        return any(lo <= t <= hi for lo, hi in self.intervals())


def interval_bounds(w: Scalar, da: Scalar, db: Scalar, length: Scalar, lam: Scalar):
    """(a, b) with i1 = [0, a], i2 = [b, l]; None marks an absent interval.

    The whole edge comes back as (length, None).
    """
    if w == 0:
        return length, None
    r = ratio(lam, w)
    a = r - da if r >= da else None
    b = length - (r - db) if r >= db else None
    if a is not None and a >= length:
        return length, None
    if b is not None and b <= 0:
        return length, None
    if a is not None and b is not None and a >= b:
        return length, None
    return (simplify(a) if a is not None else None), (simplify(b) if b is not None else None)


def feasible_intervals(instance: Instance, v: int, e: int, lam: Scalar) -> FeasibleIntervals:
    a_, b_, length = instance.graph.edges[e]
    a, b = interval_bounds(instance.weights[v], instance.d(v, a_), instance.d(v, b_), length, lam)
    return FeasibleIntervals(length, None if a is None else (0, a), None if b is None else (b, length))


def edge_candidate_values(instance: Instance, e: int, vertices: Optional[Iterable[int]] = None) -> Set[Scalar]:
    """Candidate objective values contributed by the distance functions on one edge."""
    fns = [distance_function(instance, v, e) for v in (range(instance.n) if vertices is None else vertices)]
    out: Set[Scalar] = {0}
    rising = []
    falling = []
    for f in fns:
        out.add(f(0))
        out.add(f(f.length))
        if f.breakpoint is not None:
            out.add(simplify(f(f.breakpoint)))
        if f.weight == 0:
            continue
        if f.rising is not None:
            rising.append((f.vertex, f.weight, f.d_lo))
        if f.falling is not None:
            falling.append((f.vertex, f.weight, f.d_hi))
    length = instance.graph.length(e)
    for v, wv, dv in rising:
        for u, wu, du in falling:
            if u == v:
                continue
            # wv (dv + t) = wu (du + l - t)
            out.add(ratio((dv + du + length) * wv * wu, wv + wu))
    return out


def candidate_values_graph(instance: Instance) -> List[Scalar]:
    values: Set[Scalar] = set()
    for e in range(instance.m):
        values |= edge_candidate_values(instance, e)
    return sort_scalars(values)


def candidate_values_edge_pair(instance: Instance, e1: int, e2: int) -> List[Scalar]:
    values = edge_candidate_values(instance, e1)
    if e2 != e1:
        values |= edge_candidate_values(instance, e2)
    return sort_scalars(values)


def sort_scalars(values: Iterable[Scalar]) -> List[Scalar]:
    # float first is a cheap monotone key; exact comparison only breaks float ties
    return sorted(values, key=lambda x: (float(x), x))
