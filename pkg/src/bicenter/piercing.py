"""Piercing families of corner-anchored rectangles with a sweep line.

Each family is a :class:`RectangleSet`.  A point *hits* a family when it lies in
one of its (closed) rectangles; :func:`pierce` looks for a point of the box that
hits every family.

Sweeping a vertical line from left to right, the part of the line covered by a
family always has the form ``[0, A] u [B, Y]`` because every rectangle touches
the bottom or the top of the box.  Its complement is a single interval, open at
its interior ends.  A :class:`LazyMinTree` over the y-coordinates counts, for
each key, how many families leave it uncovered; a zero count is a hit.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .geometry import interval_bounds
from .model import Instance, Scalar

Point = Tuple[Scalar, Scalar]


@dataclass(frozen=True)
class Box:
    x_max: Scalar
    y_max: Scalar

    def __post_init__(self):
        if not (self.x_max > 0 and self.y_max > 0):
            raise ValueError("box sides must be positive")


@dataclass(frozen=True)
class CornerRectangle:
    x_lo: Scalar
    x_hi: Scalar
    y_lo: Scalar
    y_hi: Scalar

    def contains(self, x: Scalar, y: Scalar) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def covers(self, other: "CornerRectangle") -> bool:
        return (self.x_lo <= other.x_lo and other.x_hi <= self.x_hi
                and self.y_lo <= other.y_lo and other.y_hi <= self.y_hi)


@dataclass(frozen=True)
class RectangleSet:
    index: int
    rectangles: Tuple[CornerRectangle, ...]

    def hit(self, x: Scalar, y: Scalar) -> bool:
        return any(r.contains(x, y) for r in self.rectangles)


def check_rectangle_set(box: Box, rs: RectangleSet) -> None:
    if len(rs.rectangles) > 8:
        raise ValueError(f"set {rs.index} holds {len(rs.rectangles)} rectangles (at most 8)")
    for r in rs.rectangles:
        if not (0 <= r.x_lo <= r.x_hi <= box.x_max and 0 <= r.y_lo <= r.y_hi <= box.y_max):
            raise ValueError(f"set {rs.index}: rectangle {r} leaves the box")
        if not ((r.x_lo == 0 or r.x_hi == box.x_max) and (r.y_lo == 0 or r.y_hi == box.y_max)):
            raise ValueError(f"set {rs.index}: rectangle {r} shares no corner with the box")


# --------------------------------------------------------------------------
# lazy segment tree


class LazyMinTree:
    """Range-add / global-min over a sorted list of keys.

    ``_min[node]`` already includes every addend applied at or above the node;
    ``_lazy[node]`` is the part still owed to its children.
    """

    def __init__(self, keys: Sequence[Scalar], initial: int = 0):
        self.keys = list(keys)
        if any(self.keys[i] >= self.keys[i + 1] for i in range(len(self.keys) - 1)):
            raise ValueError("keys must be strictly increasing")
        if not self.keys:
            raise ValueError("at least one key is required")
        self._n = len(self.keys)
        size = 4 * self._n
        self._min = [initial] * size
        self._lazy = [0] * size

    def _index_range(self, lo, hi, lo_open: bool, hi_open: bool) -> Tuple[int, int]:
        keys = self.keys
        if lo == -math.inf:
            i = 0
        else:
            i = bisect_left(keys, lo)
            if i == len(keys) or keys[i] != lo:
                raise KeyError(f"unknown boundary key {lo}")
            if lo_open:
                i += 1
        if hi == math.inf:
            j = len(keys) - 1
        else:
            j = bisect_left(keys, hi)
            if j == len(keys) or keys[j] != hi:
                raise KeyError(f"unknown boundary key {hi}")
            if hi_open:
                j -= 1
        return i, j

    def range_add(self, lo, hi, c: int, lo_open: bool = False, hi_open: bool = False) -> None:
        i, j = self._index_range(lo, hi, lo_open, hi_open)
        if i <= j:
            self._add(1, 0, self._n - 1, i, j, c)

    def _add(self, node: int, l: int, r: int, i: int, j: int, c: int) -> None:
        if i <= l and r <= j:
            self._min[node] += c
            self._lazy[node] += c
            return
        mid = (l + r) // 2
        left, right = 2 * node, 2 * node + 1
        z = self._lazy[node]
        if z:
            self._min[left] += z
            self._lazy[left] += z
            self._min[right] += z
            self._lazy[right] += z
            self._lazy[node] = 0
        if i <= mid:
            self._add(left, l, mid, i, j, c)
        if j > mid:
            self._add(right, mid + 1, r, i, j, c)
        a, b = self._min[left], self._min[right]
        self._min[node] = a if a < b else b

    def global_min(self) -> int:
        return self._min[1]

    def argmin_key(self) -> Scalar:
        """Lowest key whose count equals the global minimum."""
        node, l, r = 1, 0, self._n - 1
        target = self._min[1]
        carry = 0
        while l < r:
            carry += self._lazy[node]
            mid = (l + r) // 2
            left = 2 * node
            if self._min[left] + carry == target:
                node, r = left, mid
            else:
                node, l = left + 1, mid + 1
        return self.keys[l]

    def values(self) -> List[int]:
        out = []
        self._collect(1, 0, self._n - 1, 0, out)
        return out

    def _collect(self, node: int, l: int, r: int, carry: int, out: List[int]) -> None:
        if l == r:
            out.append(self._min[node] + carry)
            return
        mid = (l + r) // 2
        carry += self._lazy[node]
        self._collect(2 * node, l, mid, carry, out)
        self._collect(2 * node + 1, mid + 1, r, carry, out)


# --------------------------------------------------------------------------
# sweep


def _complement(active: Sequence[CornerRectangle], y_max: Scalar):
    """Uncovered part of the sweep line as (lo, hi, lo_open, hi_open), or None if fully covered."""
    a = b = None
    for r in active:
        if r.y_lo == 0 and (a is None or r.y_hi > a):
            a = r.y_hi
        if r.y_hi == y_max and (b is None or r.y_lo < b):
            b = r.y_lo
    if a is None and b is None:
        return (0, y_max, False, False)
    if a is None:
        return None if b <= 0 else (0, b, False, True)
    if b is None:
        return None if a >= y_max else (a, y_max, True, False)
    return None if a >= b else (a, b, True, True)


def sweep(box: Box, sets: Sequence[RectangleSet]) -> Iterator[Tuple[Scalar, LazyMinTree]]:
    """Yield (x, tree) at each event after the rectangles starting at x are in place.

    The tree then counts, per y-key, the families that miss the point (x, key).
    """
    k = len(sets)
    xs = {0, box.x_max}
    ys = {0, box.y_max}
    starts: Dict[Scalar, List[int]] = defaultdict(list)
    ends: Dict[Scalar, List[int]] = defaultdict(list)
    for i, s in enumerate(sets):
        for r in s.rectangles:
            xs.add(r.x_lo)
            xs.add(r.x_hi)
            ys.add(r.y_lo)
            ys.add(r.y_hi)
            starts[r.x_lo].append(i)
            ends[r.x_hi].append(i)
    tree = LazyMinTree(sorted(ys), initial=k)
    whole = (0, box.y_max, False, False)
    current = [whole] * k

    def update(i: int, new) -> None:
        old = current[i]
        if old == new:
            return
        if old is not None:
            tree.range_add(old[0], old[1], -1, old[2], old[3])
        if new is not None:
            tree.range_add(new[0], new[1], 1, new[2], new[3])
        current[i] = new

    for x in sorted(xs):
        for i in set(starts.get(x, ())):
            active = [r for r in sets[i].rectangles if r.x_lo <= x <= r.x_hi]
            update(i, _complement(active, box.y_max))
        yield x, tree
        for i in set(ends.get(x, ())):
            active = [r for r in sets[i].rectangles if r.x_lo <= x < r.x_hi]
            update(i, _complement(active, box.y_max))


def pierce(box: Box, sets: Sequence[RectangleSet]) -> Optional[Point]:
    """A point of the closed box hitting every set, or None."""
    if not sets:
        return (0, 0)
    for s in sets:
        check_rectangle_set(box, s)
    for x, tree in sweep(box, sets):
        if tree.global_min() == 0:
            return x, tree.argmin_key()
    return None


# --------------------------------------------------------------------------
# rectangle sets of one pair on an edge pair


def _product(xs, ys) -> List[CornerRectangle]:
    return [CornerRectangle(x0, x1, y0, y1) for x0, x1 in xs for y0, y1 in ys]


def _intervals(bounds, length) -> List[Tuple[Scalar, Scalar]]:
    a, b = bounds
    out = []
    if a is not None:
        out.append((0, a))
    if b is not None:
        out.append((b, length))
    return out


def rectangles_from_bounds(index: int, v_e1, u_e2, u_e1, v_e2, l1, l2) -> Optional[RectangleSet]:
    """RectangleSet from the interval bounds of both orientations (see interval_bounds)."""
    rects = _product(_intervals(v_e1, l1), _intervals(u_e2, l2))
    rects += _product(_intervals(u_e1, l1), _intervals(v_e2, l2))
    if not rects:
        return None
    kept: List[CornerRectangle] = []
    for r in rects:
        if any(o.covers(r) for o in kept):
            continue
        kept = [o for o in kept if not r.covers(o)]
        kept.append(r)
    return RectangleSet(index, tuple(kept))


def build_rectangle_set(instance: Instance, i: int, e1: int, e2: int, lam: Scalar) -> Optional[RectangleSet]:
    """Pair i's rectangles on the box l(e1) x l(e2); None when neither orientation fits."""
    g = instance.graph
    a1, b1, l1 = g.edges[e1]
    a2, b2, l2 = g.edges[e2]
    v, u = instance.pairs[i]
    w = instance.weights
    d = instance.d

    def bounds(x, a, b, length):
        return interval_bounds(w[x], d(x, a), d(x, b), length, lam)

    return rectangles_from_bounds(
        i, bounds(v, a1, b1, l1), bounds(u, a2, b2, l2), bounds(u, a1, b1, l1), bounds(v, a2, b2, l2), l1, l2
    )
