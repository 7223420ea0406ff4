"""Linear-time two-center for trees where every paired vertex has the same weight.

After unpaired leaves are stripped, every leaf is paired.  The one-center q* of
the tree is the midpoint of a longest path; the vertices at distance eps* from it
are the key vertices.  Either both centers can sit at q*, or each center is the
midpoint of a longest path inside its own group, which starts at a key vertex.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .model import (
    EdgePoint,
    Graph,
    Instance,
    InstanceError,
    Scalar,
    Solution,
    simplify,
    vertex_point,
)


class _Tree:
    """A tree with some vertices masked out (pruned leaves).

    Distances are integers in units of 1/scale.  Traversals run through scipy's
    Dijkstra when every distance fits exactly in a float64, otherwise through
    a plain Python walk.
    """

    def __init__(self, instance: Instance, gone: Optional[Sequence[bool]] = None):
        self.instance = instance
        g = instance.graph
        self.n = g.n
        self.edges = g.edges
        scale = 1
        for _, _, length in g.edges:
            d = Fraction(length).denominator
            scale = scale * d // math.gcd(scale, d)
        self.scale = scale
        self.L = [int(length * scale) for _, _, length in g.edges]
        self.gone = list(gone) if gone is not None else [False] * g.n
        self.alive = [v for v in range(g.n) if not self.gone[v]]
        self._csr = None
        if sum(self.L) < 2 ** 52:
            rows = [u for u, _, _ in g.edges]
            cols = [v for _, v, _ in g.edges]
            self._csr = csr_matrix((np.array(self.L, dtype=np.float64), (rows, cols)), shape=(g.n, g.n))

    def walk(self, src: int) -> Tuple[List[int], List[int]]:
        """(dist, parent) from src; parent[src] = -1."""
        if self._csr is not None:
            dist, pred = dijkstra(self._csr, directed=False, indices=src, return_predecessors=True)
            d = np.rint(dist).astype(np.int64).tolist()
            p = pred.tolist()
            p[src] = -1
            return d, p
        n = self.n
        adj = self.instance.graph.adjacency
        L = self.L
        dist: List[Optional[int]] = [None] * n
        parent = [-1] * n
        dist[src] = 0
        order = [src]
        for u in order:
            du = dist[u]
            for v, e in adj[u]:
                if dist[v] is None:
                    dist[v] = du + L[e]
                    parent[v] = u
                    order.append(v)
        return dist, parent  # type: ignore[return-value]

    def farthest(self, dist) -> int:
        best = self.alive[0]
        for v in self.alive:
            if dist[v] > dist[best]:
                best = v
        return best

    def edge(self, u: int, v: int) -> int:
        return self.instance.graph.find_edge(u, v)

    def scalar(self, x: int) -> Scalar:
        return simplify(Fraction(x, self.scale))


def _strip(instance: Instance) -> List[bool]:
    """Mark unpaired leaves for removal, repeatedly."""
    n = instance.n
    gone = [False] * n
    if not instance.pairs:
        return gone
    adj = instance.graph.adjacency
    partner = instance.partner
    degree = [len(a) for a in adj]
    queue = deque(v for v in range(n) if degree[v] == 1 and partner[v] < 0)
    while queue:
        v = queue.popleft()
        gone[v] = True
        for u, _ in adj[v]:
            if not gone[u]:
                degree[u] -= 1
                if degree[u] == 1 and partner[u] < 0:
                    queue.append(u)
    return gone


def _require_tree(instance: Instance) -> None:
    if not instance.is_tree:
        raise InstanceError(f"not a tree: m = {instance.m}, n = {instance.n}")


def prune_unpaired_leaves(instance: Instance) -> Instance:
    """The tree left after repeatedly deleting unpaired leaves, vertices renumbered in id order."""
    _require_tree(instance)
    gone = _strip(instance)
    if not any(gone):
        return instance
    kept = [v for v in range(instance.n) if not gone[v]]
    new_id = {v: i for i, v in enumerate(kept)}
    edges = tuple((new_id[u], new_id[v], length) for u, v, length in instance.graph.edges
                  if not gone[u] and not gone[v])
    weights = tuple(instance.weights[v] for v in kept)
    pairs = tuple((new_id[v], new_id[u]) for v, u in instance.pairs)
    return Instance(Graph(weights, edges), pairs)


@dataclass(frozen=True)
class CenterInfo:
    """q*, eps* and the key vertices grouped by hanging subtree of q*."""

    point: EdgePoint
    radius: Scalar
    groups: Tuple[Tuple[int, ...], ...]


def _path_point(tree: _Tree, dist, parent, root: int, far: int, twice: int) -> EdgePoint:
    """Point at distance twice/2 (scaled) from ``root`` on the path towards ``far``."""
    if twice == 0:
        return vertex_point(tree.instance, root)
    v = far
    while 2 * dist[parent[v]] > twice:
        v = parent[v]
    p = parent[v]
    e = tree.edge(p, v)
    lo, _, length = tree.edges[e]
    from_p = Fraction(twice - 2 * dist[p], 2 * tree.scale)
    return EdgePoint(e, simplify(from_p if p == lo else length - from_p))


def _center(tree: _Tree) -> Tuple[CenterInfo, dict]:
    """The one-center and, for every key vertex, the index of its hanging subtree."""
    d0, _ = tree.walk(tree.alive[0])
    x = tree.farthest(d0)
    dx, px = tree.walk(x)
    y = tree.farthest(dx)
    diameter = dx[y]
    q = _path_point(tree, dx, px, x, y, diameter)
    dy, _ = tree.walk(y)
    # d(v, q*) = max(d(v, x), d(v, y)) - diameter / 2, so key vertices attain the diameter
    keys = [v for v in tree.alive if max(dx[v], dy[v]) == diameter]
    a, b, length = tree.edges[q.edge]
    side = {}
    if 0 < q.t < length:
        a_with_x = dx[a] < dy[a]
        count = 2
        for v in keys:
            on_x = dx[v] < dy[v]
            side[v] = 0 if on_x == a_with_x else 1
    else:
        c = a if q.t == 0 else b
        adj = tree.instance.graph.adjacency[c]
        count = len(adj)
        _, pc = tree.walk(c)
        top = {nb: i for i, (nb, _) in enumerate(adj)}
        for v in keys:
            path = []
            u = v
            while u not in side and pc[u] != c:
                path.append(u)
                u = pc[u]
            if u not in side:
                side[u] = top[u]
            for w in path:
                side[w] = side[u]
        side = {v: side[v] for v in keys}
    groups: List[List[int]] = [[] for _ in range(count)]
    for v in keys:
        groups[side[v]].append(v)
    info = CenterInfo(q, tree.scalar(Fraction(diameter, 2)), tuple(tuple(g) for g in groups))
    return info, side


def unweighted_center(instance: Instance) -> CenterInfo:
    """Midpoint of a longest path, half its length, and the key vertices per side."""
    _require_tree(instance)
    _common_weight(instance)
    return _center(_Tree(instance))[0]


def _common_weight(instance: Instance) -> Scalar:
    ws = {instance.weights[v] for v in range(instance.n) if instance.partner[v] >= 0}
    if len(ws) > 1:
        raise InstanceError("paired vertices carry different weights")
    return next(iter(ws)) if ws else 0


def solve_tree_unweighted(instance: Instance) -> Solution:
    """Works on the input ids directly; unpaired leaves are masked rather than deleted."""
    _require_tree(instance)
    c = _common_weight(instance)
    if not instance.pairs or c == 0:
        p = vertex_point(instance, 0)
        return Solution(0, p, p, tuple(v for v, _ in instance.pairs), "tree-unweighted")
    tree = _Tree(instance, _strip(instance))
    info, side = _center(tree)
    lam, q1, q2, to_q1 = _split(tree, info, side)
    return Solution(simplify(c * lam), q1, q2, to_q1, "tree-unweighted")


def _split(tree: _Tree, info: CenterInfo, side: dict):
    """Unit-weight optimum, both centers, and the member of each pair sent to q1."""
    pairs = tree.instance.pairs
    groups = [g for g in info.groups if g]
    same_side = any(v in side and u in side and side[v] == side[u] for v, u in pairs)
    if len(groups) != 2 or same_side:
        return info.radius, info.point, info.point, tuple(v for v, _ in pairs)
    alpha, beta = min(groups[0]), min(groups[1])
    da, pa = tree.walk(alpha)
    db, pb = tree.walk(beta)
    to_q1 = []
    far1, far2 = alpha, beta
    for v, u in pairs:
        if max(da[v], db[u]) <= max(da[u], db[v]):
            x, y = v, u
        else:
            x, y = u, v
        to_q1.append(x)
        if da[x] > da[far1]:
            far1 = x
        if db[y] > db[far2]:
            far2 = y
    l1, l2 = da[far1], db[far2]
    q1 = _path_point(tree, da, pa, alpha, far1, l1)
    q2 = _path_point(tree, db, pb, beta, far2, l2)
    return tree.scalar(Fraction(max(l1, l2), 2)), q1, q2, tuple(to_q1)
