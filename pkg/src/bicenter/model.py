"""Core data model: exact scalars, graphs, instances, points and solutions.

Every length, weight and objective value is an exact rational.  Integral
values are kept as plain ``int`` (cheap arithmetic); everything else is a
``fractions.Fraction``.  Division always goes through :func:`ratio` so no
float ever leaks into a computation.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class InstanceError(ValueError):
    """An instance description violates a structural invariant."""


def to_scalar(value) -> Scalar:
    """Convert ints, Fractions, decimal strings (and floats via their repr) to a Scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        f = value
    elif isinstance(value, float):
        f = Fraction(repr(value))
    elif isinstance(value, str):
        f = Fraction(value.strip())
    else:
        raise TypeError(f"cannot convert {value!r} to an exact scalar")
    return f.numerator if f.denominator == 1 else f


def simplify(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def ratio(a: Scalar, b: Scalar) -> Scalar:
    """Exact a / b."""
    f = Fraction(a) / Fraction(b)
    return f.numerator if f.denominator == 1 else f


# --------------------------------------------------------------------------
# graph and instance


@dataclass(frozen=True, eq=False)
class Graph:
    """Connected undirected graph; edges are stored as (u, v, length) with u < v."""

    weights: Tuple[Scalar, ...]
    edges: Tuple[Tuple[int, int, Scalar], ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """adjacency[v] = ((neighbour, edge id), ...) in edge-id order."""
        adj: List[list] = [[] for _ in range(self.n)]
        for eid, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict:
        return {(u, v): eid for eid, (u, v, _) in enumerate(self.edges)}

    def length(self, e: int) -> Scalar:
        return self.edges[e][2]

    def endpoints(self, e: int) -> Tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def find_edge(self, u: int, v: int) -> Optional[int]:
        if u > v:
            u, v = v, u
        return self.edge_index.get((u, v))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.weights == other.weights and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.weights, self.edges))


@dataclass(frozen=True, eq=False)
class Instance:
    graph: Graph
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def weights(self) -> Tuple[Scalar, ...]:
        return self.graph.weights

    @property
    def is_tree(self) -> bool:
        return self.graph.m == self.graph.n - 1

    @cached_property
    def partner(self) -> Tuple[int, ...]:
        """partner[v] is v's pair mate, or -1 when v is unpaired."""
        p = [-1] * self.n
        for v, u in self.pairs:
            p[v] = u
            p[u] = v
        return tuple(p)

    @cached_property
    def effective_weights(self) -> Tuple[Scalar, ...]:
        """Weights with unpaired vertices zeroed; only paired vertices influence the objective."""
        return tuple(w if self.partner[v] >= 0 else 0 for v, w in enumerate(self.weights))

    @cached_property
    def dist(self) -> Tuple[Tuple[Scalar, ...], ...]:
        """All-pairs shortest-path matrix (exact Dijkstra from every vertex)."""
        return tuple(tuple(_dijkstra(self.graph, s)) for s in range(self.n))

    @cached_property
    def rooted(self):
        from .rooted import RootedTree

        return RootedTree(self)

    def d(self, u: int, v: int) -> Scalar:
        if self.is_tree and "dist" not in self.__dict__ and self.n > 64:
            return self.rooted.distance(u, v)
        return self.dist[u][v]

    def distances_from(self, s: int) -> List[Scalar]:
        if "dist" in self.__dict__ or not self.is_tree:
            return list(self.dist[s])
        return tree_distances(self.graph, s)

    def __eq__(self, other) -> bool:
        return isinstance(other, Instance) and self.graph == other.graph and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((self.graph, self.pairs))


def _dijkstra(graph: Graph, s: int) -> List[Scalar]:
    dist: List[Optional[Scalar]] = [None] * graph.n
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * graph.n
    adj = graph.adjacency
    edges = graph.edges
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, e in adj[u]:
            nd = d + edges[e][2]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist  # type: ignore[return-value]


def tree_distances(graph: Graph, s: int) -> List[Scalar]:
    """Distances from s in a tree by a single traversal."""
    dist: List[Optional[Scalar]] = [None] * graph.n
    dist[s] = 0
    adj = graph.adjacency
    edges = graph.edges
    stack = [s]
    while stack:
        u = stack.pop()
        du = dist[u]
        for v, e in adj[u]:
            if dist[v] is None:
                dist[v] = du + edges[e][2]
                stack.append(v)
    return dist  # type: ignore[return-value]


def validate_and_build(weights: Sequence, edges: Sequence, pairs: Sequence) -> Instance:
    """Check every structural invariant and return an immutable Instance.

    ``edges`` holds (u, v, length) triples, ``pairs`` holds (v, u) tuples.
    """
    n = len(weights)
    ws = []
    for v, w in enumerate(weights):
        w = to_scalar(w)
        if w < 0:
            raise InstanceError(f"vertex {v} has negative weight {w}")
        ws.append(w)
    if n < 2:
        raise InstanceError("an instance needs at least two vertices")
    seen = {}
    es = []
    for i, (u, v, length) in enumerate(edges):
        for x in (u, v):
            if not (isinstance(x, int) and 0 <= x < n):
                raise InstanceError(f"edge {i} ({u}, {v}) references unknown vertex {x}")
        if u == v:
            raise InstanceError(f"edge {i} is a self-loop at vertex {u}")
        length = to_scalar(length)
        if length <= 0:
            raise InstanceError(f"edge {i} ({u}, {v}) has non-positive length {length}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceError(f"edge {i} ({u}, {v}) duplicates edge {seen[key]}")
        seen[key] = i
        es.append((key[0], key[1], length))
    graph = Graph(tuple(ws), tuple(es))
    _check_connected(graph)
    used = {}
    ps = []
    for i, (v, u) in enumerate(pairs):
        for x in (v, u):
            if not (isinstance(x, int) and 0 <= x < n):
                raise InstanceError(f"pair {i} ({v}, {u}) references unknown vertex {x}")
        if v == u:
            raise InstanceError(f"pair {i} joins vertex {v} with itself")
        for x in (v, u):
            if x in used:
                raise InstanceError(f"vertex {x} appears in pair {used[x]} and pair {i}")
            used[x] = i
        ps.append((v, u))
    return Instance(graph, tuple(ps))


def _check_connected(graph: Graph) -> None:
    seen = [False] * graph.n
    seen[0] = True
    queue = deque([0])
    count = 1
    adj = graph.adjacency
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    if count != graph.n:
        missing = seen.index(False)
        raise InstanceError(f"graph is disconnected: vertex {missing} is unreachable from vertex 0")


def normalize(instance: Instance) -> Instance:
    """Pair every vertex: unpaired ones get weight 0 and are matched in ascending-id order.

    When the vertex count is odd a weight-0 vertex is appended, joined to vertex 0
    by an edge of length 1.  The original pairs keep their indices; new pairs follow.
    """
    partner = instance.partner
    unpaired = [v for v in range(instance.n) if partner[v] < 0]
    if not unpaired:
        return instance
    weights = list(instance.weights)
    for v in unpaired:
        weights[v] = 0
    edges = list(instance.graph.edges)
    if instance.n % 2 == 1:
        new = instance.n
        weights.append(0)
        edges.append((0, new, 1))
        unpaired.append(new)
    pairs = list(instance.pairs)
    pairs.extend((unpaired[i], unpaired[i + 1]) for i in range(0, len(unpaired), 2))
    return Instance(Graph(tuple(weights), tuple(edges)), tuple(pairs))


def is_normalized(instance: Instance) -> bool:
    return all(p >= 0 for p in instance.partner)


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class EdgePoint:
    """A point on edge ``edge`` at distance ``t`` from its lower-indexed endpoint."""

    edge: int
    t: Scalar

    def __post_init__(self):
        object.__setattr__(self, "t", to_scalar(self.t))


def check_point(instance: Instance, p: EdgePoint) -> None:
    if not 0 <= p.edge < instance.m:
        raise InstanceError(f"point references unknown edge {p.edge}")
    if not 0 <= p.t <= instance.graph.length(p.edge):
        raise InstanceError(f"offset {p.t} lies outside edge {p.edge}")


def vertex_point(instance: Instance, v: int) -> EdgePoint:
    """Canonical EdgePoint for vertex v: on its lowest-indexed incident edge."""
    adj = instance.graph.adjacency[v]
    if not adj:
        raise InstanceError(f"vertex {v} has no incident edge")
    e = min(eid for _, eid in adj)
    a, _ = instance.graph.endpoints(e)
    return EdgePoint(e, 0 if a == v else instance.graph.length(e))


def point_vertex(instance: Instance, p: EdgePoint) -> Optional[int]:
    """The vertex p coincides with, if any."""
    a, b = instance.graph.endpoints(p.edge)
    if p.t == 0:
        return a
    if p.t == instance.graph.length(p.edge):
        return b
    return None


def canonical_point(instance: Instance, p: EdgePoint) -> EdgePoint:
    v = point_vertex(instance, p)
    return p if v is None else vertex_point(instance, v)


def same_point(instance: Instance, p: EdgePoint, q: EdgePoint) -> bool:
    return canonical_point(instance, p) == canonical_point(instance, q)


def point_distances(instance: Instance, p: EdgePoint) -> List[Scalar]:
    """d(v, p) for every vertex v."""
    a, b = instance.graph.endpoints(p.edge)
    length = instance.graph.length(p.edge)
    da = instance.distances_from(a)
    db = instance.distances_from(b)
    t = p.t
    s = length - t
    return [min(x + t, y + s) for x, y in zip(da, db)]


def point_distance(instance: Instance, p: EdgePoint, q: EdgePoint) -> Scalar:
    """Shortest-path distance between two points of the graph."""
    g = instance.graph
    a, b = g.endpoints(p.edge)
    c, d = g.endpoints(q.edge)
    l1, l2 = g.length(p.edge), g.length(q.edge)
    s, t = p.t, q.t
    best = min(
        s + instance.d(a, c) + t,
        s + instance.d(a, d) + l2 - t,
        l1 - s + instance.d(b, c) + t,
        l1 - s + instance.d(b, d) + l2 - t,
    )
    if p.edge == q.edge:
        best = min(best, abs(s - t))
    return best


def vertex_point_distance(instance: Instance, v: int, p: EdgePoint) -> Scalar:
    a, b = instance.graph.endpoints(p.edge)
    length = instance.graph.length(p.edge)
    return min(instance.d(v, a) + p.t, instance.d(v, b) + length - p.t)


# --------------------------------------------------------------------------
# objective


def phi(instance: Instance, i: int, q1: EdgePoint, q2: EdgePoint) -> Scalar:
    """Cost of pair i under the better of its two assignments."""
    v, u = instance.pairs[i]
    w = instance.weights
    dv1 = w[v] * vertex_point_distance(instance, v, q1)
    du2 = w[u] * vertex_point_distance(instance, u, q2)
    du1 = w[u] * vertex_point_distance(instance, u, q1)
    dv2 = w[v] * vertex_point_distance(instance, v, q2)
    return min(max(dv1, du2), max(du1, dv2))


def best_assignment(instance: Instance, q1: EdgePoint, q2: EdgePoint) -> Tuple[int, ...]:
    """Per pair, the member sent to q1; ties send the first member."""
    d1 = point_distances(instance, q1)
    d2 = point_distances(instance, q2)
    w = instance.weights
    out = []
    for v, u in instance.pairs:
        a = max(w[v] * d1[v], w[u] * d2[u])
        b = max(w[u] * d1[u], w[v] * d2[v])
        out.append(v if a <= b else u)
    return tuple(out)


def objective(instance: Instance, q1: EdgePoint, q2: EdgePoint,
              assignment: Optional[Sequence[int]] = None) -> Scalar:
    """max over pairs of the pair cost; with an assignment the cost follows it."""
    d1 = point_distances(instance, q1)
    d2 = point_distances(instance, q2)
    w = instance.weights
    best: Scalar = 0
    for i, (v, u) in enumerate(instance.pairs):
        if assignment is None:
            c = min(max(w[v] * d1[v], w[u] * d2[u]), max(w[u] * d1[u], w[v] * d2[v]))
        else:
            x = assignment[i]
            if x == v:
                c = max(w[v] * d1[v], w[u] * d2[u])
            elif x == u:
                c = max(w[u] * d1[u], w[v] * d2[v])
            else:
                raise InstanceError(f"assignment for pair {i} names vertex {x}, not a member")
        if c > best:
            best = c
    return best


@dataclass(frozen=True)
class Solution:
    lam: Scalar
    q1: EdgePoint
    q2: EdgePoint
    assignment: Tuple[int, ...]
    solver: str = ""


def make_solution(instance: Instance, lam: Scalar, q1: EdgePoint, q2: EdgePoint, solver: str) -> Solution:
    return Solution(simplify(lam), q1, q2, best_assignment(instance, q1, q2), solver)
