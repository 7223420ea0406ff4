"""Rooted view of a tree instance with constant-time LCA queries."""

from __future__ import annotations

from typing import List, Optional

from .model import Instance, InstanceError, Scalar


class RootedTree:
    """Rooted at the lowest-id leaf; Euler tour plus sparse table over hop depths."""

    def __init__(self, instance: Instance, root: Optional[int] = None):
        if not instance.is_tree:
            raise InstanceError("not a tree: m != n - 1")
        g = instance.graph
        n = g.n
        adj = g.adjacency
        if root is None:
            root = next(v for v in range(n) if len(adj[v]) == 1)
        self.instance = instance
        self.root = root
        parent = [-1] * n
        parent_edge = [-1] * n
        depth: List[Scalar] = [0] * n
        hops = [0] * n
        children: List[List[int]] = [[] for _ in range(n)]
        order = [root]
        seen = [False] * n
        seen[root] = True
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for v, e in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    parent_edge[v] = e
                    depth[v] = depth[u] + g.edges[e][2]
                    hops[v] = hops[u] + 1
                    children[u].append(v)
                    order.append(v)
        self.parent = parent
        self.parent_edge = parent_edge
        self.children = children
        self.depth = depth
        self.hops = hops
        self.order = order
        self._build_lca()

    def _build_lca(self) -> None:
        n = len(self.parent)
        euler: List[int] = []
        first = [0] * n
        stack = [(self.root, 0)]
        while stack:
            u, idx = stack.pop()
            if idx == 0:
                first[u] = len(euler)
            euler.append(u)
            kids = self.children[u]
            if idx < len(kids):
                stack.append((u, idx + 1))
                stack.append((kids[idx], 0))
        self._first = first
        hops = self.hops
        table = [euler]
        span = 1
        while 2 * span <= len(euler):
            prev = table[-1]
            row = []
            for j in range(len(euler) - 2 * span + 1):
                a, b = prev[j], prev[j + span]
                row.append(a if hops[a] <= hops[b] else b)
            table.append(row)
            span *= 2
        self._table = table

    def lca(self, u: int, v: int) -> int:
        a, b = self._first[u], self._first[v]
        if a > b:
            a, b = b, a
        level = (b - a + 1).bit_length() - 1
        row = self._table[level]
        x, y = row[a], row[b - (1 << level) + 1]
        return x if self.hops[x] <= self.hops[y] else y

    def distance(self, u: int, v: int) -> Scalar:
        return self.depth[u] + self.depth[v] - 2 * self.depth[self.lca(u, v)]
