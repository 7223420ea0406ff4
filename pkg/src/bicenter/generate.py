"""Seeded random instances."""

from __future__ import annotations

import random
from typing import Optional, Tuple

from .model import Instance, validate_and_build

KINDS = ("tree", "connected-graph")


def random_instance(seed: int, n: int, kind: str = "tree", m: Optional[int] = None,
                    weights: Tuple[int, int] = (1, 5), lengths: Tuple[int, int] = (1, 9),
                    pair_all: Optional[bool] = None) -> Instance:
    """Deterministic per argument tuple.

    Vertices are labelled by a random permutation, pairs form a random perfect
    matching over a random even-size vertex subset (all vertices when pair_all).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if n < 2:
        raise ValueError("n must be at least 2")
    max_m = n * (n - 1) // 2
    if kind == "tree":
        if m is not None and m != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, not {m}")
        m = n - 1
    elif m is None:
        m = n - 1
    if not n - 1 <= m <= max_m:
        raise ValueError(f"m must lie in [{n - 1}, {max_m}] for n = {n}")
    w_lo, w_hi = weights
    l_lo, l_hi = lengths
    if w_lo < 0 or w_lo > w_hi:
        raise ValueError("weight range must satisfy 0 <= a <= b")
    if l_lo < 1 or l_lo > l_hi:
        raise ValueError("length range must satisfy 1 <= a <= b")
    rng = random.Random(seed)
    label = list(range(n))
    rng.shuffle(label)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        a, b = label[u], label[v]
        edges.add((min(a, b), max(a, b)))
    while len(edges) < m:
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    edge_list = sorted(edges)
    rng.shuffle(edge_list)
    ws = [rng.randint(w_lo, w_hi) for _ in range(n)]
    es = [(a, b, rng.randint(l_lo, l_hi)) for a, b in edge_list]
    if pair_all is None:
        pair_all = rng.random() < 0.5
    size = n - n % 2 if pair_all else 2 * rng.randint(1, n // 2)
    chosen = rng.sample(range(n), size)
    pairs = [(chosen[i], chosen[i + 1]) for i in range(0, size, 2)]
    return validate_and_build(ws, es, pairs)


def random_rectangle_sets(seed: int, k_max: int = 6, side: int = 8):
    """A box and up to ``k_max`` corner-rectangle families with small integer coordinates."""
    from .piercing import Box, CornerRectangle, RectangleSet

    rng = random.Random(seed)
    box = Box(rng.randint(1, side), rng.randint(1, side))
    sets = []
    for i in range(rng.randint(1, k_max)):
        rects = []
        for _ in range(rng.randint(1, 4)):
            w = rng.randint(0, box.x_max)
            h = rng.randint(0, box.y_max)
            x_lo = 0 if rng.random() < 0.5 else box.x_max - w
            y_lo = 0 if rng.random() < 0.5 else box.y_max - h
            rects.append(CornerRectangle(x_lo, x_lo + w, y_lo, y_lo + h))
        sets.append(RectangleSet(i, tuple(rects)))
    return box, sets
