"""Deterministic instance families: k3, k4, prism, random multigraphs."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .graph import FACTOR, MATCHING, Instance, make_instance

# random weights: numerator uniform in [-3, 9], denominator uniform in {1, 2, 3, 4}
WEIGHT_NUMERATORS = range(-3, 10)
WEIGHT_DENOMINATORS = (1, 2, 3, 4)


def k3(b: int = 2, forbid: bool = True, mode: str = FACTOR, w=1) -> Instance:
    return make_instance(
        [1, 2, 3],
        [(1, 1, 2), (2, 2, 3), (3, 3, 1)],
        b,
        [(1, 2, 3)] if forbid else [],
        {1: w, 2: w, 3: w},
        mode,
    )


def k4(b: int = 2, mode: str = FACTOR, w=1) -> Instance:
    edges = [(i + 1, u, v) for i, (u, v) in enumerate(combinations([1, 2, 3, 4], 2))]
    # edges: 1=12 2=13 3=14 4=23 5=24 6=34; forbid triangle 1-2-3
    return make_instance([1, 2, 3, 4], edges, b, [(1, 4, 2)], {e[0]: w for e in edges}, mode)


def prism(tri_w=2, rung_w=0, mode: str = FACTOR) -> Instance:
    """Two triangles 1-2-3 and 4-5-6 joined by rungs 1-4, 2-5, 3-6."""
    edges = [
        (1, 1, 2), (2, 2, 3), (3, 3, 1),
        (4, 4, 5), (5, 5, 6), (6, 6, 4),
        (7, 1, 4), (8, 2, 5), (9, 3, 6),
    ]
    w = {e: tri_w for e in range(1, 7)} | {e: rung_w for e in range(7, 10)}
    return make_instance(range(1, 7), edges, 2, [(1, 2, 3), (4, 5, 6)], w, mode)


def greedy_triangles(inst_edges, limit: int | None = None) -> list[tuple[int, int, int]]:
    """A maximal edge-disjoint set of triangles, scanned in edge-id order."""
    edges = sorted((e for e in inst_edges if e[1] != e[2]), key=lambda e: e[0])
    used: set[int] = set()
    found = []
    for a, b, c in combinations(edges, 3):
        if limit is not None and len(found) >= limit:
            break
        if {a[0], b[0], c[0]} & used:
            continue
        verts = [a[1], a[2], b[1], b[2], c[1], c[2]]
        if len(set(verts)) == 3 and all(verts.count(v) == 2 for v in set(verts)):
            # three distinct vertex pairs, each vertex in exactly two edges
            pairs = {frozenset(e[1:]) for e in (a, b, c)}
            if len(pairs) == 3:
                found.append((a[0], b[0], c[0]))
                used |= {a[0], b[0], c[0]}
    return found


def random_instance(
    seed: int,
    n: int = 5,
    m: int = 8,
    max_triangles: int = 3,
    loop_prob: float = 0.1,
    b_choices=(1, 2),
    mode: str | None = None,
    tri_bias: float = 0.5,
    planted: bool = False,
) -> Instance:
    """Random multigraph on ``n`` vertices with ``m`` edges.

    Edges are uniform vertex pairs (self-loops with probability
    ``loop_prob``); with probability ``tri_bias`` a triangle on random
    vertices is planted first so triangles are common. ``planted`` sets b
    to the degree vector of a random edge subset, so a b-factor exists.
    """
    rng = random.Random(seed)
    vertices = list(range(1, n + 1))
    pairs = []
    if n >= 3 and rng.random() < tri_bias:
        u, v, w = rng.sample(vertices, 3)
        pairs += [(u, v), (v, w), (w, u)]
    while len(pairs) < m:
        if rng.random() < loop_prob:
            u = rng.choice(vertices)
            pairs.append((u, u))
        elif n >= 2:
            u, v = rng.sample(vertices, 2)
            pairs.append((u, v))
        else:
            pairs.append((vertices[0], vertices[0]))
    pairs = pairs[:m]
    edges = [(i + 1, u, v) for i, (u, v) in enumerate(pairs)]
    b = {v: rng.choice(b_choices) for v in vertices}
    if planted:
        b = dict.fromkeys(vertices, 0)
        for _, u, v in edges:
            if rng.random() < 0.5:
                b[u] += 1
                b[v] += 1
    weights = {
        e[0]: Fraction(rng.choice(WEIGHT_NUMERATORS), rng.choice(WEIGHT_DENOMINATORS))
        for e in edges
    }
    k = rng.randint(0, max_triangles)
    tris = greedy_triangles(edges, limit=k)
    if mode is None:
        mode = rng.choice((FACTOR, MATCHING))
    return make_instance(vertices, edges, b, tris, weights, mode)
