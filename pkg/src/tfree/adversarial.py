"""Points inside the b-factor polytope that the triangle-strengthened
blossom rows cut off.

Such a point satisfies the degree, bound and triangle-cap rows and every
classical blossom row, yet lies outside the T-free b-factor polytope.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .formulation import CutTriple, ExtendedPoint, check_point, lift_point
from .generators import random_instance
from .graph import FACTOR, Instance, enumerate_tfree_bfactors, make_instance
from .separation import SeparationResult, _best_partition, separate

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)


def min_classical_blossom(inst: Instance, x) -> Fraction | None:
    """Exact minimum of the plain blossom LHS over all odd (S, F0, F1)."""
    g = inst.graph
    best = None
    for r in range(1, len(g.vertices) + 1):
        for S in combinations(g.vertices, r):
            found = _best_partition(g.cut(S), x, sum(inst.b[v] for v in S))
            if found and (best is None or found[0] < best):
                best = found[0]
    return best


@dataclass(frozen=True)
class Witness:
    instance: Instance
    point: ExtendedPoint
    separation: SeparationResult
    classical_min: Fraction | None


def is_witness(inst: Instance, point: ExtendedPoint) -> Witness | None:
    if check_point(inst, point, ["(1)", "(2)", "(4)"]) is not None:
        return None
    cm = min_classical_blossom(inst, point.x)
    if cm is not None and cm < 1:
        return None
    sep = separate(inst, point)
    if sep.status == "violated" and sep.family == "(8)" and sep.lhs < 1:
        return Witness(inst, point, sep, cm)
    return None


def search(seeds=range(2000), n_max: int = 5, m_max: int = 9) -> Witness | None:
    """Random instances; candidate x is the midpoint of two b-factors.

    One of the two factors may contain a forbidden triangle, which is how a
    point can pass every classical blossom row and still be outside the
    T-free hull. y comes from the per-triangle lift.
    """
    for seed in seeds:
        rng = random.Random(seed)
        inst = random_instance(
            seed,
            n=rng.randint(3, n_max),
            m=rng.randint(3, m_max),
            max_triangles=2,
            loop_prob=0.3,
            b_choices=(2,),
            mode=FACTOR,
            tri_bias=1.0,
        )
        if not inst.triangles:
            continue
        free = make_instance(
            inst.graph.vertices,
            [(e.id, e.u, e.v) for e in inst.graph.edges],
            dict(inst.b),
        )
        factors = enumerate_tfree_bfactors(free, bound=16)
        for M1, M2 in combinations(factors, 2):
            x = {e: (int(e in M1) + int(e in M2)) * HALF for e in inst.edge_ids}
            if any(sum(x[e] for e in t) > 2 for t in inst.triangle_edges):
                continue
            w = is_witness(inst, lift_point(inst, x))
            if w is not None:
                return w
    return None


def k3_with_loops() -> Instance:
    """Triangle 1-2-3 (edges 1=12, 2=23, 3=31), a self-loop at each vertex, b = 2."""
    return make_instance(
        [1, 2, 3],
        [(1, 1, 2), (2, 2, 3), (3, 3, 1), (4, 1, 1), (5, 2, 2), (6, 3, 3)],
        2,
        [(1, 2, 3)],
    )


def constructed_witness() -> tuple[Instance, ExtendedPoint, CutTriple]:
    """x = 1/2 everywhere, the midpoint of the triangle and the loop factor.

    With alpha = 12 and beta = 23 crossing S = {2}, y puts 1/3 on
    {alpha, beta}; the remaining mass keeps every marginal at 1/2.
    """
    inst = k3_with_loops()
    x = {e: HALF for e in inst.edge_ids}
    y = {(0, frozenset(J)): Fraction(0) for r in range(3) for J in combinations((1, 2, 3), r)}
    y[(0, frozenset({1, 2}))] = THIRD
    y[(0, frozenset({1, 3}))] = SIXTH
    y[(0, frozenset({2, 3}))] = SIXTH
    y[(0, frozenset({3}))] = SIXTH
    y[(0, frozenset())] = SIXTH
    cut = CutTriple(frozenset({2}), frozenset({1}), frozenset({2}))
    return inst, ExtendedPoint(x, y), cut
