"""Separation for the strengthened blossom family (8).

The point (x, y) is mapped to a graph G' in which every forbidden triangle is
replaced by a star on a new zero-demand vertex r_T. Violated (8)-rows of the
original point correspond to odd cuts of value < 1 in G', which are found
from a Gomory-Hu tree on the weights min(x', 1 - x').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .flow import gomory_hu
from .formulation import (
    CutTriple,
    ExtendedPoint,
    check_point,
    eval_cut_lhs,
    crossing,
    eval_qstar,
)
from .graph import Edge, EnumerationBoundError, Instance, MultiGraph

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)

BASE_ORDER = ("(1)", "(2)", "(5)", "(6)", "(7)", "(4)")


class SeparationError(RuntimeError):
    pass


@dataclass(frozen=True)
class TransformedGraph:
    graph: MultiGraph
    b: dict[int, int]
    x: dict[int, Fraction]
    # star edge id -> (triangle index, position i of the vertex v_i it joins)
    star: dict[int, tuple[int, int]] = field(default_factory=dict)
    # triangle index -> id of r_T
    hub: dict[int, int] = field(default_factory=dict)
    original_vertices: frozenset[int] = frozenset()
    original_edges: frozenset[int] = frozenset()


def transform(inst: Instance, point: ExtendedPoint) -> TransformedGraph:
    """Replace every triangle by a star; x'(e_i) = x(a) + x(c) - 2 y_ac for the
    two triangle edges a, c meeting at v_i."""
    g = inst.graph
    tri_edges = set(inst.triangle_of_edge)
    next_v = max(g.vertices, default=-1) + 1
    next_e = max((e.id for e in g.edges), default=-1) + 1
    vertices = list(g.vertices)
    edges = [e for e in g.edges if e.id not in tri_edges]
    xp = {e.id: point.x[e.id] for e in edges}
    star, hub = {}, {}
    for t, tri in enumerate(inst.triangles):
        r = next_v + t
        vertices.append(r)
        hub[t] = r
        for i, v in enumerate(tri.vertices):
            a, c = tri.incident_pair(i)
            val = point.x[a] + point.x[c] - 2 * point.yv(t, a, c)
            if not 0 <= val <= 1:
                raise SeparationError(
                    f"triangle {t}: x' = {val} outside [0, 1]; y does not satisfy (5)-(7)"
                )
            eid = next_e + 3 * t + i
            edges.append(Edge(eid, r, v))
            xp[eid] = val
            star[eid] = (t, i)
    b = {v: inst.b[v] for v in g.vertices} | {r: 0 for r in hub.values()}
    return TransformedGraph(
        MultiGraph(tuple(vertices), tuple(edges)),
        b,
        xp,
        star,
        hub,
        frozenset(g.vertices),
        frozenset(e.id for e in g.edges),
    )


@dataclass(frozen=True)
class OddCutResult:
    value: Fraction
    S: frozenset[int]
    F0: frozenset[int]
    F1: frozenset[int]


def _best_partition(edges: list[Edge], x: dict, parity_base: int):
    """Cheapest (F0, F1) of ``edges`` with parity_base + |F1| odd, or None.

    Each edge independently prefers its cheaper side; a wrong parity is
    repaired by flipping the edge with the smallest |1 - 2x|, lowest id first.
    """
    F1 = {e.id for e in edges if x[e.id] > _HALF}
    value = sum((min(x[e.id], 1 - x[e.id]) for e in edges), _ZERO)
    if (parity_base + len(F1)) % 2 == 0:
        if not edges:
            return None
        flip = min(edges, key=lambda e: (abs(1 - 2 * x[e.id]), e.id))
        value += abs(1 - 2 * x[flip.id])
        F1 ^= {flip.id}
    ids = {e.id for e in edges}
    return value, frozenset(ids - F1), frozenset(F1)


def min_odd_cut(tg: TransformedGraph) -> OddCutResult | None:
    """Minimum of sum_{F0'} x' + sum_{F1'} (1 - x') over odd triples of G'.

    Pre-select F1' = {x' > 1/2}, label vertices by parity, build a Gomory-Hu
    tree on z = min(x', 1 - x') and examine its fundamental cuts, fixing bad
    parity with the cheapest single-edge flip.
    """
    g = tg.graph
    if not g.vertices:
        raise ValueError("empty graph")
    if sum(tg.b.values()) % 2:
        raise ValueError("total demand is odd")
    x = tg.x
    z_edges = [(e.u, e.v, min(x[e.id], 1 - x[e.id])) for e in g.edges if not e.is_loop]
    tree = gomory_hu(g.vertices, z_edges)
    best: OddCutResult | None = None
    for S, _ in tree.fundamental_cuts():
        delta = g.cut(S)
        found = _best_partition(delta, x, sum(tg.b[v] for v in S))
        if found is None:
            continue
        value, F0, F1 = found
        if best is None or value < best.value:
            # report the side holding the first vertex; the complement is the same cut
            if g.vertices[0] not in S:
                S = frozenset(g.vertices) - S
            best = OddCutResult(value, S, F0, F1)
    return best


def brute_force_odd_cut(tg: TransformedGraph, max_nodes: int = 12) -> OddCutResult | None:
    """Exhaustive over every proper nonempty S' (exact partition per S')."""
    g = tg.graph
    nodes = list(g.vertices)
    if len(nodes) > max_nodes:
        raise EnumerationBoundError(f"{len(nodes)} nodes exceed bound {max_nodes}")
    best = None
    for r in range(1, len(nodes)):
        for S in combinations(nodes, r):
            S = frozenset(S)
            found = _best_partition(g.cut(S), tg.x, sum(tg.b[v] for v in S))
            if found and (best is None or found[0] < best.value):
                best = OddCutResult(found[0], S, found[1], found[2])
    return best


def odd_cut_value(tg: TransformedGraph, cut: OddCutResult) -> Fraction:
    return sum((tg.x[e] for e in cut.F0), _ZERO) + sum((1 - tg.x[e] for e in cut.F1), _ZERO)


def pull_back_cut(
    inst: Instance, tg: TransformedGraph, cut: OddCutResult
) -> tuple[CutTriple, Fraction]:
    """Map an odd cut of G' with value < 1 to a violated (8)-triple of G.

    Each hub r_T is first placed with the majority of its triangle's
    vertices, the crossing edges are re-chosen optimally under the parity
    constraint, and star edges are then expanded: an F0' star edge puts both
    triangle edges at its vertex into F0, an F1' star edge puts the lower id
    into F0 and the other into F1. Returns the triple and its (8) value.
    """
    if cut.value >= 1:
        raise ValueError(f"cut value {cut.value} is not below 1")
    S = frozenset(v for v in cut.S if v in tg.original_vertices)
    S2 = set(S)
    for t, tri in enumerate(inst.triangles):
        if sum(v in S for v in tri.vertices) >= 2:
            S2.add(tg.hub[t])
    found = _best_partition(tg.graph.cut(S2), tg.x, sum(tg.b[v] for v in S2))
    if found is None:
        raise SeparationError("normalised cut admits no odd partition")
    value, F0p, F1p = found
    if value > cut.value:
        raise SeparationError(f"normalisation raised the cut value {cut.value} -> {value}")
    F0 = {e for e in F0p if e in tg.original_edges}
    F1 = {e for e in F1p if e in tg.original_edges}
    for e in F0p | F1p:
        if e not in tg.star:
            continue
        t, i = tg.star[e]
        a, c = sorted(inst.triangles[t].incident_pair(i))
        if e in F0p:
            F0 |= {a, c}
        else:
            F0.add(a)
            F1.add(c)
    triple = CutTriple(S, frozenset(F0), frozenset(F1))
    return triple, value


@dataclass(frozen=True)
class SeparationResult:
    status: str  # "feasible" | "violated"
    family: str | None = None
    cut: CutTriple | None = None
    lhs: Fraction | None = None
    detail: str = ""
    gprime_value: Fraction | None = None


def separate(inst: Instance, point: ExtendedPoint) -> SeparationResult:
    """Certify (x, y) in P or return a violated constraint."""
    _check_dimensions(inst, point)
    for fam in BASE_ORDER:
        v = check_point(inst, point, [fam])
        if v is not None:
            return SeparationResult("violated", fam, lhs=v.lhs, detail=v.describe())
    g = inst.graph
    if inst.total_b() % 2:
        whole = CutTriple(frozenset(g.vertices), frozenset(), frozenset())
        return SeparationResult("violated", "(8)", whole, _ZERO, "b(V) is odd")
    if not g.vertices:
        return SeparationResult("feasible")
    tg = transform(inst, point)
    oc = min_odd_cut(tg)
    if oc is None or oc.value >= 1:
        return SeparationResult("feasible", gprime_value=oc.value if oc else None)
    triple, value = pull_back_cut(inst, tg, oc)
    lhs = eval_cut_lhs(inst, point, triple)
    if lhs != value:
        raise SeparationError(f"pulled-back cut evaluates to {lhs}, expected {value}")
    return SeparationResult("violated", "(8)", triple, lhs, gprime_value=oc.value)


def _check_dimensions(inst: Instance, point: ExtendedPoint) -> None:
    if set(point.x) != set(inst.edge_ids):
        raise ValueError("point x does not cover exactly the instance edges")
    keys = {(t, J) for t, J in point.y}
    for t, J in keys:
        if not 0 <= t < len(inst.triangles) or not J <= set(inst.triangles[t].edges):
            raise ValueError(f"point y has foreign index {(t, sorted(J))}")


def _min_over_partitions(inst: Instance, point: ExtendedPoint, S: frozenset[int]):
    """Exact min of the (8) LHS over all odd (F0, F1) for a fixed S.

    Parity dynamic programme over independent pieces: ordinary crossing
    edges (two choices each) and crossing triangles (four choices each,
    q* evaluated directly from y).
    """
    g = inst.graph
    delta = g.cut(S)
    tri_of = inst.triangle_of_edge
    # table[parity] = (value, F0, F1)
    table: dict[int, tuple] = {0: (_ZERO, frozenset(), frozenset())}

    def extend(options):
        nonlocal table
        new: dict[int, tuple] = {}
        for p, (val, F0, F1) in table.items():
            for q, add, f0, f1 in options:
                key = (p + q) % 2
                cand = (val + add, F0 | f0, F1 | f1)
                if key not in new or cand[0] < new[key][0]:
                    new[key] = cand
        table = new

    done = set()
    for e in delta:
        t = tri_of.get(e.id)
        if t is None:
            x = point.x[e.id]
            extend([(0, x, frozenset({e.id}), frozenset()), (1, 1 - x, frozenset(), frozenset({e.id}))])
        elif t not in done:
            done.add(t)
            a, b = crossing(inst, t, S)
            opts = []
            for a1 in (False, True):
                for b1 in (False, True):
                    F1 = frozenset(e2 for e2, on in ((a, a1), (b, b1)) if on)
                    F0 = frozenset({a, b}) - F1
                    probe = CutTriple(S, F0, F1)
                    val = sum((point.x[f] for f in F0), _ZERO) + sum((1 - point.x[f] for f in F1), _ZERO)
                    val -= 2 * eval_qstar(inst, t, probe, point.y)
                    opts.append((len(F1) % 2, val, F0, F1))
            extend(opts)
    want = (sum(inst.b[v] for v in S) + 1) % 2
    return table.get(want)


@dataclass(frozen=True)
class BruteSeparation:
    value: Fraction | None
    cut: CutTriple | None


def brute_force_min_lhs(
    inst: Instance, point: ExtendedPoint, max_vertices: int = 8, exhaustive: bool = False
) -> BruteSeparation:
    """Minimum of the (8) LHS over every (S, F0, F1) in the family F.

    ``exhaustive=True`` enumerates each partition literally (needs
    |delta(S)| <= 12); otherwise partitions are minimised by an exact
    parity recursion.
    """
    g = inst.graph
    nodes = list(g.vertices)
    if len(nodes) > max_vertices:
        raise EnumerationBoundError(f"{len(nodes)} vertices exceed bound {max_vertices}")
    best_val, best_cut = None, None
    for r in range(1, len(nodes) + 1):
        for S in combinations(nodes, r):
            S = frozenset(S)
            if exhaustive:
                cand = _literal_min(inst, point, S)
            else:
                found = _min_over_partitions(inst, point, S)
                cand = None if found is None else (found[0], CutTriple(S, found[1], found[2]))
            if cand is not None and (best_val is None or cand[0] < best_val):
                best_val, best_cut = cand
    return BruteSeparation(best_val, best_cut)


def _literal_min(inst, point, S):
    delta = sorted(e.id for e in inst.graph.cut(S))
    if len(delta) > 12:
        raise EnumerationBoundError(f"|delta(S)| = {len(delta)} exceeds 12")
    parity = sum(inst.b[v] for v in S)
    best = None
    for k in range(len(delta) + 1):
        if (parity + k) % 2 == 0:
            continue
        for F1 in combinations(delta, k):
            cut = CutTriple(S, frozenset(delta) - frozenset(F1), frozenset(F1))
            val = eval_cut_lhs(inst, point, cut)
            if best is None or val < best[0]:
                best = (val, cut)
    return best


def brute_force_separate(inst: Instance, point: ExtendedPoint, **kw) -> SeparationResult:
    """Same contract as :func:`separate`, via exhaustive search over F."""
    _check_dimensions(inst, point)
    for fam in BASE_ORDER:
        v = check_point(inst, point, [fam])
        if v is not None:
            return SeparationResult("violated", fam, lhs=v.lhs, detail=v.describe())
    res = brute_force_min_lhs(inst, point, **kw)
    if res.value is not None and res.value < 1:
        return SeparationResult("violated", "(8)", res.cut, res.value)
    return SeparationResult("feasible", lhs=res.value)


def cuts_in_family(inst: Instance, max_vertices: int = 6) -> Iterable[CutTriple]:
    """Every (S, F0, F1) of the family F; test apparatus for small graphs."""
    nodes = list(inst.graph.vertices)
    if len(nodes) > max_vertices:
        raise EnumerationBoundError(f"{len(nodes)} vertices exceed bound {max_vertices}")
    for r in range(1, len(nodes) + 1):
        for S in combinations(nodes, r):
            S = frozenset(S)
            delta = sorted(e.id for e in inst.graph.cut(S))
            parity = sum(inst.b[v] for v in S)
            for k in range(len(delta) + 1):
                if (parity + k) % 2:
                    for F1 in combinations(delta, k):
                        yield CutTriple(S, frozenset(delta) - frozenset(F1), frozenset(F1))
