"""Multigraph instances, T-freeness, and brute-force oracles.

Vertices and edges carry integer ids. Edges may be parallel and may be
self-loops; a self-loop adds 2 to the degree of its vertex and never crosses
a vertex cut. All numeric values are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

FACTOR = "factor"
MATCHING = "matching"

DEFAULT_ENUM_BOUND = 24

EdgeSet = frozenset


class InstanceError(ValueError):
    """Raised when an operation receives an invalid instance."""


class EnumerationBoundError(RuntimeError):
    """Raised when a brute-force oracle would exceed its declared bound."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def edge_map(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def incident(self) -> dict[int, tuple[Edge, ...]]:
        """Edges incident to each vertex (a self-loop listed once)."""
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc.setdefault(e.u, []).append(e)
            if not e.is_loop:
                inc.setdefault(e.v, []).append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def degree_coeff(self, e: Edge, v: int) -> int:
        """Multiplicity of ``e`` in the incidence multiset of ``v``."""
        if e.is_loop:
            return 2 if e.u == v else 0
        return int(e.u == v) + int(e.v == v)

    def cut(self, S: Iterable[int]) -> list[Edge]:
        """Edges with exactly one endpoint in ``S`` (in edge order)."""
        S = set(S)
        return [e for e in self.edges if (e.u in S) != (e.v in S)]

    def induced(self, S: Iterable[int]) -> list[Edge]:
        S = set(S)
        return [e for e in self.edges if e.u in S and e.v in S]


@dataclass(frozen=True)
class Triangle:
    """A forbidden triangle, edges labelled alpha=v1v2, beta=v2v3, gamma=v3v1."""

    edges: tuple[int, int, int]
    vertices: tuple[int, int, int]

    def incident_pair(self, i: int) -> tuple[int, int]:
        """The two triangle edges meeting at ``vertices[i]``."""
        a, b, c = self.edges
        return ((a, c), (a, b), (b, c))[i]

    def opposite(self, i: int) -> int:
        """The triangle edge not touching ``vertices[i]``."""
        a, b, c = self.edges
        return (b, c, a)[i]


def triangle_from_edges(graph: MultiGraph, eids: tuple[int, int, int]) -> Triangle:
    """Derive the vertex labelling of a triangle, raising if it is not a 3-cycle."""
    em = graph.edge_map
    try:
        a, b, c = (em[e] for e in eids)
    except KeyError as exc:
        raise InstanceError(f"triangle {list(eids)}: unknown edge {exc.args[0]}") from None
    if len(set(eids)) != 3 or any(e.is_loop for e in (a, b, c)):
        raise InstanceError(f"triangle {list(eids)}: edges do not form a 3-cycle")
    shared = {a.u, a.v} & {b.u, b.v}
    if len(shared) != 1:
        raise InstanceError(f"triangle {list(eids)}: edges do not form a 3-cycle")
    v2 = shared.pop()
    v1, v3 = a.other(v2), b.other(v2)
    if len({v1, v2, v3}) != 3 or {c.u, c.v} != {v1, v3}:
        raise InstanceError(f"triangle {list(eids)}: edges do not form a 3-cycle")
    return Triangle(tuple(eids), (v1, v2, v3))


@dataclass(frozen=True)
class Instance:
    graph: MultiGraph
    b: Mapping[int, int]
    triangle_edges: tuple[tuple[int, int, int], ...] = ()
    weights: Mapping[int, Fraction] = field(default_factory=dict)
    mode: str = FACTOR

    @cached_property
    def triangles(self) -> tuple[Triangle, ...]:
        return tuple(triangle_from_edges(self.graph, t) for t in self.triangle_edges)

    @cached_property
    def triangle_of_edge(self) -> dict[int, int]:
        return {e: i for i, t in enumerate(self.triangle_edges) for e in t}

    @property
    def edge_ids(self) -> list[int]:
        return [e.id for e in self.graph.edges]

    def weight(self, M: Iterable[int]) -> Fraction:
        return sum((Fraction(self.weights.get(e, 0)) for e in M), Fraction(0))

    def total_b(self) -> int:
        return sum(self.b[v] for v in self.graph.vertices)


def make_instance(
    vertices: Iterable[int],
    edges: Iterable[tuple[int, int, int]],
    b: Mapping[int, int] | int,
    triangles: Iterable[Iterable[int]] = (),
    weights: Mapping[int, object] | None = None,
    mode: str = FACTOR,
) -> Instance:
    """Convenience constructor; ``b`` may be a single int applied to every vertex."""
    vertices = tuple(vertices)
    edge_objs = tuple(Edge(int(i), int(u), int(v)) for i, u, v in edges)
    if isinstance(b, int):
        b = {v: b for v in vertices}
    weights = {e.id: Fraction(0) for e in edge_objs} | {
        int(k): Fraction(w) for k, w in (weights or {}).items()
    }
    return Instance(
        graph=MultiGraph(vertices, edge_objs),
        b=dict(b),
        triangle_edges=tuple(tuple(int(e) for e in t) for t in triangles),
        weights=weights,
        mode=mode,
    )


def validate_instance(inst: Instance) -> list[str]:
    """Return every invariant violation of ``inst``; an empty list means ok."""
    problems: list[str] = []
    g = inst.graph
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        problems.append("duplicate vertex ids")
    seen: set[int] = set()
    for e in g.edges:
        if e.id in seen:
            problems.append(f"duplicate edge id {e.id}")
        seen.add(e.id)
        for w in (e.u, e.v):
            if w not in vset:
                problems.append(f"edge {e.id}: unknown endpoint {w}")
    for v in g.vertices:
        bv = inst.b.get(v)
        if not isinstance(bv, int) or bv < 0:
            problems.append(f"vertex {v}: b must be a non-negative integer, got {bv!r}")
    for e in g.edges:
        if e.id not in inst.weights:
            problems.append(f"edge {e.id}: missing weight")
    if inst.mode not in (FACTOR, MATCHING):
        problems.append(f"unknown mode {inst.mode!r}")
    owner: dict[int, int] = {}
    for i, t in enumerate(inst.triangle_edges):
        try:
            triangle_from_edges(g, t)
        except InstanceError as exc:
            problems.append(str(exc))
        for e in t:
            if e in owner and owner[e] != i:
                problems.append(
                    f"triangles {owner[e]} and {i} not edge-disjoint (share edge {e})"
                )
            owner.setdefault(e, i)
    return problems


def require_valid(inst: Instance) -> None:
    problems = validate_instance(inst)
    if problems:
        raise InstanceError("; ".join(problems))


def degrees(inst: Instance, M: Iterable[int]) -> dict[int, int]:
    g = inst.graph
    deg = {v: 0 for v in g.vertices}
    em = g.edge_map
    for eid in M:
        try:
            e = em[eid]
        except KeyError:
            raise InstanceError(f"unknown edge id {eid}") from None
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def is_tfree(inst: Instance, M: Iterable[int]) -> bool:
    M = set(M)
    return not any(set(t) <= M for t in inst.triangle_edges)


def is_tfree_bfactor(inst: Instance, M: Iterable[int]) -> bool:
    M = set(M)
    deg = degrees(inst, M)
    return all(deg[v] == inst.b[v] for v in inst.graph.vertices) and is_tfree(inst, M)


def is_tfree_bmatching(inst: Instance, M: Iterable[int]) -> bool:
    M = set(M)
    deg = degrees(inst, M)
    return all(deg[v] <= inst.b[v] for v in inst.graph.vertices) and is_tfree(inst, M)


@dataclass(frozen=True)
class Reduction:
    factor_instance: Instance
    original_edges: frozenset[int]
    dummy: int

    def back(self, M: Iterable[int]) -> frozenset[int]:
        return frozenset(e for e in M if e in self.original_edges)


def reduce_matching_to_factor(inst: Instance) -> Reduction:
    """Turn a b-matching instance into an equivalent b-factor instance.

    A dummy vertex D with b(D) = b(V) is joined to each vertex v by b(v)
    parallel zero-weight edges and carries floor(b(D)/2) zero-weight
    self-loops. Triangles are unchanged.
    """
    g = inst.graph
    dummy = max(g.vertices, default=-1) + 1
    next_id = max((e.id for e in g.edges), default=-1) + 1
    bd = inst.total_b()
    new_edges = list(g.edges)
    weights = dict(inst.weights)
    for v in g.vertices:
        for _ in range(inst.b[v]):
            new_edges.append(Edge(next_id, v, dummy))
            weights[next_id] = Fraction(0)
            next_id += 1
    for _ in range(bd // 2):
        new_edges.append(Edge(next_id, dummy, dummy))
        weights[next_id] = Fraction(0)
        next_id += 1
    b = dict(inst.b)
    b[dummy] = bd
    reduced = Instance(
        graph=MultiGraph(g.vertices + (dummy,), tuple(new_edges)),
        b=b,
        triangle_edges=inst.triangle_edges,
        weights=weights,
        mode=FACTOR,
    )
    return Reduction(reduced, frozenset(e.id for e in g.edges), dummy)


def enumerate_tfree_bfactors(
    inst: Instance,
    cap: int | None = None,
    bound: int = DEFAULT_ENUM_BOUND,
    mode: str | None = None,
) -> list[frozenset[int]]:
    """All T-free b-factors (or b-matchings in matching mode) by DFS.

    Edges are decided in ascending id order; the output is sorted
    lexicographically by the sorted edge-id tuples.
    """
    mode = mode or inst.mode
    g = inst.graph
    edges = sorted(g.edges, key=lambda e: e.id)
    if len(edges) > bound:
        raise EnumerationBoundError(f"{len(edges)} edges exceed enumeration bound {bound}")
    exact = mode == FACTOR
    if exact and inst.total_b() % 2:
        return []
    residual = dict(inst.b)
    # remaining[i][v]: degree still available to v from edges[i:]
    remaining = [dict.fromkeys(g.vertices, 0) for _ in range(len(edges) + 1)]
    for i in range(len(edges) - 1, -1, -1):
        remaining[i] = dict(remaining[i + 1])
        e = edges[i]
        remaining[i][e.u] += 1
        remaining[i][e.v] += 1
    tri_of = inst.triangle_of_edge
    tri_count = [0] * len(inst.triangle_edges)
    out: list[frozenset[int]] = []
    chosen: list[int] = []

    def feasible(i: int, touched: tuple[int, ...]) -> bool:
        if not exact:
            return True
        return all(residual[v] <= remaining[i][v] for v in touched)

    def dfs(i: int) -> None:
        if i == len(edges):
            if not exact or all(r == 0 for r in residual.values()):
                out.append(frozenset(chosen))
                if cap is not None and len(out) > cap:
                    raise EnumerationBoundError(f"more than {cap} solutions")
            return
        e = edges[i]
        ends = (e.u,) if e.is_loop else (e.u, e.v)
        need = 2 if e.is_loop else 1
        t = tri_of.get(e.id)
        if all(residual[v] >= need for v in ends) and (t is None or tri_count[t] < 2):
            for v in (e.u, e.v):
                residual[v] -= 1
            if t is not None:
                tri_count[t] += 1
            chosen.append(e.id)
            if feasible(i + 1, ends):
                dfs(i + 1)
            chosen.pop()
            if t is not None:
                tri_count[t] -= 1
            for v in (e.u, e.v):
                residual[v] += 1
        if feasible(i + 1, ends):
            dfs(i + 1)

    dfs(0)
    out.sort(key=sorted)
    return out


@dataclass(frozen=True)
class BruteForceResult:
    status: str
    weight: Fraction | None
    witness: frozenset[int] | None


def brute_force_optimum(inst: Instance, bound: int = DEFAULT_ENUM_BOUND) -> BruteForceResult:
    """Exhaustive optimum; ties go to the lexicographically least edge set."""
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for M in enumerate_tfree_bfactors(inst, bound=bound):
        key = tuple(sorted(M))
        w = inst.weight(M)
        if best is None or w > best[0] or (w == best[0] and key < best[1]):
            best = (w, key)
    if best is None:
        return BruteForceResult("infeasible", None, None)
    return BruteForceResult("optimal", best[0], frozenset(best[1]))


@dataclass(frozen=True)
class HullResult:
    inside: bool
    combination: dict[frozenset[int], Fraction] | None = None
    certificate: dict | None = None


def hull_membership(
    inst: Instance, x: Mapping[int, Fraction], bound: int = DEFAULT_ENUM_BOUND
) -> HullResult:
    """Decide whether ``x`` lies in the convex hull of T-free b-factors.

    Solved as an exact LP feasibility problem over the enumerated
    characteristic vectors. ``outside`` carries the Farkas multipliers of
    that LP (verifiable with :func:`tfree.lp.verify_farkas`).
    """
    from .lp import LpModel, solve

    factors = enumerate_tfree_bfactors(inst, bound=bound, mode=FACTOR)
    model = LpModel()
    for k in range(len(factors)):
        model.add_variable(("lam", k), lo=0)
    model.add_row({("lam", k): 1 for k in range(len(factors))}, "=", 1, tag="convexity")
    for e in inst.edge_ids:
        coeffs = {("lam", k): 1 for k, M in enumerate(factors) if e in M}
        model.add_row(coeffs, "=", Fraction(x.get(e, 0)), tag=("edge", e))
    res = solve(model)
    if res.status == "optimal":
        combo = {
            factors[k]: res.point[("lam", k)]
            for k in range(len(factors))
            if res.point[("lam", k)] != 0
        }
        return HullResult(True, combination=combo)
    return HullResult(False, certificate={"model": model, "farkas": res.farkas})


def all_edge_subsets(inst: Instance) -> Iterable[frozenset[int]]:
    ids = inst.edge_ids
    for r in range(len(ids) + 1):
        for c in combinations(ids, r):
            yield frozenset(c)
