"""Extended formulation: x on edges, y(T, J) on proper subsets of each triangle.

Constraint families are labelled by their conventional numbers:

    (1) x(deg(v)) = b(v)              (5) sum_J y(T, J) = 1
    (2) 0 <= x(e) <= 1                (6) sum_{J containing e} y(T, J) = x(e)
    (3) classical blossom             (7) y(T, J) >= 0
    (4) x(E(T)) <= 2                  (8) blossom strengthened by q*
                                      (9) blossom relaxed by q

A y-variable is keyed ``(t, J)`` with ``t`` the triangle index and ``J`` a
frozenset of edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .graph import Instance, InstanceError, Triangle, require_valid
from .lp import LpModel

_ZERO = Fraction(0)
ONE = Fraction(1)

FAMILIES = ("(1)", "(2)", "(4)", "(5)", "(6)", "(7)")


def proper_subsets(t: Triangle) -> list[frozenset[int]]:
    """The seven proper subsets of E(T): empty, singletons, pairs."""
    a, b, c = t.edges
    return [frozenset(s) for r in range(3) for s in combinations((a, b, c), r)]


def y_keys(inst: Instance) -> list[tuple[int, frozenset[int]]]:
    return [(i, J) for i, t in enumerate(inst.triangles) for J in proper_subsets(t)]


@dataclass
class ExtendedPoint:
    x: dict[int, Fraction]
    y: dict[tuple[int, frozenset[int]], Fraction] = field(default_factory=dict)

    def yv(self, t: int, *edges: int) -> Fraction:
        return self.y.get((t, frozenset(edges)), _ZERO)


@dataclass(frozen=True)
class CutTriple:
    S: frozenset[int]
    F0: frozenset[int]
    F1: frozenset[int]


def x_var(e: int) -> tuple:
    return ("x", e)


def y_var(t: int, J: frozenset[int]) -> tuple:
    return ("y", t, J)


def build_base_model(inst: Instance) -> LpModel:
    """LP over (1), (2), (4)-(7) with objective max w.x; no blossom rows."""
    require_valid(inst)
    g = inst.graph
    model = LpModel()
    for e in g.edges:
        model.add_variable(x_var(e.id), lo=0, hi=1)
    for t, J in y_keys(inst):
        model.add_variable(y_var(t, J), lo=0)
    for v in g.vertices:
        coeffs: dict = {}
        for e in g.incident[v]:
            coeffs[x_var(e.id)] = coeffs.get(x_var(e.id), 0) + g.degree_coeff(e, v)
        model.add_row(coeffs, "=", inst.b[v], tag=("(1)", v))
    for t, tri in enumerate(inst.triangles):
        subsets = proper_subsets(tri)
        model.add_row({y_var(t, J): 1 for J in subsets}, "=", 1, tag=("(5)", t))
        for e in tri.edges:
            coeffs = {y_var(t, J): 1 for J in subsets if e in J}
            coeffs[x_var(e)] = -1
            model.add_row(coeffs, "=", 0, tag=("(6)", t, e))
        model.add_row({x_var(e): 1 for e in tri.edges}, "<=", 2, tag=("(4)", t))
    model.set_objective({x_var(e.id): inst.weights[e.id] for e in g.edges}, "max")
    return model


def lift_y(xa, xb, xc) -> tuple[dict[frozenset[str], Fraction], tuple[str, str, str]]:
    """A y-vector on one triangle consistent with edge values ``(xa, xb, xc)``.

    Edge roles are returned as labels ``"a"``, ``"b"``, ``"c"`` in the order
    given; the result maps frozensets of labels to values.
    """
    vals = {"a": Fraction(xa), "b": Fraction(xb), "c": Fraction(xc)}
    for k, v in vals.items():
        if not 0 <= v <= 1:
            raise ValueError(f"x({k}) = {v} outside [0, 1]")
    if sum(vals.values()) > 2:
        raise ValueError("x(E(T)) exceeds 2")
    # sort descending; stable so equal values keep the given order
    hi, mid, lo = sorted(vals, key=lambda k: -vals[k])
    p, q, r = vals[hi], vals[mid], vals[lo]
    y = {frozenset(s): _ZERO for k in range(3) for s in combinations("abc", k)}
    if p >= q + r:
        y[frozenset((hi, mid))] = q
        y[frozenset((hi, lo))] = r
        y[frozenset()] = 1 - p
        y[frozenset((hi,))] = p - q - r
    else:
        half = Fraction(1, 2)
        y[frozenset((hi, mid))] = half * (p + q - r)
        y[frozenset((hi, lo))] = half * (p + r - q)
        y[frozenset((mid, lo))] = half * (q + r - p)
        y[frozenset()] = 1 - half * (p + q + r)
    return y, (hi, mid, lo)


def lift_point(inst: Instance, x: Mapping[int, Fraction]) -> ExtendedPoint:
    """Extend ``x`` by applying :func:`lift_y` triangle by triangle."""
    y = {}
    for t, tri in enumerate(inst.triangles):
        a, b, c = tri.edges
        local, _ = lift_y(x[a], x[b], x[c])
        name = {"a": a, "b": b, "c": c}
        for J, v in local.items():
            y[(t, frozenset(name[k] for k in J))] = v
    return ExtendedPoint({e: Fraction(x[e]) for e in inst.edge_ids}, y)


def canonical_y(inst: Instance, M: Iterable[int]) -> ExtendedPoint:
    """Integral point of a T-free b-factor: y(T, J) = 1 iff M meets E(T) in J."""
    from .graph import is_tfree_bfactor

    M = frozenset(M)
    if not is_tfree_bfactor(inst, M):
        raise InstanceError("edge set is not a T-free b-factor")
    x = {e: ONE if e in M else _ZERO for e in inst.edge_ids}
    y = {}
    for t, tri in enumerate(inst.triangles):
        hit = M & frozenset(tri.edges)
        for J in proper_subsets(tri):
            y[(t, J)] = ONE if J == hit else _ZERO
    return ExtendedPoint(x, y)


def crossing(inst: Instance, t: int, S: frozenset[int]) -> tuple[int, ...]:
    tri = inst.triangles[t]
    em = inst.graph.edge_map
    return tuple(e for e in tri.edges if (em[e].u in S) != (em[e].v in S))


def _split(inst: Instance, t: int, cut: CutTriple):
    cross = crossing(inst, t, cut.S)
    if len(cross) != 2:
        raise ValueError(f"triangle {t} has {len(cross)} crossing edges; q* needs exactly 2")
    a, b = cross
    (c,) = set(inst.triangles[t].edges) - {a, b}
    return a, b, c


def eval_qstar(inst: Instance, t: int, cut: CutTriple, y) -> Fraction:
    a, b, c = _split(inst, t, cut)
    Y = lambda *es: y.get((t, frozenset(es)), _ZERO)  # noqa: E731
    a1, b1 = a in cut.F1, b in cut.F1
    if not a1 and b1:
        return Y(a) + Y(a, c)
    if a1 and not b1:
        return Y(b) + Y(b, c)
    if a1 and b1:
        return Y() + Y(c)
    return Y(a, b)


def eval_q(inst: Instance, t: int, cut: CutTriple, y) -> Fraction:
    a, b, c = _split(inst, t, cut)
    Y = lambda *es: y.get((t, frozenset(es)), _ZERO)  # noqa: E731
    a1, b1 = a in cut.F1, b in cut.F1
    if not a1 and b1:
        return Y(a) + Y(a, c)
    if a1 and not b1:
        return Y(b) + Y(b, c)
    if a1 and b1:
        return Y(c)
    return _ZERO


def check_cut(inst: Instance, cut: CutTriple) -> None:
    """Raise unless (F0, F1) partitions the cut and b(S) + |F1| is odd."""
    delta = {e.id for e in inst.graph.cut(cut.S)}
    if cut.F0 & cut.F1 or (cut.F0 | cut.F1) != delta:
        raise ValueError("F0, F1 do not partition the cut")
    if (sum(inst.b[v] for v in cut.S) + len(cut.F1)) % 2 == 0:
        raise ValueError("b(S) + |F1| is even")


def triangles_crossing(inst: Instance, S: frozenset[int]) -> list[int]:
    return [t for t in range(len(inst.triangles)) if crossing(inst, t, S)]


def eval_cut_lhs(
    inst: Instance, point: ExtendedPoint, cut: CutTriple, variant: str = "strong"
) -> Fraction:
    """Left-hand side of (8) (``strong``) or (9) (``relaxed``)."""
    check_cut(inst, cut)
    q = eval_qstar if variant == "strong" else eval_q
    lhs = sum((point.x[e] for e in cut.F0), _ZERO)
    lhs += sum((1 - point.x[e] for e in cut.F1), _ZERO)
    for t in triangles_crossing(inst, cut.S):
        lhs -= 2 * q(inst, t, cut, point.y)
    return lhs


def cut_row(inst: Instance, cut: CutTriple, variant: str = "strong"):
    """(8) or (9) for ``cut`` as an LP row ``(coeffs, ">=", rhs)``."""
    coeffs: dict = {}

    def add(k, c):
        coeffs[k] = coeffs.get(k, 0) + c

    for e in cut.F0:
        add(x_var(e), 1)
    for e in cut.F1:
        add(x_var(e), -1)
    for t in triangles_crossing(inst, cut.S):
        a, b, c = _split(inst, t, cut)
        a1, b1 = a in cut.F1, b in cut.F1
        if not a1 and b1:
            terms = [(a,), (a, c)]
        elif a1 and not b1:
            terms = [(b,), (b, c)]
        elif a1 and b1:
            terms = [(), (c,)] if variant == "strong" else [(c,)]
        else:
            terms = [(a, b)] if variant == "strong" else []
        for J in terms:
            add(y_var(t, frozenset(J)), -2)
    return coeffs, ">=", 1 - len(cut.F1)


@dataclass(frozen=True)
class Violation:
    family: str
    where: tuple
    lhs: Fraction
    rhs: Fraction

    def describe(self) -> str:
        return f"{self.family} at {self.where}: lhs {self.lhs} vs rhs {self.rhs}"


def check_point(
    inst: Instance, point: ExtendedPoint, families: Iterable[str] = FAMILIES
) -> Violation | None:
    """First violated constraint among ``families`` in a fixed order, else None."""
    families = set(families)
    g = inst.graph
    x, y = point.x, point.y
    for fam in FAMILIES:
        if fam not in families:
            continue
        if fam == "(1)":
            for v in g.vertices:
                lhs = sum((g.degree_coeff(e, v) * x[e.id] for e in g.incident[v]), _ZERO)
                if lhs != inst.b[v]:
                    return Violation(fam, (v,), lhs, Fraction(inst.b[v]))
        elif fam == "(2)":
            for e in inst.edge_ids:
                if not 0 <= x[e] <= 1:
                    return Violation(fam, (e,), x[e], _ZERO if x[e] < 0 else ONE)
        elif fam == "(4)":
            for t, tri in enumerate(inst.triangles):
                lhs = sum((x[e] for e in tri.edges), _ZERO)
                if lhs > 2:
                    return Violation(fam, (t,), lhs, Fraction(2))
        elif fam == "(5)":
            for t, tri in enumerate(inst.triangles):
                lhs = sum((y.get((t, J), _ZERO) for J in proper_subsets(tri)), _ZERO)
                if lhs != 1:
                    return Violation(fam, (t,), lhs, ONE)
        elif fam == "(6)":
            for t, tri in enumerate(inst.triangles):
                for e in tri.edges:
                    lhs = sum(
                        (y.get((t, J), _ZERO) for J in proper_subsets(tri) if e in J), _ZERO
                    )
                    if lhs != x[e]:
                        return Violation(fam, (t, e), lhs, x[e])
        elif fam == "(7)":
            for t, tri in enumerate(inst.triangles):
                for J in proper_subsets(tri):
                    v = y.get((t, J), _ZERO)
                    if v < 0:
                        return Violation(fam, (t, tuple(sorted(J))), v, _ZERO)
    return None


def point_from_lp(inst: Instance, values: Mapping) -> ExtendedPoint:
    x = {e: values[x_var(e)] for e in inst.edge_ids}
    y = {(t, J): values[y_var(t, J)] for t, J in y_keys(inst)}
    return ExtendedPoint(x, y)
