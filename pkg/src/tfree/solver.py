"""Cutting-plane optimisation over the extended formulation and integral
extraction by self-reducible variable fixing."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .formulation import (
    CutTriple,
    ExtendedPoint,
    build_base_model,
    cut_row,
    point_from_lp,
    x_var,
)
from .graph import (
    FACTOR,
    Instance,
    InstanceError,
    is_tfree_bfactor,
    reduce_matching_to_factor,
    require_valid,
)
from .lp import LpModel, solve as lp_solve, verify_farkas
from .separation import separate

log = logging.getLogger(__name__)

DEFAULT_MAX_CUTS = 10_000


class SolverError(RuntimeError):
    """Internal inconsistency; signals a bug rather than bad input."""


@dataclass
class LpStats:
    lp_solves: int = 0
    pivots: int = 0
    separations: int = 0


@dataclass
class Relaxation:
    status: str
    value: Fraction | None
    point: ExtendedPoint | None
    cuts: list[CutTriple]
    model: LpModel
    farkas: dict[int, Fraction] | None = None
    history: list[Fraction] = field(default_factory=list)


class CuttingPlane:
    """Base model plus an accumulating pool of (8)-rows.

    Rows stay valid for the T-free b-factor polytope, so the pool is shared
    across the re-solves performed during extraction.
    """

    def __init__(self, inst: Instance, max_cuts: int = DEFAULT_MAX_CUTS):
        self.inst = inst
        self.model = build_base_model(inst)
        self.cuts: list[CutTriple] = []
        self._seen: set[CutTriple] = set()
        self.max_cuts = max_cuts
        self.stats = LpStats()
        # (LP point, cut it triggered, LP value) for every cut added by run()
        self.trace: list[tuple[ExtendedPoint, CutTriple, Fraction]] = []

    def add_cut(self, cut: CutTriple) -> None:
        if cut in self._seen:
            raise SolverError(f"separation returned a cut already in the model: {cut}")
        if len(self.cuts) >= self.max_cuts:
            raise SolverError(f"cut limit {self.max_cuts} reached")
        self._seen.add(cut)
        self.cuts.append(cut)
        coeffs, sense, rhs = cut_row(self.inst, cut)
        self.model.add_row(coeffs, sense, rhs, tag=("(8)", len(self.cuts) - 1))

    def run(self) -> Relaxation:
        history = []
        while True:
            res = lp_solve(self.model)
            self.stats.lp_solves += 1
            self.stats.pivots += res.pivots
            if res.status == "infeasible":
                if not verify_farkas(self.model, res.farkas):
                    raise SolverError("LP reported infeasible with an invalid certificate")
                return Relaxation("infeasible", None, None, list(self.cuts), self.model, res.farkas, history)
            if res.status != "optimal":
                raise SolverError(f"LP status {res.status} on a bounded model")
            history.append(res.value)
            point = point_from_lp(self.inst, res.point)
            sep = separate(self.inst, point)
            self.stats.separations += 1
            if sep.status == "feasible":
                return Relaxation("optimal", res.value, point, list(self.cuts), self.model, None, history)
            if sep.family != "(8)":
                raise SolverError(f"LP optimum violates static family {sep.family}: {sep.detail}")
            log.debug("cut %s with lhs %s", sep.cut, sep.lhs)
            self.add_cut(sep.cut)
            self.trace.append((point, sep.cut, res.value))


def _odd_total_certificate(inst: Instance) -> Relaxation:
    """b(V) odd: (V, {}, {}) is in F and reads 0 >= 1."""
    model = build_base_model(inst)
    cut = CutTriple(frozenset(inst.graph.vertices), frozenset(), frozenset())
    coeffs, sense, rhs = cut_row(inst, cut)
    row = model.add_row(coeffs, sense, rhs, tag=("(8)", 0))
    farkas = {row: Fraction(1)}
    assert verify_farkas(model, farkas)
    return Relaxation("infeasible", None, None, [cut], model, farkas)


def solve_relaxation(inst: Instance, max_cuts: int = DEFAULT_MAX_CUTS) -> Relaxation:
    """Maximise w.x over P by cutting planes; the value is the T-free optimum."""
    require_valid(inst)
    if inst.mode != FACTOR:
        raise InstanceError("solve_relaxation expects a factor-mode instance")
    if inst.total_b() % 2:
        return _odd_total_certificate(inst)
    return CuttingPlane(inst, max_cuts).run()


def extract_integral(cp: CuttingPlane, relax: Relaxation) -> frozenset[int]:
    """Fix x_e = 1 if the optimum survives, else x_e = 0, edge by edge."""
    inst = cp.inst
    target = relax.value
    current = relax.point
    for e in sorted(inst.edge_ids):
        key = x_var(e)
        if current.x[e] == 1:
            cp.model.set_bounds(key, 1, 1)
            continue
        cp.model.set_bounds(key, 1, 1)
        trial = cp.run()
        if trial.status == "optimal" and trial.value == target:
            current = trial.point
            continue
        cp.model.set_bounds(key, 0, 0)
        trial = cp.run()
        if trial.status != "optimal" or trial.value != target:
            raise SolverError(f"fixing edge {e} to 0 lost the optimum {target}")
        current = trial.point
    M = frozenset(e for e in inst.edge_ids if current.x[e] == 1)
    if any(v not in (0, 1) for v in current.x.values()):
        raise SolverError("extraction ended with a fractional point")
    if not is_tfree_bfactor(inst, M) or inst.weight(M) != target:
        raise SolverError("extracted edge set is not an optimal T-free b-factor")
    return M


@dataclass
class SolveReport:
    status: str
    optimum: Fraction | None
    factor: frozenset[int] | None
    cuts: list[CutTriple]
    iterations: int
    stats: LpStats
    farkas: dict[int, Fraction] | None = None
    model: LpModel | None = None

    def to_json(self) -> dict:
        from .io import fmt_fraction

        return {
            "status": self.status,
            "value": None if self.optimum is None else fmt_fraction(self.optimum),
            "edges": sorted(self.factor) if self.factor is not None else [],
            "cuts": len(self.cuts),
            "iterations": self.iterations,
        }


def solve(inst: Instance, max_cuts: int = DEFAULT_MAX_CUTS) -> SolveReport:
    """Maximum-weight T-free b-factor (or b-matching, by reduction)."""
    require_valid(inst)
    if inst.mode != FACTOR:
        red = reduce_matching_to_factor(inst)
        rep = solve(red.factor_instance, max_cuts)
        if rep.factor is not None:
            rep.factor = red.back(rep.factor)
        return rep
    if inst.total_b() % 2:
        relax = _odd_total_certificate(inst)
        return SolveReport("infeasible", None, None, relax.cuts, 0, LpStats(), relax.farkas, relax.model)
    cp = CuttingPlane(inst, max_cuts)
    relax = cp.run()
    if relax.status == "infeasible":
        return SolveReport(
            "infeasible", None, None, relax.cuts, cp.stats.lp_solves, cp.stats, relax.farkas, relax.model
        )
    M = extract_integral(cp, relax)
    return SolveReport("optimal", relax.value, M, list(cp.cuts), cp.stats.lp_solves, cp.stats)
