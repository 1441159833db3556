"""Oracle cross-checks for a single instance.

Each check returns a list of human-readable mismatches; empty means the
implementation and the brute-force oracle agree.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import solver as _solver
from .formulation import (
    ExtendedPoint,
    build_base_model,
    canonical_y,
    check_point,
    point_from_lp,
)
from .graph import (
    FACTOR,
    Instance,
    brute_force_optimum,
    enumerate_tfree_bfactors,
    hull_membership,
    reduce_matching_to_factor,
)
from .lp import solve as lp_solve
from .separation import (
    brute_force_min_lhs,
    min_odd_cut,
    separate,
    transform,
)


def sample_points(inst: Instance, count: int, seed: int = 0) -> list[ExtendedPoint]:
    """Points satisfying (1), (2), (4)-(7): LP vertices of the base model under
    random objectives, and random convex combinations of them."""
    if inst.total_b() % 2:
        return []
    rng = random.Random(seed)
    model = build_base_model(inst)
    vertices: list[ExtendedPoint] = []
    out: list[ExtendedPoint] = []
    for _ in range(count):
        if len(vertices) >= 2 and rng.random() < 0.5:
            k = rng.randint(2, min(3, len(vertices)))
            parts = rng.sample(vertices, k)
            lam = [Fraction(rng.randint(1, 5)) for _ in parts]
            total = sum(lam)
            x = {e: sum(l * p.x[e] for l, p in zip(lam, parts)) / total for e in parts[0].x}
            y = {j: sum(l * p.y[j] for l, p in zip(lam, parts)) / total for j in parts[0].y}
            out.append(ExtendedPoint(x, y))
            continue
        model.set_objective(
            {v.key: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in model.variables}
        )
        res = lp_solve(model)
        if res.status != "optimal":
            break
        p = point_from_lp(inst, res.point)
        vertices.append(p)
        out.append(p)
    return out


def check_solver(inst: Instance, solve_fn=None) -> list[str]:
    solve_fn = solve_fn or _solver.solve
    rep = solve_fn(inst)
    bf = brute_force_optimum(inst)
    problems = []
    if rep.status != bf.status or rep.optimum != bf.weight:
        problems.append(
            f"solver {rep.status}/{rep.optimum} vs brute force {bf.status}/{bf.weight}"
        )
    elif rep.status == "optimal" and inst.weight(rep.factor) != bf.weight:
        problems.append("solver witness weight differs from optimum")
    return problems


def check_matching_reduction(inst: Instance, solve_fn=None) -> list[str]:
    if inst.mode == FACTOR:
        return []
    solve_fn = solve_fn or _solver.solve
    red = reduce_matching_to_factor(inst)
    rep = solve_fn(red.factor_instance)
    bf = brute_force_optimum(inst)
    if (rep.status, rep.optimum) != (bf.status, bf.weight):
        return [f"reduced factor optimum {rep.optimum} vs matching brute force {bf.weight}"]
    return []


def check_separation(inst: Instance, points: list[ExtendedPoint]) -> list[str]:
    """G'-route vs brute force: verdicts agree, the G' minimum never exceeds
    the brute-force one, and they coincide whenever either is below 1."""
    problems = []
    for k, p in enumerate(points):
        oc = min_odd_cut(transform(inst, p)) if inst.graph.vertices else None
        g = oc.value if oc else None
        bf = brute_force_min_lhs(inst, p).value
        g_viol = g is not None and g < 1
        b_viol = bf is not None and bf < 1
        if g_viol != b_viol:
            problems.append(f"point {k}: verdict G' {g} vs brute force {bf}")
        elif g_viol and g != bf:
            problems.append(f"point {k}: minimum G' {g} vs brute force {bf}")
        elif g is not None and bf is not None and g > bf:
            problems.append(f"point {k}: G' minimum {g} above brute force {bf}")
        sep = separate(inst, p)
        if (sep.status == "violated") != b_viol:
            problems.append(f"point {k}: separate says {sep.status}, brute force min {bf}")
    return problems


def check_hull(inst: Instance, points: list[ExtendedPoint]) -> list[str]:
    """Points that separate accepts must lie in the T-free hull, and every
    canonical point of a T-free b-factor must be accepted (factor mode)."""
    problems = []
    for k, p in enumerate(points):
        if separate(inst, p).status == "feasible" and not hull_membership(inst, p.x).inside:
            problems.append(f"point {k}: accepted by separation but outside the hull")
    for M in enumerate_tfree_bfactors(inst, mode=FACTOR):
        pt = canonical_y(inst, M)
        v = check_point(inst, pt)
        if v is not None:
            problems.append(f"canonical point of {sorted(M)} violates {v.describe()}")
        elif separate(inst, pt).status != "feasible":
            problems.append(f"canonical point of {sorted(M)} rejected by separation")
    return problems


def verify_instance(inst: Instance, level: str = "quick", seed: int = 0, solve_fn=None) -> list[str]:
    npoints = 6 if level == "quick" else 40
    problems = check_solver(inst, solve_fn)
    problems += check_matching_reduction(inst, solve_fn)
    if inst.mode == FACTOR:
        pts = sample_points(inst, npoints, seed)
        problems += check_separation(inst, pts)
        if level == "exhaustive":
            problems += check_hull(inst, pts)
        else:
            problems += check_hull(inst, [])
    return problems
