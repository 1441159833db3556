"""Exact rational LP: bounded-variable primal simplex with Bland's rule.

Every row gets a slack whose bounds encode the row sense, so the working
system is ``A x + s = rhs`` with box bounds on all columns. Phase 1 adds one
artificial per row and minimises their sum; phase 2 fixes the artificials at
zero and optimises the real objective. Arithmetic is ``Fraction`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

LE, EQ, GE = "<=", "=", ">="
_ZERO = Fraction(0)


@dataclass
class Variable:
    key: Hashable
    lo: Fraction | None = _ZERO
    hi: Fraction | None = None


@dataclass
class Row:
    coeffs: dict[Hashable, Fraction]
    sense: str
    rhs: Fraction
    tag: Hashable = None


@dataclass
class LpModel:
    variables: list[Variable] = field(default_factory=list)
    rows: list[Row] = field(default_factory=list)
    objective: dict[Hashable, Fraction] = field(default_factory=dict)
    sense: str = "max"

    def __post_init__(self):
        self._index = {v.key: i for i, v in enumerate(self.variables)}

    def add_variable(self, key: Hashable, lo=_ZERO, hi=None) -> None:
        if key in self._index:
            raise ValueError(f"duplicate variable {key!r}")
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"variable {key!r}: lower bound {lo} above upper bound {hi}")
        self._index[key] = len(self.variables)
        self.variables.append(Variable(key, lo, hi))

    def set_bounds(self, key: Hashable, lo=_ZERO, hi=None) -> None:
        var = self.variables[self._index[key]]
        var.lo = None if lo is None else Fraction(lo)
        var.hi = None if hi is None else Fraction(hi)

    def add_row(self, coeffs: Mapping[Hashable, object], sense: str, rhs, tag=None) -> int:
        if sense not in (LE, EQ, GE):
            raise ValueError(f"bad row sense {sense!r}")
        clean = {}
        for k, c in coeffs.items():
            if k not in self._index:
                raise KeyError(f"row references undeclared variable {k!r}")
            c = Fraction(c)
            if c:
                clean[k] = c
        self.rows.append(Row(clean, sense, Fraction(rhs), tag))
        return len(self.rows) - 1

    def set_objective(self, coeffs: Mapping[Hashable, object], sense: str = "max") -> None:
        if sense not in ("max", "min"):
            raise ValueError(f"bad objective sense {sense!r}")
        for k in coeffs:
            if k not in self._index:
                raise KeyError(f"objective references undeclared variable {k!r}")
        self.objective = {k: Fraction(c) for k, c in coeffs.items() if c}
        self.sense = sense

    def index(self, key: Hashable) -> int:
        return self._index[key]

    def copy(self) -> "LpModel":
        m = LpModel(
            [Variable(v.key, v.lo, v.hi) for v in self.variables],
            [Row(dict(r.coeffs), r.sense, r.rhs, r.tag) for r in self.rows],
            dict(self.objective),
            self.sense,
        )
        return m

    def row_activity(self, r: Row, point: Mapping[Hashable, Fraction]) -> Fraction:
        return sum((c * point[k] for k, c in r.coeffs.items()), _ZERO)

    def dump(self) -> str:
        """Human-readable listing, for debugging."""
        lines = [f"{self.sense} " + _fmt_lin(self.objective)]
        for i, r in enumerate(self.rows):
            lines.append(f"  r{i} [{r.tag}]: {_fmt_lin(r.coeffs)} {r.sense} {r.rhs}")
        for v in self.variables:
            lines.append(f"  {v.lo} <= {v.key} <= {v.hi}")
        return "\n".join(lines)


def _fmt_lin(coeffs) -> str:
    return " + ".join(f"{c}*{k}" for k, c in coeffs.items()) or "0"


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None = None
    point: dict | None = None
    farkas: dict[int, Fraction] | None = None
    pivots: int = 0


class _Tableau:
    """Dense tableau over columns [structural | slack | artificial]."""

    def __init__(self, model: LpModel):
        n = len(model.variables)
        m = len(model.rows)
        self.n, self.m = n, m
        self.ncols = n + 2 * m
        lo: list[Fraction | None] = [v.lo for v in model.variables]
        hi: list[Fraction | None] = [v.hi for v in model.variables]
        for r in model.rows:
            if r.sense == LE:
                lo.append(_ZERO), hi.append(None)
            elif r.sense == GE:
                lo.append(None), hi.append(_ZERO)
            else:
                lo.append(_ZERO), hi.append(_ZERO)
        lo += [_ZERO] * m
        hi += [None] * m
        self.lo, self.hi = lo, hi

        # nonbasic structural and slack columns start at a finite bound (or 0 if free)
        val = [_ZERO] * self.ncols
        for j in range(n + m):
            if lo[j] is not None:
                val[j] = lo[j]
            elif hi[j] is not None:
                val[j] = hi[j]
        rows = []
        self.row_signs = []
        for i, r in enumerate(model.rows):
            row = {model.index(k): c for k, c in r.coeffs.items()}
            row[n + i] = Fraction(1)
            resid = r.rhs - sum((c * val[j] for j, c in row.items()), _ZERO)
            sign = Fraction(1) if resid >= 0 else Fraction(-1)
            self.row_signs.append(sign)
            # scale row so the artificial has coefficient +1
            row = {j: c * sign for j, c in row.items()}
            row[n + m + i] = Fraction(1)
            val[n + m + i] = resid * sign
            rows.append(row)
        self.rows = rows  # sparse dict rows of B^-1 [A | I | D]
        self.val = val
        self.basis = [n + m + i for i in range(m)]
        self.is_basic = [False] * self.ncols
        for j in self.basis:
            self.is_basic[j] = True
        self.pivots = 0

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        d = list(cost)
        for i, j in enumerate(self.basis):
            cb = cost[j]
            if cb:
                for k, a in self.rows[i].items():
                    d[k] -= cb * a
        return d

    def duals(self, cost: list[Fraction]) -> list[Fraction]:
        """Row prices c_B^T B^-1 of the sign-scaled system.

        Artificial columns start as the identity, so in the current tableau
        they hold B^-1.
        """
        m, off = self.m, self.n + self.m
        y = [_ZERO] * m
        for i, j in enumerate(self.basis):
            cb = cost[j]
            if cb:
                for k in range(m):
                    a = self.rows[i].get(off + k)
                    if a:
                        y[k] += cb * a
        return y

    def movable(self, j: int) -> bool:
        lo, hi = self.lo[j], self.hi[j]
        return not (lo is not None and hi is not None and lo == hi)

    def run(self, cost: list[Fraction], limit: int = 10**6) -> str:
        """Minimise cost . val from the current basic feasible solution."""
        d = self.reduced_costs(cost)
        while True:
            if self.pivots > limit:
                raise RuntimeError("simplex pivot limit exceeded")
            enter, direction = None, 0
            for j in range(self.ncols):
                if self.is_basic[j] or not d[j] or not self.movable(j):
                    continue
                v = self.val[j]
                if d[j] < 0 and (self.hi[j] is None or v < self.hi[j]):
                    enter, direction = j, 1
                    break
                if d[j] > 0 and (self.lo[j] is None or v > self.lo[j]):
                    enter, direction = j, -1
                    break
            if enter is None:
                return "optimal"
            # ratio test; ties broken by smallest column index (Bland)
            best_t, leave, leave_row = None, None, None
            if self.lo[enter] is not None and self.hi[enter] is not None:
                best_t, leave = self.hi[enter] - self.lo[enter], enter
            for i, row in enumerate(self.rows):
                a = row.get(enter)
                if not a:
                    continue
                alpha = a * direction
                j = self.basis[i]
                if alpha > 0:
                    if self.lo[j] is None:
                        continue
                    t = (self.val[j] - self.lo[j]) / alpha
                else:
                    if self.hi[j] is None:
                        continue
                    t = (self.hi[j] - self.val[j]) / (-alpha)
                if best_t is None or t < best_t or (t == best_t and j < leave):
                    best_t, leave, leave_row = t, j, i
            if best_t is None:
                return "unbounded"
            t = best_t
            if t:
                for i, row in enumerate(self.rows):
                    a = row.get(enter)
                    if a:
                        self.val[self.basis[i]] -= a * direction * t
                self.val[enter] += direction * t
            if leave == enter:
                continue
            # snap the leaving variable exactly onto the bound it reached
            a = self.rows[leave_row][enter] * direction
            self.val[leave] = self.lo[leave] if a > 0 else self.hi[leave]
            self._pivot(leave_row, enter)
            dj = d[enter]
            if dj:
                for k, a in self.rows[leave_row].items():
                    d[k] -= dj * a
            self.pivots += 1

    def _pivot(self, r: int, j: int) -> None:
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            prow = {k: a / piv for k, a in prow.items()}
            self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if not f:
                continue
            for k, a in prow.items():
                nv = row.get(k, _ZERO) - f * a
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        self.is_basic[self.basis[r]] = False
        self.basis[r] = j
        self.is_basic[j] = True


def solve(model: LpModel, pivot_limit: int = 10**6) -> LpResult:
    """Solve ``model`` exactly. Deterministic for a given model."""
    tab = _Tableau(model)
    n, m = tab.n, tab.m
    phase1 = [_ZERO] * (n + m) + [Fraction(1)] * m
    tab.run(phase1, pivot_limit)
    infeas = sum(tab.val[n + m:], _ZERO)
    if infeas > 0:
        y = tab.duals(phase1)
        return LpResult("infeasible", farkas=_farkas_from_phase1(tab, y), pivots=tab.pivots)
    for k in range(n + m, n + 2 * m):
        tab.hi[k] = _ZERO
    sign = -1 if model.sense == "max" else 1
    cost = [_ZERO] * tab.ncols
    for key, c in model.objective.items():
        cost[model.index(key)] = sign * c
    status = tab.run(cost, pivot_limit)
    if status == "unbounded":
        return LpResult("unbounded", pivots=tab.pivots)
    point = {v.key: tab.val[i] for i, v in enumerate(model.variables)}
    value = sum((c * point[k] for k, c in model.objective.items()), _ZERO)
    return LpResult("optimal", value=value, point=point, pivots=tab.pivots)


def _farkas_from_phase1(tab: _Tableau, y: list[Fraction]) -> dict[int, Fraction]:
    # undo the per-row sign scaling so multipliers refer to the caller's rows
    return {i: yi * tab.row_signs[i] for i, yi in enumerate(y) if yi}


def add_rows_and_resolve(model: LpModel, rows) -> tuple[LpModel, LpResult]:
    """Extend a copy of ``model`` with ``rows`` and solve it from scratch."""
    ext = model.copy()
    for r in rows:
        if isinstance(r, Row):
            ext.add_row(r.coeffs, r.sense, r.rhs, r.tag)
        else:
            ext.add_row(*r)
    return ext, solve(ext)


def verify_farkas(model: LpModel, mult: Mapping[int, Fraction]) -> bool:
    """Check exactly that ``mult`` proves the model has no feasible point.

    With slacks ``A x + s = rhs``, the certificate is valid when the maximum
    of ``mult^T (A x + s)`` over the variable box and the slack sign
    constraints is strictly below ``mult^T rhs``.
    """
    if not mult:
        return False
    agg: dict[Hashable, Fraction] = {}
    bound = _ZERO
    for i, y in mult.items():
        if not y:
            continue
        r = model.rows[i]
        if r.sense == LE and y > 0:
            return False
        if r.sense == GE and y < 0:
            return False
        bound += y * r.rhs
        for k, c in r.coeffs.items():
            agg[k] = agg.get(k, _ZERO) + y * c
    best = _ZERO
    for k, c in agg.items():
        if not c:
            continue
        var = model.variables[model.index(k)]
        lim = var.hi if c > 0 else var.lo
        if lim is None:
            return False
        best += c * lim
    return best < bound
