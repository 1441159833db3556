from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tfree.lp import LpModel, Row, add_rows_and_resolve, solve, verify_farkas


def two_var(rows, obj, bounds=((0, None), (0, None))):
    m = LpModel()
    for k, (lo, hi) in zip("xy", bounds):
        m.add_variable(k, lo, hi)
    for a, b, sense, rhs in rows:
        m.add_row({"x": a, "y": b}, sense, rhs)
    m.set_objective({"x": obj[0], "y": obj[1]}, "max")
    return m


def vertex_oracle(rows, obj, bounds):
    """Max of obj over a bounded 2-D polygon by intersecting every line pair."""
    lines = [(a, b, rhs) for a, b, _, rhs in rows]
    for k, (lo, hi) in enumerate(bounds):
        unit = (1, 0) if k == 0 else (0, 1)
        lines += [(*unit, lo), (*unit, hi)]
    best = None
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = Fraction(a1 * b2 - a2 * b1)
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        ok = bounds[0][0] <= x <= bounds[0][1] and bounds[1][0] <= y <= bounds[1][1]
        ok = ok and all(
            (a * x + b * y <= r) if s == "<=" else (a * x + b * y >= r) if s == ">=" else (a * x + b * y == r)
            for a, b, s, r in rows
        )
        if ok:
            v = obj[0] * x + obj[1] * y
            best = v if best is None or v > best else best
    return best


def residuals_zero(model, res):
    for v in model.variables:
        val = res.point[v.key]
        assert v.lo is None or val >= v.lo
        assert v.hi is None or val <= v.hi
    for r in model.rows:
        act = model.row_activity(r, res.point)
        assert {"<=": act <= r.rhs, ">=": act >= r.rhs, "=": act == r.rhs}[r.sense]


class TestExamples:
    def test_upper_bound(self):
        m = LpModel()
        m.add_variable("x", 0, 3)
        m.set_objective({"x": 1})
        res = solve(m)
        assert res.status == "optimal" and res.value == 3

    def test_tight_row(self):
        m = two_var([(1, 1, "<=", 1)], (1, 1), ((0, 1), (0, 1)))
        assert solve(m).value == 1

    def test_two_variable_polygon(self):
        # polygon vertices (0,0), (2,0), (0,2), (8/5,6/5); objective 2x+3y
        rows = [(1, 2, "<=", 4), (3, 1, "<=", 6)]
        res = solve(two_var(rows, (2, 3)))
        assert res.point == {"x": Fraction(8, 5), "y": Fraction(6, 5)}
        assert res.value == Fraction(34, 5)
        assert vertex_oracle(rows, (2, 3), ((0, 10), (0, 10))) == Fraction(34, 5)

    def test_unbounded(self):
        m = LpModel()
        m.add_variable("x", 0, None)
        m.set_objective({"x": 1})
        assert solve(m).status == "unbounded"

    def test_free_and_min(self):
        m = LpModel()
        m.add_variable("x", None, None)
        m.add_row({"x": 1}, ">=", Fraction(-7, 3))
        m.set_objective({"x": 1}, "min")
        res = solve(m)
        assert res.value == Fraction(-7, 3)

    def test_undeclared_variable(self):
        m = LpModel()
        with pytest.raises(KeyError):
            m.add_row({"z": 1}, "<=", 1)

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            LpModel().add_variable("x", 2, 1)

    def test_dump(self):
        m = two_var([(1, 2, "<=", 4)], (2, 3))
        assert "x" in m.dump() and "<=" in m.dump()


class TestInfeasible:
    def test_conflicting_rows(self):
        m = LpModel()
        m.add_variable("x", 0, 1)
        m.add_row({"x": 1}, ">=", 2)
        res = solve(m)
        assert res.status == "infeasible"
        assert verify_farkas(m, res.farkas)

    def test_equalities(self):
        m = LpModel()
        for k in "abc":
            m.add_variable(k, 0, 1)
        m.add_row({"a": 1, "b": 1}, "=", 2)
        m.add_row({"b": 1, "c": 1}, "=", 2)
        m.add_row({"a": 1, "b": 1, "c": 1}, "<=", 2)
        res = solve(m)
        assert res.status == "infeasible"
        assert verify_farkas(m, res.farkas)

    def test_bogus_certificate_rejected(self):
        m = LpModel()
        m.add_variable("x", 0, 1)
        m.add_row({"x": 1}, "<=", 1)
        assert not verify_farkas(m, {0: Fraction(-1)})
        assert not verify_farkas(m, {0: Fraction(1)})
        assert not verify_farkas(m, {})


class TestAddRows:
    def test_tighten(self):
        m = LpModel()
        m.add_variable("x", 0, None)
        m.add_row({"x": 1}, "<=", 3)
        m.set_objective({"x": 1})
        assert solve(m).value == 3
        ext, res = add_rows_and_resolve(m, [({"x": 1}, "<=", 1)])
        assert res.value == 1
        assert len(m.rows) == 1 and len(ext.rows) == 2

    def test_implied_row(self):
        m = two_var([(1, 1, "<=", 1)], (1, 2), ((0, 1), (0, 1)))
        before = solve(m)
        _, after = add_rows_and_resolve(m, [Row({"x": 1, "y": 1}, "<=", Fraction(5))])
        assert after.value == before.value and after.point == before.point


lp_rows = st.lists(
    st.tuples(
        st.integers(-4, 4), st.integers(-4, 4), st.sampled_from(["<=", ">="]), st.integers(-6, 12)
    ),
    min_size=1,
    max_size=4,
)


@given(lp_rows, st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.integers(1, 6), st.integers(1, 6))
def test_against_vertex_enumeration(rows, obj, ux, uy):
    bounds = ((0, ux), (0, uy))
    res = solve(two_var(rows, obj, bounds))
    best = vertex_oracle(rows, obj, bounds)
    if best is None:
        assert res.status == "infeasible"
        assert verify_farkas(two_var(rows, obj, bounds), res.farkas)
    else:
        assert res.status == "optimal" and res.value == best
        residuals_zero(two_var(rows, obj, bounds), res)


@st.composite
def random_models(draw):
    n = draw(st.integers(1, 5))
    m = LpModel()
    for j in range(n):
        lo = draw(st.sampled_from([None, 0, -2]))
        hi = draw(st.sampled_from([None, 1, 3]))
        m.add_variable(j, lo, hi)
    for _ in range(draw(st.integers(0, 5))):
        coeffs = {j: Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3))) for j in range(n)}
        m.add_row(coeffs, draw(st.sampled_from(["<=", "=", ">="])), draw(st.integers(-4, 4)))
    m.set_objective({j: draw(st.integers(-3, 3)) for j in range(n)}, draw(st.sampled_from(["max", "min"])))
    return m


@given(random_models())
def test_status_invariants(model):
    res = solve(model)
    if res.status == "optimal":
        residuals_zero(model, res)
        assert res.value == sum(c * res.point[k] for k, c in model.objective.items())
    elif res.status == "infeasible":
        assert verify_farkas(model, res.farkas)


@given(random_models())
def test_deterministic(model):
    assert solve(model) == solve(model.copy())


@given(random_models(), st.lists(st.tuples(st.integers(-2, 2), st.integers(-3, 3)), min_size=1, max_size=3))
def test_cold_equals_incremental(model, extra):
    rows = []
    for a, rhs in extra:
        rows.append(({k.key: a for k in model.variables}, "<=", rhs))
    ext, res = add_rows_and_resolve(model, rows)
    scratch = model.copy()
    for r in rows:
        scratch.add_row(*r)
    cold = solve(scratch)
    assert (res.status, res.value, res.point) == (cold.status, cold.value, cold.point)
    base = solve(model)
    if res.status == "optimal" and base.status == "optimal":
        assert (res.value <= base.value) if model.sense == "max" else (res.value >= base.value)
