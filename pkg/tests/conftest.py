import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tfree.generators import greedy_triangles
from tfree.graph import FACTOR, MATCHING, make_instance
from tfree.io import instance_from_json

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def load_corpus():
    raw = json.loads((DATA / "corpus.json").read_text())
    return [(item["seed"], instance_from_json(item)) for item in raw]


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


fractions01 = st.builds(
    lambda n, d: Fraction(min(n, d), d), st.integers(0, 12), st.integers(1, 12)
)


@st.composite
def small_instances(draw, max_vertices=5, max_edges=9, mode=None, loops=True):
    """Multigraphs with a greedy edge-disjoint triangle set and rational weights."""
    n = draw(st.integers(1, max_vertices))
    vertices = list(range(1, n + 1))
    m = draw(st.integers(0, max_edges))
    edges = []
    for i in range(m):
        u = draw(st.sampled_from(vertices))
        v = draw(st.sampled_from(vertices)) if loops or n == 1 else draw(
            st.sampled_from([w for w in vertices if w != u] or [u])
        )
        edges.append((i + 1, u, v))
    b = {v: draw(st.integers(0, 3)) for v in vertices}
    w = {
        e[0]: Fraction(draw(st.integers(-3, 9)), draw(st.integers(1, 4))) for e in edges
    }
    tris = greedy_triangles(edges, limit=draw(st.integers(0, 3)))
    mode = mode or draw(st.sampled_from([FACTOR, MATCHING]))
    return make_instance(vertices, edges, b, tris, w, mode)
