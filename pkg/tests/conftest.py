from __future__ import annotations

import os
from itertools import combinations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from loosehc.hgraph import Hypergraph3

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def hypergraphs(draw, min_n: int = 3, max_n: int = 9, max_edges: int | None = None):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    chosen = draw(st.lists(st.sampled_from(triples), unique=True, max_size=max_edges or len(triples)))
    return Hypergraph3(n, chosen)


def random_graph(n: int, p: float, seed: int) -> Hypergraph3:
    rng = np.random.default_rng(seed)
    return Hypergraph3(n, [t for t in combinations(range(n), 3) if rng.random() < p])


@pytest.fixture
def tiny_cycle() -> Hypergraph3:
    return Hypergraph3(6, [(0, 1, 2), (2, 3, 4), (4, 5, 0)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
