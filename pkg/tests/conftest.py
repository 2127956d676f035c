import random

import pytest
from hypothesis import strategies as st

from eppa import Graph
from eppa.oracle import random_antipodal_space
from eppa.switching import associated_two_graph


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and (rep.when == "call" or rep.outcome != "passed"):
        rep.user_properties.append(("criterion", mark.args))


def pytest_terminal_summary(terminalreporter):
    results: dict[int, tuple[str, bool]] = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name != "criterion":
                    continue
                num, label = value
                ok = results.get(num, (label, True))[1] and rep.outcome == "passed"
                results[num] = (label, ok)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        label, ok = results[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num}: {label}")


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


@st.composite
def graph_and_subset(draw, min_n=0, max_n=7):
    g = draw(graphs(min_n, max_n))
    s = draw(st.sets(st.integers(0, g.n - 1))) if g.n else set()
    return g, frozenset(s)


@st.composite
def two_graphs(draw, min_n=0, max_n=7):
    return associated_two_graph(draw(graphs(min_n, max_n)))


@st.composite
def antipodal_spaces(draw, min_points=0, max_points=8):
    points = draw(st.sampled_from(range(min_points, max_points + 1, 2)))
    # the generator already labels points at random
    return random_antipodal_space(points, random.Random(draw(st.integers(0, 2**32 - 1))))
