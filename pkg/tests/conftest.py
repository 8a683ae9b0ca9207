import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from steklov.randgraph import random_connected_graph, random_tree

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def weighted_graphs(draw, min_n=2, max_n=14):
    """Connected weighted graphs with nonempty boundary, built from a drawn seed."""
    n = draw(st.integers(min_n, max_n))
    rng = np.random.default_rng(draw(seeds))
    return random_connected_graph(rng, n)


@st.composite
def unit_trees(draw, min_n=2, max_n=20):
    n = draw(st.integers(min_n, max_n))
    return random_tree(np.random.default_rng(draw(seeds)), n)


# -- acceptance reporting -------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = dict(report.user_properties)
    if "criterion" not in marks:
        return
    num, title = marks["criterion"]
    status = "PASS" if report.outcome == "passed" else "FAIL"
    _ACCEPTANCE[num] = (title, status, marks.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status, detail = _ACCEPTANCE[num]
        line = f"[{status}] criterion {num}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def criterion(request, record_property):
    """Tag an acceptance test; returns a callback for a short detail string."""
    mark = request.node.get_closest_marker("criterion")
    record_property("criterion", mark.args)

    def detail(text):
        record_property("detail", text)

    return detail
