from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from viscomp.graph import build_embedding  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def k4():
    return build_embedding(4, [[1, 3, 2], [2, 3, 0], [0, 3, 1], [1, 2, 0]], (0, 1, 2))


@pytest.fixture
def octahedron():
    # poles 0 (outer side) and 5; equator 1..4, outer face (0, 1, 2)
    rot = [
        [1, 4, 3, 2],
        [2, 5, 4, 0],
        [3, 5, 1, 0],
        [4, 5, 2, 0],
        [1, 5, 3, 0],
        [1, 2, 3, 4],
    ]
    return build_embedding(6, rot)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
