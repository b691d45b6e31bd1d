import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def library():
    from svosa.data import graph_library
    return graph_library()


@pytest.fixture(scope="session")
def graphs(library):
    """Neighbour graphs of ranks 0, 8, 16 with build times in seconds."""
    import time
    from svosa.data import graph_seed
    from svosa.neighbour import build_graph
    out = {}
    for r in (0, 8, 16):
        t = time.perf_counter()
        g = build_graph([graph_seed(r)], library)
        out[r] = (g, time.perf_counter() - t)
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}")
