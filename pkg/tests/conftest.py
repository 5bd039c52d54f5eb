import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bunkbed import kernels  # noqa: E402
from bunkbed.graph import validate  # noqa: E402


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    module = kernels.available_backends()[request.param]
    for name in ("count_connections", "connection_indicators", "mc_counts", "draw_word"):
        monkeypatch.setattr(kernels, name, getattr(module, name))
    return request.param


@pytest.fixture
def single_edge():
    return validate([[1, 2]], 2)


@pytest.fixture
def star():
    return validate([[1, 2], [2, 3], [2, 4]], 4)


@pytest.fixture
def triangle():
    return validate([[1, 2], [2, 3], [1, 3]], 3)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance")
    for name in sorted(results):
        ok, detail = results[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
