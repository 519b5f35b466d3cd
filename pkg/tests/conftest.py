import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from discmethod.engine import load_bundled  # noqa: E402


@pytest.fixture(scope="session")
def fplus():
    return load_bundled("fplus.json")


@pytest.fixture(scope="session")
def fminus():
    return load_bundled("fminus.json")


@pytest.fixture(scope="session")
def node():
    return load_bundled("node.json")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
