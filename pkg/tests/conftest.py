import random

import pytest

import bsloci
from bsloci.model import load

_CRITERIA: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _CRITERIA.get(name, "PASS")
        _CRITERIA[name] = "PASS" if rep.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_CRITERIA):
        terminalreporter.write_line(f"{_CRITERIA[name]}  {name}")


@pytest.fixture(scope="session")
def cusp_path():
    return str(bsloci.data_path("cusp_line.json"))


@pytest.fixture(scope="session")
def cusp_reference_path():
    return str(bsloci.data_path("cusp_line_bs.json"))


@pytest.fixture(scope="session")
def cusp(cusp_path):
    return load(cusp_path)


@pytest.fixture
def rng():
    return random.Random(20261015)
