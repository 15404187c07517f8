import functools

import pytest

from mclusters.model import ClusterModel


@functools.lru_cache(maxsize=None)
def cached_model(typ, m, convention="sec3"):
    return ClusterModel(typ, m, convention)


@pytest.fixture
def model():
    return cached_model


# criterion number -> (passed, line); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k][1])
