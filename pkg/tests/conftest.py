import sys

import pytest

from effdirac import load_bethe_table, load_constants, textbook_bethe_table


@pytest.fixture(scope="session")
def constants():
    return load_constants()


@pytest.fixture(scope="session")
def alpha(constants):
    return constants.alpha


@pytest.fixture(scope="session")
def bethe():
    return load_bethe_table()


@pytest.fixture(scope="session")
def textbook():
    return textbook_bethe_table()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.RESULTS):
        ok, detail = module.RESULTS[k]
        terminalreporter.write_line(module._line(k, ok, detail))
