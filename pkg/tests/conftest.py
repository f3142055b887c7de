import pytest

from plocal import build_library_group


# Library groups are cached per session: class tables, Sylow data and
# collections accumulate on the handle and later tests reuse them.
_CACHE = {}


def get_group(name):
    if name not in _CACHE:
        _CACHE[name] = build_library_group(name)
    return _CACHE[name]


@pytest.fixture
def s3():
    return get_group("sym(3)")


@pytest.fixture
def s4():
    return get_group("sym(4)")


@pytest.fixture
def s5():
    return get_group("sym(5)")


@pytest.fixture
def a5():
    return get_group("alt(5)")


@pytest.fixture
def gl32():
    return get_group("gl32")


@pytest.fixture
def m11():
    return get_group("m11")


@pytest.fixture
def m12():
    return get_group("m12")


# corpus members small enough for exhaustive element scans
SMALL_CORPUS = ["sym(3)", "sym(4)", "sym(5)", "alt(5)", "gl32"]


# one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
