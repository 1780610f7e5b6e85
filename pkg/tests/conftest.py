import pytest

from dyowa.lattice import IntervalLattice, UnitLattice, chain, diamond, m3, n5

_criteria = []


@pytest.fixture
def unit():
    return UnitLattice()


@pytest.fixture
def intervals():
    return IntervalLattice()


@pytest.fixture
def M3():
    return m3()


@pytest.fixture
def square():
    return diamond()


FINITE = {
    "chain2": lambda: chain(2),
    "chain4": lambda: chain(4),
    "diamond": diamond,
    "M3": m3,
    "N5": n5,
}


@pytest.fixture(params=sorted(FINITE))
def finite(request):
    return FINITE[request.param]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        number, title = marker.args
        _criteria.append((number, title, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("criterion %d %-4s %-58s %6.2fs" % (number, status, title, duration))
