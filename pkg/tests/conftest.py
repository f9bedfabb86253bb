import pytest

from hlprofile.replab import stability, tables

# Every HomTable built during the session is recorded and checked against the
# dimension lemma when the test that built it finishes.
BUILT_TABLES = []
_CHECKED = {"count": 0, "inconsistent": []}
_original_post_init = tables.HomTable.__post_init__


def _recording_post_init(self):
    _original_post_init(self)
    BUILT_TABLES.append(self)


tables.HomTable.__post_init__ = _recording_post_init


def check_recorded_tables():
    """Check every table recorded since the last call; returns the failures."""
    bad = []
    while BUILT_TABLES:
        psi = BUILT_TABLES.pop()
        verdict = stability.check_table(psi)
        _CHECKED["count"] += 1
        if not verdict.consistent:
            bad.append((psi.n, psi.d, verdict))
    _CHECKED["inconsistent"].extend(bad)
    return bad


@pytest.fixture(autouse=True)
def _lemma_on_every_table():
    yield
    bad = check_recorded_tables()
    assert not bad, f"tables violating the dimension lemma: {bad}"


@pytest.fixture
def table_check_totals():
    return _CHECKED


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        prev = _ACCEPTANCE.get(name, "PASS")
        _ACCEPTANCE[name] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name, outcome in _ACCEPTANCE.items():
            terminalreporter.write_line(f"{outcome}  {name}")
    terminalreporter.write_line(
        f"dimension lemma checked on {_CHECKED['count']} tables, "
        f"{len(_CHECKED['inconsistent'])} inconsistent")
