import pytest

from wha.core import dual, twist
from wha.examples import catalog

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    ok, detail = _CRITERIA.get(number, (True, title))
    if rep.failed:
        ok = False
        crash = getattr(rep.longrepr, "reprcrash", None)
        msg = crash.message.splitlines()[0] if crash else "failed"
        detail = f"{title}: {msg}"
    _CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def examples():
    """Every catalog example keyed by name."""
    return catalog()


@pytest.fixture(scope="session")
def family(examples):
    """Each example with its dual and all four twists of both."""
    out = {}
    for name, A in examples.items():
        for label, X in ((name, A), (f"dual {name}", dual(A))):
            out[label] = X
            for kind in ("op", "cop", "opcop"):
                out[f"{label} {kind}"] = twist(X, kind)
    return out
