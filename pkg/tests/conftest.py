import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test marks it passed by calling ``ok(detail)``."""
    name = request.node.name
    state = {"detail": "", "passed": False}

    def ok(detail=""):
        state["passed"] = True
        state["detail"] = detail

    yield ok
    _ACCEPTANCE.append((name, state["passed"], state["detail"]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
