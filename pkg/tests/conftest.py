import pytest

from pseudomonodromy.components import pair_periodic_angles

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def pool10():
    return pair_periodic_angles(10)


@pytest.fixture(scope="session")
def pool7(pool10):
    from pseudomonodromy.components import ComponentPool

    return ComponentPool(7, [h for h in pool10 if h.period <= 7])


@pytest.fixture(autouse=True)
def _private_cache(tmp_path_factory, monkeypatch):
    # keep CLI runs away from the user's cache directory
    monkeypatch.setenv("PSEUDOMONODROMY_CACHE", str(tmp_path_factory.getbasetemp() / "cache"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
