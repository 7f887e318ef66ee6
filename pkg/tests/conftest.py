import pytest

from deepja.fragment import fragment_regression_items, load_fragment


@pytest.fixture(scope="session")
def grammar():
    return load_fragment()


@pytest.fixture(scope="session")
def hierarchy(grammar):
    return grammar.hierarchy


@pytest.fixture(scope="session")
def suite():
    return fragment_regression_items()


@pytest.fixture(scope="session")
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(n, ok, detail):
        lines[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(lines[n])
        return ok

    return record


ACCEPTANCE = pytest.StashKey()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
