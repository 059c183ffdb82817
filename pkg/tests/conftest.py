import sys

import pytest

from divisorlab.sieve import build_sieve


def pytest_terminal_summary(terminalreporter):
    """Re-emit the one-line-per-criterion acceptance results after the run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tables_small():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def tables_medium():
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def tables_large():
    # Shared by the acceptance criteria that run at the 1e7 scale.
    return build_sieve(10**7)
