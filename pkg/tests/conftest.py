from functools import lru_cache

import pytest

from transfer_systems.enumerator import enumerate_grid

ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@lru_cache(maxsize=None)
def _grid(n):
    return enumerate_grid(n)


@pytest.fixture(scope="session")
def grid_systems():
    """``grid_systems(n)`` -> cached enumeration of ``[1] x [n]``."""
    return _grid
