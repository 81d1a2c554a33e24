import pytest

from quintic_qk.gwside import compute_gw_table
from quintic_qk.qkside import reconstruct_jk

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_record():
    def record(criterion: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def state4():
    return reconstruct_jk(4)


@pytest.fixture(scope="session")
def table4():
    return compute_gw_table(4)
