from __future__ import annotations

import pytest

from prymlab.tangency_config import enumerate_strata, random_config


@pytest.fixture(scope="session")
def config():
    return random_config(1)


@pytest.fixture(scope="session")
def strata(config):
    return enumerate_strata(config)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number: int, ok: bool, detail: str, seconds: float) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  ({seconds:.2f} s)"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
