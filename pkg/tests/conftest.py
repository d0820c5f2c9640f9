import pytest

from kappa3.harness import Verifier

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def verifier():
    """One verifier per session so catalogs are built once."""
    return Verifier()


@pytest.fixture(scope="session")
def record():
    def _record(criterion: str, ok: bool, detail: str) -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
