from contextlib import contextmanager

import pytest

# criterion number -> (passed, description)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class Checks:
    def __init__(self):
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> bool:
        if not ok:
            self.failures.append(what)
        return ok


@pytest.fixture
def criterion():
    """Context manager that records one pass/fail line for an acceptance criterion."""

    @contextmanager
    def run(number: int, description: str):
        checks = Checks()
        try:
            yield checks
        except Exception as exc:
            checks.failures.append(f"raised {type(exc).__name__}: {exc}")
            raise
        finally:
            passed = not checks.failures
            ACCEPTANCE[number] = (passed, description)
            print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {description}")
            for f in checks.failures:
                print(f"    {f}")
        assert not checks.failures, checks.failures

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, description = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {description}")
