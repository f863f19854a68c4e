import time

import pytest

SUITE_BUDGET_S = 120.0
_results: list[tuple[int, str, bool, str]] = []


def record(criterion: int, name: str, ok: bool, detail: str = ""):
    """Store one acceptance verdict for the end-of-run summary."""
    _results.append((criterion, name, bool(ok), detail))
    print(f"criterion {criterion} {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def pytest_sessionstart(session):
    session.config._vortexlab_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    elapsed = time.perf_counter() - config._vortexlab_start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion, name, ok, detail in sorted(_results, key=lambda x: x[0]):
        tr.write_line(f"[{criterion}] {'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
    ok = elapsed < SUITE_BUDGET_S
    tr.write_line(f"[9] {'PASS' if ok else 'FAIL'} suite runtime {elapsed:.1f} s (limit {SUITE_BUDGET_S:.0f} s)")


@pytest.fixture
def accept():
    return record
