import contextlib
import time

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Context manager that times a block and logs one PASS/FAIL line for it."""
    lines = request.config.stash[_LINES]

    @contextlib.contextmanager
    def _run(label, limit=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None:
                assert elapsed < limit, f"{label}: took {elapsed:.2f}s, limit {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            budget = f" (limit {limit:g}s)" if limit is not None else ""
            lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {elapsed:.2f}s{budget}")

    return _run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
