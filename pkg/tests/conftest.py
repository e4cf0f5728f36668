import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from casim.storage import Backend, StorageConfig, Typing  # noqa: E402

ALL_CONFIGS = [
    StorageConfig(backend, typing, multi)
    for backend in Backend
    for typing in Typing
    for multi in (None, 1, 2)
]
SUPPORTED = [c for c in ALL_CONFIGS if c.supported]
DEFAULT_SUPPORTED = [c for c in SUPPORTED if c.multi in (None, 1)]


def load_row(store, row, slot=0):
    for i, v in enumerate(row):
        store.stage_next(i, slot, bool(v))
    store.commit()


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    from casim.storage import _kernels

    _kernels.warm_up()


@pytest.fixture(scope="session")
def desk_run():
    """One desk-scale run of the default matrix, shared by every ordinal check."""
    import time

    from casim.harness import BenchConfig, run_matrix

    start = time.perf_counter()
    report = run_matrix(BenchConfig(entity_count=10**6, iterations=1, repetitions=3))
    return report, time.perf_counter() - start


@pytest.fixture(scope="session")
def desk_report(desk_run):
    return desk_run[0]


ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status} {name}")
