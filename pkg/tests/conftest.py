import time

import pytest

from oacd.diagram import build_diagram
from oacd.verify import iter_corpus, run_suite

CORPUS_SEED = 0
CORPUS_TRIALS = 50

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def corpus():
    """n = 3..8, 50 seeded general-position sets each, built once.

    ``corpus.seconds`` is the wall time for sampling plus building.
    """
    t0 = time.perf_counter()
    items = [(item, build_diagram(item.generators))
             for item in iter_corpus(3, 8, CORPUS_TRIALS, CORPUS_SEED)]
    return _Corpus(items, time.perf_counter() - t0)


class _Corpus(list):
    def __init__(self, items, seconds):
        super().__init__(items)
        self.seconds = seconds

    def up_to(self, n_max):
        return [(item, d) for item, d in self if item.n <= n_max]


@pytest.fixture(scope="session")
def suite_report():
    """The default suite: n = 3..7, 50 trials, topology scans throughout."""
    return run_suite(3, 7, CORPUS_TRIALS, CORPUS_SEED, topology_max_n=7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
