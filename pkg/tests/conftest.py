import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

# filled by test_acceptance: criterion label -> (passed, detail)
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
