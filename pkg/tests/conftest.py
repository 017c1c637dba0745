import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from partcompare import fixtures  # noqa: E402
from partcompare.partition import Partition  # noqa: E402


@pytest.fixture(scope="session")
def parts():
    return {name: fixtures.load(name) for name in fixtures.NAMES}


def random_partition(rng, n_max=30, c_max=8, n=None):
    n = n if n is not None else int(rng.integers(1, n_max + 1))
    c = int(rng.integers(1, min(n, c_max) + 1))
    return Partition(rng.integers(0, c, n))


def relabel(rng, p):
    """Same partition, labels scrambled by a random permutation."""
    perm = rng.permutation(p.c) + 100
    return perm[p.labels]


ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
