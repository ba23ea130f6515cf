from itertools import combinations

import pytest

from ordpart.poset import Poset
from ordpart.verify import named_fixtures, random_catalog

CATALOG_SEED = 2024
TRIALS_PER_SIZE = 50

# acceptance outcomes, filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def natural_posets(n: int):
    """Every poset on 0..n-1 whose order is compatible with the integer order.

    Each isomorphism type has such a labeling, so for small n this is an
    exhaustive sample.
    """
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        if any((x, z) not in rel for (x, y) in rel for (y2, z) in rel if y == y2):
            continue
        up = [1 << x for x in range(n)]
        for x, y in rel:
            up[x] |= 1 << y
        yield Poset(up, check=False)


def catalog() -> dict[str, Poset]:
    out = dict(named_fixtures())
    out.update(random_catalog(3, 6, TRIALS_PER_SIZE, CATALOG_SEED))
    return out


@pytest.fixture(scope="session")
def full_catalog():
    return catalog()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
