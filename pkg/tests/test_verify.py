import pytest

from ordpart.poset import antichain, chain
from ordpart.verify import (
    INVARIANTS,
    Invariant,
    named_fixtures,
    random_catalog,
    run_invariants,
    three_element_shapes,
)


def test_three_element_shapes_are_distinct():
    shapes = three_element_shapes()
    assert len(shapes) == 5
    covers = {tuple(p.cover_pairs()) for p in shapes.values()}
    assert len(covers) == 5


def test_named_fixtures_include_examples():
    fx = named_fixtures()
    assert {"B2", "chain2+point", "two-chain2", "chain6", "antichain6"} <= set(fx)


def test_random_catalog_is_seeded():
    a = random_catalog(3, 5, 4, seed=9)
    b = random_catalog(3, 5, 4, seed=9)
    assert list(a) == list(b) and all(a[k] == b[k] for k in a)
    assert len(a) == 12
    assert random_catalog(3, 5, 4, seed=10) != a


@pytest.mark.parametrize("inv", INVARIANTS, ids=lambda inv: inv.name)
def test_each_invariant_on_fixtures(inv):
    res = run_invariants({k: p for k, p in named_fixtures().items() if p.n <= 5}, [inv])
    assert res.ok, res.failures[:1]
    assert res.passed[inv.name] > 0


def test_crash_counts_as_failure():
    def boom(p):
        raise RuntimeError("nope")

    res = run_invariants({"c3": chain(3)}, [Invariant("boom", boom)])
    assert not res.ok
    name, where, _ = res.failures[0]
    assert name == "boom" and "RuntimeError" in where


def test_stop_at_first_and_skips():
    bad = Invariant("never", lambda p: False)
    posets = {"a": antichain(3), "b": antichain(4)}
    assert len(run_invariants(posets, [bad]).failures) == 1
    assert len(run_invariants(posets, [bad], stop_at_first=False).failures) == 2
    big = Invariant("big", lambda p: True, needs_small_lattice=True)
    res = run_invariants(posets, [big], max_nodes=10)
    assert res.skipped["big"] == 1 and res.passed["big"] == 1
