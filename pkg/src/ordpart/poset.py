"""Finite posets on the ground set ``0..n-1``.

The order is stored as bit rows: ``up[x]`` is an int whose bit ``y`` is set
iff ``x <= y``.  Everything downstream is index arithmetic on these rows.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AxiomError, CycleError


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _closure(rows: list[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as bit rows (Warshall)."""
    n = len(rows)
    rows = [r | (1 << i) for i, r in enumerate(rows)]
    for k in range(n):
        bk = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bk:
                rows[i] |= rk
    return rows


class Poset:
    """Immutable finite poset.

    Equality and hashing look only at the order relation; ``names`` are
    display labels and never influence any computation.
    """

    __slots__ = ("n", "up", "names", "_down", "_hash")

    def __init__(self, up: Sequence[int], names: Sequence[str] | None = None, *, check: bool = True):
        self.n = len(up)
        self.up = tuple(up)
        if names is not None and len(names) != self.n:
            raise ValueError(f"expected {self.n} names, got {len(names)}")
        self.names = tuple(str(s) for s in names) if names is not None else None
        self._down: tuple[int, ...] | None = None
        self._hash = hash((self.n, self.up))
        if check:
            self.check_axioms()

    # construction helpers

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence[bool]], names=None) -> Poset:
        rows = []
        for i, row in enumerate(leq):
            mask = 0
            for j, v in enumerate(row):
                if v:
                    mask |= 1 << j
            rows.append(mask)
        return cls(rows, names)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], names=None) -> Poset:
        return from_covers(CoverList(n, [tuple(c) for c in covers]), names)

    # queries

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def incomparable(self, x: int, y: int) -> bool:
        return not self.comparable(x, y)

    @property
    def down(self) -> tuple[int, ...]:
        if self._down is None:
            rows = [0] * self.n
            for x in range(self.n):
                for y in _bits(self.up[x]):
                    rows[y] |= 1 << x
            self._down = tuple(rows)
        return self._down

    def covers(self, x: int, y: int) -> bool:
        """True iff ``y`` covers ``x``."""
        if not self.lt(x, y):
            return False
        between = (self.up[x] & self.down[y]) & ~((1 << x) | (1 << y))
        return between == 0

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Transitively reduced relation: pairs ``(x, y)`` with ``y`` covering ``x``."""
        return [(x, y) for x in range(self.n) for y in _bits(self.up[x]) if self.covers(x, y)]

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.n)] for x in range(self.n)]

    def label(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def check_axioms(self) -> None:
        """Exhaustive O(n^3) check of the partial order axioms; raises AxiomError."""
        n = self.n
        full = (1 << n) - 1
        for x in range(n):
            if self.up[x] & ~full:
                raise AxiomError(f"row {x} references elements >= {n}")
            if not self.up[x] >> x & 1:
                raise AxiomError(f"not reflexive at {x}")
        for x in range(n):
            for y in _bits(self.up[x]):
                if y != x and self.up[y] >> x & 1:
                    raise AxiomError(f"not antisymmetric: {x} <= {y} <= {x}")
                if self.up[y] & ~self.up[x]:
                    raise AxiomError(f"not transitive at {x} <= {y}")

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def induced(self, elements: Iterable[int]) -> Poset:
        """Subposet on ``elements``, reindexed in ascending order."""
        elems = sorted(elements)
        rows = []
        for x in elems:
            rows.append(sum(1 << j for j, y in enumerate(elems) if self.leq(x, y)))
        names = [self.label(x) for x in elems] if self.names is not None else None
        return Poset(rows, names, check=False)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.up == other.up

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.cover_pairs()})"

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class CoverList:
    """``covers`` holds pairs ``(x, y)`` meaning ``y`` covers ``x``."""

    n: int
    covers: list[tuple[int, int]] = field(default_factory=list)


def from_covers(c: CoverList, names: Sequence[str] | None = None) -> Poset:
    """Reflexive-transitive closure of a cover list.

    Redundant (transitively implied) pairs are accepted; ``cover_pairs`` on
    the result returns the reduced list.
    """
    n = c.n
    if n < 0:
        raise ValueError("n must be nonnegative")
    rows = [0] * n
    for pair in c.covers:
        x, y = pair
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"cover {pair} references an element outside 0..{n - 1}")
        if x == y:
            raise CycleError(f"self-loop at {x}")
        rows[x] |= 1 << y
    closed = _closure(rows)
    for x in range(n):
        for y in _bits(closed[x]):
            if y != x and closed[y] >> x & 1:
                raise CycleError(f"cover digraph has a directed cycle through {x} and {y}")
    return Poset(closed, names, check=False)


def minimal_elements(p: Poset) -> set[int]:
    return {x for x in range(p.n) if p.down[x] == 1 << x}


def maximal_elements(p: Poset) -> set[int]:
    return {x for x in range(p.n) if p.up[x] == 1 << x}


def connected_components(p: Poset) -> list[frozenset[int]]:
    """Components of the comparability graph, sorted by smallest member."""
    seen = 0
    out = []
    for start in range(p.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= p.up[x] | p.down[x]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(frozenset(_bits(comp)))
    return out


def random_poset(n: int, density: float, seed: int) -> Poset:
    """Random DAG on a shuffled linear order, closed transitively.

    Each of the ``n(n-1)/2`` forward pairs becomes an edge with probability
    ``density``; density 0 gives an antichain and density 1 a chain.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rows[order[i]] |= 1 << order[j]
    return Poset(_closure(rows), check=False)


# named posets

def chain(n: int) -> Poset:
    return from_covers(CoverList(n, [(i, i + 1) for i in range(n - 1)]))


def antichain(n: int) -> Poset:
    return from_covers(CoverList(n, []))


def boolean_b2() -> Poset:
    return from_covers(CoverList(4, [(0, 1), (0, 2), (1, 3), (2, 3)]), names=["0", "a", "b", "1"])


def disjoint_union(*posets: Poset) -> Poset:
    rows = []
    offset = 0
    for q in posets:
        rows.extend(r << offset for r in q.up)
        offset += q.n
    return Poset(rows, check=False)


# JSON

def poset_to_dict(p: Poset) -> dict:
    d = {"n": p.n, "covers": [list(c) for c in p.cover_pairs()]}
    if p.names is not None:
        d["names"] = list(p.names)
    return d


def poset_from_dict(d: dict) -> Poset:
    """Parse ``{"n": .., "names": [..], "covers": [[low, high], ..]}``.

    Shape problems raise ``ValueError``/``TypeError``/``KeyError``; an
    order-theoretic problem (a cover cycle) raises ``CycleError``.
    """
    if not isinstance(d, dict):
        raise TypeError("poset JSON must be an object")
    n = d["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    covers = d.get("covers", [])
    if not isinstance(covers, list):
        raise TypeError("covers must be a list")
    pairs = []
    for c in covers:
        if not (isinstance(c, (list, tuple)) and len(c) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in c)):
            raise ValueError(f"malformed cover {c!r}")
        pairs.append((c[0], c[1]))
    names = d.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise ValueError("names must be a list of length n")
    return from_covers(CoverList(n, pairs), names)


def load_poset(path) -> Poset:
    with open(path) as fh:
        return poset_from_dict(json.load(fh))
