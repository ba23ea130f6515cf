"""The lattice O(P) of order-preserving partitions under refinement."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .congruence import Partition, Quasiorder, is_order_congruence, quotient_poset
from .errors import NotACongruence
from .poset import Poset, _bits


def set_partitions(n: int) -> Iterator[Partition]:
    """All set partitions of ``0..n-1`` via restricted growth strings."""
    if n == 0:
        yield Partition(())
        return
    labels = [0] * n

    def grow(i: int, top: int):
        if i == n:
            yield Partition.from_labels(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from grow(i + 1, max(top, v))

    labels[0] = 0
    yield from grow(1, 0)


def _key(pi: Partition):
    return (-len(pi.blocks), pi.blocks)


@dataclass(frozen=True, eq=False)
class OPLattice:
    poset: Poset
    nodes: tuple[Partition, ...]
    index: dict = field(repr=False)
    cover_edges: tuple[tuple[int, int], ...] = field(repr=False)
    above: tuple[int, ...] = field(repr=False)
    """``above[i]`` is a bit mask of the nodes strictly coarser than node i."""

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def rank_of(self, i: int) -> int:
        return self.poset.n - len(self.nodes[i])

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool(self.above[i] >> j & 1)

    def node(self, pi: Partition) -> int:
        return self.index[pi]

    def __len__(self):
        return len(self.nodes)


def enumerate_lattice(p: Poset) -> OPLattice:
    """All order-preserving partitions of ``p``, sorted by (rank, blocks).

    Covers come from the refinement order alone ("nothing strictly between"),
    not from the rank, so rankedness stays a checkable property.
    """
    return _enumerate(p, p.names)


@lru_cache(maxsize=256)
def _enumerate(p: Poset, names) -> OPLattice:
    # names is part of the cache key only: equal posets may carry different labels
    if p.n < 1:
        raise ValueError("poset must be nonempty")
    nodes = sorted((pi for pi in set_partitions(p.n) if is_order_congruence(p, pi)), key=_key)
    index = {pi: i for i, pi in enumerate(nodes)}
    labels = [pi.block_of for pi in nodes]
    sizes = [len(pi) for pi in nodes]
    above = []
    for i, pi in enumerate(nodes):
        m = 0
        for j in range(i + 1, len(nodes)):
            if sizes[j] < sizes[i]:
                lab = labels[j]
                if all(len({lab[x] for x in b}) == 1 for b in pi.blocks):
                    m |= 1 << j
        above.append(m)
    covers = []
    for i in range(len(nodes)):
        shadow = 0
        for k in _bits(above[i]):
            shadow |= above[k]
        covers.extend((i, j) for j in _bits(above[i] & ~shadow))
    return OPLattice(p, tuple(nodes), index, tuple(covers), tuple(above))


def _require(p: Poset, *pis: Partition) -> None:
    for pi in pis:
        if not is_order_congruence(p, pi):
            raise NotACongruence(f"{pi} is not order-preserving")


def meet(p: Poset, pi1: Partition, pi2: Partition) -> Partition:
    _require(p, pi1, pi2)
    out = []
    for b1 in pi1.blocks:
        s1 = set(b1)
        for b2 in pi2.blocks:
            common = s1.intersection(b2)
            if common:
                out.append(tuple(common))
    return Partition(tuple(out))


def join(p: Poset, pi1: Partition, pi2: Partition) -> Partition:
    """Mutual-reachability classes of the closure of the order and both equivalences."""
    _require(p, pi1, pi2)
    return Quasiorder.generated_by(p.up, pi1.masks(), pi2.masks()).classes()


def is_cover(p: Poset, pi1: Partition, pi2: Partition) -> bool:
    """``pi2`` is ``pi1`` with two blocks merged that are adjacent or
    incomparable in the quotient by ``pi1``."""
    _require(p, pi1, pi2)
    if len(pi2) != len(pi1) - 1 or not pi1.refines(pi2):
        return False
    lab = pi2.block_of
    groups: dict[int, list[int]] = {}
    for i, b in enumerate(pi1.blocks):
        groups.setdefault(lab[b[0]], []).append(i)
    merged = [g for g in groups.values() if len(g) > 1]
    if len(merged) != 1 or len(merged[0]) != 2:
        return False
    i, j = merged[0]
    q = quotient_poset(p, pi1)
    return q.covers(i, j) or q.covers(j, i) or q.incomparable(i, j)


def atoms(p: Poset) -> list[Partition]:
    """The partitions merging a single pair a, b with a covered by b or a, b incomparable."""
    out = []
    for a in range(p.n):
        for b in range(a + 1, p.n):
            if p.covers(a, b) or p.covers(b, a) or p.incomparable(a, b):
                out.append(Partition.pair(p.n, a, b))
    return sorted(out, key=lambda pi: pi.blocks)


def proper_part(lat: OPLattice) -> list[int]:
    return [i for i in range(len(lat)) if i not in (lat.bottom, lat.top)]


def semimodular_violations(lat: OPLattice) -> list[tuple[int, int]]:
    """Node pairs breaking r(x) + r(y) >= r(x meet y) + r(x join y)."""
    p = lat.poset
    bad = []
    for i in range(len(lat)):
        for j in range(i + 1, len(lat)):
            x, y = lat.nodes[i], lat.nodes[j]
            lo = lat.node(meet(p, x, y))
            hi = lat.node(join(p, x, y))
            if lat.rank_of(i) + lat.rank_of(j) < lat.rank_of(lo) + lat.rank_of(hi):
                bad.append((i, j))
    return bad


# export

def block_label(p: Poset, pi: Partition) -> str:
    return "|".join("".join(p.label(x) for x in b) if p.names else ",".join(map(str, b)) for b in pi.blocks)


def to_dot(lat: OPLattice) -> str:
    p = lat.poset
    lines = ["digraph O {", "  rankdir=BT;", "  node [shape=box];"]
    for i, pi in enumerate(lat.nodes):
        lines.append(f'  n{i} [label="{block_label(p, pi)}"];')
    for i, j in lat.cover_edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(lat: OPLattice) -> dict:
    return {
        "nodes": [{"blocks": [list(b) for b in pi.blocks], "rank": lat.rank_of(i)} for i, pi in enumerate(lat.nodes)],
        "covers": [list(e) for e in lat.cover_edges],
    }


def to_json(lat: OPLattice) -> str:
    return json.dumps(to_dict(lat), sort_keys=True) + "\n"
