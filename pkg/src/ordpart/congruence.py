"""Order congruences: deciding whether a set partition is order-preserving,
and building the quotient poset."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .errors import AxiomError, NotACongruence, SizeMismatch
from .poset import Poset, _bits, _closure


@dataclass(frozen=True)
class Partition:
    """Set partition of ``0..n-1`` in canonical form.

    Blocks are sorted tuples, ordered by their smallest member, so two
    partitions are equal iff their ``blocks`` are equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for x in b:
                if x in seen:
                    raise ValueError(f"element {x} occurs in two blocks")
                seen.add(x)
        if seen != set(range(len(seen))):
            raise ValueError("blocks must cover 0..n-1 exactly")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(tuple(tuple(g) for g in groups.values()))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple((x,) for x in range(n)))

    @classmethod
    def one_block(cls, n: int) -> Partition:
        return cls((tuple(range(n)),))

    @classmethod
    def pair(cls, n: int, a: int, b: int) -> Partition:
        """The partition merging only ``a`` and ``b``."""
        if a == b:
            raise ValueError("pair needs two distinct elements")
        return cls(((a, b),) + tuple((x,) for x in range(n) if x not in (a, b)))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def block_of(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return tuple(out)

    def masks(self) -> list[int]:
        """Bit row of the equivalence: ``masks()[x]`` is the block containing x."""
        out = [0] * self.n
        for b in self.blocks:
            m = sum(1 << x for x in b)
            for x in b:
                out[x] = m
        return out

    def refines(self, other: Partition) -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        lab = other.block_of
        return all(len({lab[x] for x in b}) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def to_dict(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_dict(cls, d: dict) -> Partition:
        return cls(tuple(tuple(b) for b in d["blocks"]))

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


class Quasiorder:
    """Reflexive, transitive relation stored as bit rows."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[int]):
        self.rows = tuple(rows)
        n = len(self.rows)
        for x in range(n):
            if not self.rows[x] >> x & 1:
                raise AxiomError(f"quasiorder not reflexive at {x}")
            for y in _bits(self.rows[x]):
                if self.rows[y] & ~self.rows[x]:
                    raise AxiomError(f"quasiorder not transitive at {x} -> {y}")

    @classmethod
    def generated_by(cls, *relations: Sequence[int]) -> Quasiorder:
        """Smallest quasiorder containing every given relation."""
        n = len(relations[0])
        rows = [0] * n
        for rel in relations:
            for x in range(n):
                rows[x] |= rel[x]
        return cls(_closure(rows))

    def symmetric_part(self) -> list[int]:
        n = len(self.rows)
        out = []
        for x in range(n):
            m = 0
            for y in _bits(self.rows[x]):
                if self.rows[y] >> x & 1:
                    m |= 1 << y
            out.append(m)
        return out

    def classes(self) -> Partition:
        sym = self.symmetric_part()
        return Partition(tuple(tuple(_bits(m)) for m in set(sym)))


def _check_size(p: Poset, pi: Partition) -> None:
    if pi.n != p.n:
        raise SizeMismatch(f"partition of {pi.n} elements given for a poset of {p.n}")


def _theta(p: Poset, pi: Partition) -> Quasiorder:
    return Quasiorder.generated_by(p.up, pi.masks())


def is_order_congruence(p: Poset, pi: Partition) -> bool:
    """Test via the least quasiorder containing both the order and the partition.

    Any quasiorder witnessing the congruence contains this least one, so the
    partition is order-preserving iff the least one's symmetric part is
    exactly the partition's equivalence.
    """
    _check_size(p, pi)
    return _theta(p, pi).symmetric_part() == pi.masks()


def is_order_congruence_by_circles(p: Poset, pi: Partition) -> bool:
    """Cross-check: every strongly connected set of the step digraph
    (x -> y when x < y or x, y share a block) sits inside one block."""
    _check_size(p, pi)
    g = nx.DiGraph()
    g.add_nodes_from(range(p.n))
    lab = pi.block_of
    for x in range(p.n):
        for y in range(p.n):
            if x != y and (p.lt(x, y) or lab[x] == lab[y]):
                g.add_edge(x, y)
    return all(len({lab[x] for x in scc}) == 1 for scc in nx.strongly_connected_components(g))


def quotient_poset(p: Poset, pi: Partition) -> Poset:
    """Blocks ordered by reachability along sequences of strict steps and
    in-block steps; block ``i`` is element ``i`` of the result."""
    _check_size(p, pi)
    theta = _theta(p, pi)
    if theta.symmetric_part() != pi.masks():
        raise NotACongruence(f"{pi} is not order-preserving")
    lab = pi.block_of
    rows = []
    for b in pi.blocks:
        m = 0
        for y in _bits(theta.rows[b[0]]):
            m |= 1 << lab[y]
        rows.append(m)
    names = None
    if p.names is not None:
        names = ["".join(p.label(x) for x in b) if len(b) > 1 else p.label(b[0]) for b in pi.blocks]
    return Poset(rows, names, check=False)


def is_order_convex(p: Poset, block: Iterable[int]) -> bool:
    members = 0
    for x in block:
        members |= 1 << x
    if not members:
        raise ValueError("block must be nonempty")
    for a in _bits(members):
        for b in _bits(members & p.up[a]):
            if (p.up[a] & p.down[b]) & ~members:
                return False
    return True
