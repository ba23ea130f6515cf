"""Linear extensions, the cyclic shift action they induce, and the
contraction/expansion maps relating extensions of P to extensions of its
atom quotients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .congruence import Partition, is_order_congruence, quotient_poset
from .errors import NotACongruence, NotMinimal
from .poset import Poset, _bits, connected_components, minimal_elements


@dataclass(frozen=True, order=True)
class LinearExtension:
    """``f[x]`` is the position of element ``x``; ordering is lexicographic in ``f``."""

    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if sorted(self.f) != list(range(len(self.f))):
            raise ValueError(f"{self.f} is not a bijection onto 0..{len(self.f) - 1}")

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def inv(self) -> tuple[int, ...]:
        out = [0] * len(self.f)
        for x, r in enumerate(self.f):
            out[r] = x
        return tuple(out)

    def successor(self) -> tuple[int, ...]:
        """The map x -> x (+)_f 1, i.e. the edges of the cycle digraph."""
        inv = self.inv
        n = self.n
        return tuple(inv[(r + 1) % n] for r in self.f)

    def is_extension_of(self, p: Poset) -> bool:
        if p.n != self.n:
            return False
        return all(self.f[x] <= self.f[y] for x in range(p.n) for y in _bits(p.up[x]))


@dataclass(frozen=True)
class CyclicClass:
    cycle: tuple[int, ...]
    members: tuple[LinearExtension, ...]

    @property
    def representative(self) -> LinearExtension:
        return self.members[0]


def linear_extensions(p: Poset) -> list[LinearExtension]:
    """All linear extensions by backtracking over the currently minimal elements."""
    n = p.n
    f = [0] * n
    out: list[LinearExtension] = []
    down_strict = [p.down[x] & ~(1 << x) for x in range(n)]

    def place(r: int, placed: int):
        if r == n:
            out.append(LinearExtension(tuple(f)))
            return
        for x in range(n):
            if not placed >> x & 1 and down_strict[x] & ~placed == 0:
                f[x] = r
                place(r + 1, placed | 1 << x)

    place(0, 0)
    out.sort()
    return out


def oplus(f: LinearExtension, x: int, k: int) -> int:
    n = f.n
    return f.inv[(f.f[x] + k) % n]


def ominus(f: LinearExtension, x: int, k: int) -> int:
    return oplus(f, x, (f.n - k) % f.n)


def shift_is_valid(p: Poset, g: LinearExtension, k: int) -> bool:
    """Every connected component lies entirely below or entirely at/above n - k."""
    n = p.n
    for comp in connected_components(p):
        if len({g.f[x] + k >= n for x in comp}) > 1:
            return False
    return True


def shift_extension(p: Poset, g: LinearExtension, k: int) -> Optional[LinearExtension]:
    """``x -> g(x) + k mod n`` when that is again a linear extension, else None."""
    n = p.n
    if not 0 <= k < n:
        raise ValueError(f"shift {k} outside 0..{n - 1}")
    if not shift_is_valid(p, g, k):
        return None
    return LinearExtension(tuple((v + k) % n for v in g.f))


def cyclic_classes(p: Poset) -> list[CyclicClass]:
    """Linear extensions grouped by the successor map they induce."""
    groups: dict[tuple[int, ...], list[LinearExtension]] = {}
    for f in linear_extensions(p):
        groups.setdefault(f.successor(), []).append(f)
    classes = [CyclicClass(cyc, tuple(sorted(ms))) for cyc, ms in groups.items()]
    classes.sort(key=lambda c: c.representative)
    return classes


def cyclic_classes_by_shifts(p: Poset) -> list[frozenset[LinearExtension]]:
    """Same classes, built as orbits of the valid rotations instead."""
    seen: set[LinearExtension] = set()
    out = []
    for g in linear_extensions(p):
        if g in seen:
            continue
        orbit = frozenset(h for k in range(p.n) if (h := shift_extension(p, g, k)) is not None)
        seen |= orbit
        out.append(orbit)
    return out


def e_count(p: Poset) -> int:
    return len(linear_extensions(p))


def e_cyclic(p: Poset) -> int:
    return len(cyclic_classes(p))


def _require_minimal(p: Poset, a: int) -> None:
    if a not in minimal_elements(p):
        raise NotMinimal(f"{a} is not a minimal element")


def contract(p: Poset, f: LinearExtension, a: int) -> tuple[Partition, LinearExtension]:
    """Merge ``a`` with its cyclic successor ``b`` and squeeze ``f`` onto the quotient.

    Positions below f(a) are kept, the merged block takes min(f(a), f(b)), and
    positions above f(a) + 1 drop by one.  When f(a) = n - 1 the successor
    wraps to the element at position 0.
    """
    _require_minimal(p, a)
    if p.n < 2:
        raise ValueError("contraction needs at least 2 elements")
    b = oplus(f, a, 1)
    pi = Partition.pair(p.n, a, b)
    fa = f.f[a]
    merged = min(fa, f.f[b])
    g = []
    for block in pi.blocks:
        if len(block) == 2:
            g.append(merged)
        else:
            v = f.f[block[0]]
            g.append(v if v < fa else v - 1)
    return pi, LinearExtension(tuple(g))


def expand(p: Poset, a: int, b: int, g: LinearExtension) -> LinearExtension:
    """Inverse of ``contract`` on the fibre over ``pi_{a,b}``: place a at the
    merged block's position, b right after it, and push later positions up."""
    _require_minimal(p, a)
    pi = Partition.pair(p.n, a, b)
    if not is_order_congruence(p, pi):
        raise NotACongruence(f"{pi} is not order-preserving")
    q = quotient_poset(p, pi)
    if not g.is_extension_of(q):
        raise ValueError("g is not a linear extension of the quotient")
    lab = pi.block_of
    pos = g.f[lab[a]]
    f = [0] * p.n
    for x in range(p.n):
        if x == a:
            f[x] = pos
        elif x == b:
            f[x] = pos + 1
        else:
            v = g.f[lab[x]]
            f[x] = v if v < pos else v + 1
    return LinearExtension(tuple(f))


def same_class(f1: LinearExtension, f2: LinearExtension) -> bool:
    return f1.n == f2.n and f1.successor() == f2.successor()


def classes_to_dicts(classes: Sequence[CyclicClass]) -> list[dict]:
    return [{"cycle": list(c.cycle), "members": [list(m.f) for m in c.members]} for c in classes]
