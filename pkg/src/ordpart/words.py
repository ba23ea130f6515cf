"""Words over the connected components of a poset, their detanglements, and
exact counts of linear and cyclic extensions built from them."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import ConsistencyError, TotalMismatch
from .extensions import LinearExtension, linear_extensions
from .poset import Poset, connected_components


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts or any(not isinstance(x, int) or x < 1 for x in self.parts):
            raise ValueError(f"composition parts must be positive integers: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def rank(self) -> int:
        return self.total - len(self.parts)

    def cuts(self) -> frozenset[int]:
        """Interior boundaries, i.e. the partial sums strictly below the total."""
        out, acc = [], 0
        for x in self.parts[:-1]:
            acc += x
            out.append(acc)
        return frozenset(out)

    @classmethod
    def from_cuts(cls, total: int, cuts) -> Composition:
        pts = [0, *sorted(cuts), total]
        return cls(tuple(b - a for a, b in zip(pts, pts[1:])))

    def scaled(self, s: int) -> Composition:
        return Composition(tuple(s * x for x in self.parts))

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, from (1,...,1) upward by rank."""
    inner = range(1, n)
    for k in range(n - 1, -1, -1):
        for cuts in combinations(inner, k):
            yield Composition.from_cuts(n, cuts)


def refines(l1: Composition, l2: Composition) -> bool:
    if l1.total != l2.total:
        raise TotalMismatch(f"{l1} and {l2} compose different totals")
    return l2.cuts() <= l1.cuts()


@dataclass(frozen=True)
class PWord:
    """Letters are 1-based component indices; ``letters[r]`` names the component at position r."""

    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.letters).items()))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(map(str, self.letters))

    @classmethod
    def parse(cls, text: str) -> PWord:
        if not text or not text.isdigit() or "0" in text:
            raise ValueError(f"malformed word {text!r}: expected digits 1-9")
        return cls(tuple(int(c) for c in text))


def pword_of(p: Poset, f: LinearExtension) -> PWord:
    comp_of = [0] * p.n
    for i, comp in enumerate(connected_components(p), start=1):
        for x in comp:
            comp_of[x] = i
    return PWord(tuple(comp_of[x] for x in f.inv))


def cut_points(w: PWord) -> list[int]:
    """Positions i where w[:i] and w[i:] share no letter."""
    letters = w.letters
    last = {c: i for i, c in enumerate(letters)}
    out = []
    reach = -1
    for i in range(len(letters) - 1):
        reach = max(reach, last[letters[i]])
        if reach == i:
            out.append(i + 1)
    return out


def finest_detanglement(w: PWord) -> Composition:
    return Composition.from_cuts(len(w), cut_points(w))


def detanglement_index(w: PWord) -> int:
    return len(cut_points(w)) + 1


def is_detanglement(w: PWord, L: Composition) -> bool:
    """Definitional check: the segments cut out by L are pairwise letter-disjoint."""
    if L.total != len(w):
        raise TotalMismatch(f"{L} does not compose {len(w)}")
    segs, start = [], 0
    for part in L.parts:
        segs.append(set(w.letters[start:start + part]))
        start += part
    return all(not (segs[i] & segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs)))


def detanglements(w: PWord) -> list[Composition]:
    """All detanglements by exhaustive search over compositions (reference oracle)."""
    return [L for L in compositions(len(w)) if is_detanglement(w, L)]


# counting

def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for k in parts:
        out //= factorial(k)
    return out


def count_detangled(m: int, s: int, L: Composition) -> int:
    """Words with m letters each repeated s times that s*L detangles."""
    if L.total != m:
        raise TotalMismatch(f"{L} does not compose {m}")
    out = multinomial(L.parts)
    for part in L.parts:
        out *= multinomial([s] * part)
    return out


def _finer(L: Composition) -> Iterator[Composition]:
    free = sorted(set(range(1, L.total)) - L.cuts())
    base = L.cuts()
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            yield Composition.from_cuts(L.total, base | set(extra))


def count_exact(m: int, s: int, L: Composition) -> int:
    """Words whose finest detanglement is exactly s*L (inclusion-exclusion)."""
    if L.total != m:
        raise TotalMismatch(f"{L} does not compose {m}")
    total = 0
    for finer in _finer(L):
        sign = -1 if (L.rank - finer.rank) % 2 else 1
        total += sign * count_detangled(m, s, finer)
    return total


def entangled_count(m: int, s: int) -> int:
    return count_exact(m, s, Composition((m,)))


def entangled_table(m_max: int, s_max: int) -> list[list[int]]:
    return [[entangled_count(m, s) for s in range(1, s_max + 1)] for m in range(1, m_max + 1)]


def multiset_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct words with ``counts[i]`` copies of letter ``i + 1``, lexicographic."""
    n = sum(counts)
    left = list(counts)
    word = [0] * n

    def rec(i: int):
        if i == n:
            yield tuple(word)
            return
        for c in range(len(left)):
            if left[c]:
                left[c] -= 1
                word[i] = c + 1
                yield from rec(i + 1)
                left[c] += 1

    yield from rec(0)


def _component_sizes(p: Poset) -> list[int]:
    return [len(c) for c in connected_components(p)]


def U_closed_form(m: int, s: int, t: int) -> int:
    """Words with detanglement index t, m letters of multiplicity s each.

    Summing the inclusion-exclusion over the compositions with t parts, a
    composition with q parts is counted once for each of its C(q-1, t-1)
    coarsenings into t parts.
    """
    total = 0
    for L in compositions(m):
        q = len(L)
        if q < t:
            continue
        sign = -1 if (q - t) % 2 else 1
        total += sign * comb(q - 1, t - 1) * count_detangled(m, s, L)
    return total


def U_by_enumeration(p: Poset) -> Counter:
    sizes = _component_sizes(p)
    return Counter(detanglement_index(PWord(w)) for w in multiset_permutations(sizes))


def count_U(p: Poset, t: int, method: str = "auto") -> int:
    """Number of P-words with detanglement index t.

    ``method`` is ``"closed"`` (equal component sizes only), ``"brute"``, or
    ``"auto"`` (closed form whenever it applies).
    """
    sizes = _component_sizes(p)
    m = len(sizes)
    if not 1 <= t <= m:
        raise ValueError(f"t must lie in 1..{m}")
    equal = len(set(sizes)) == 1
    if method == "auto":
        method = "closed" if equal else "brute"
    if method == "closed":
        if not equal:
            raise ValueError("closed form needs components of equal size")
        return U_closed_form(m, sizes[0], t)
    if method == "brute":
        return U_by_enumeration(p)[t]
    raise ValueError(f"unknown method {method!r}")


def _component_extension_product(p: Poset) -> int:
    out = 1
    for comp in connected_components(p):
        out *= len(linear_extensions(p.induced(comp)))
    return out


def e_by_components(p: Poset) -> int:
    return multinomial(_component_sizes(p)) * _component_extension_product(p)


def e_C_by_words(p: Poset) -> int:
    """Cyclic extension count: each word with index t sits in a rotation
    class of t words, so classes of words number sum_t U(P, t) / t."""
    m = len(connected_components(p))
    classes = 0
    for t in range(1, m + 1):
        count = count_U(p, t)
        if count % t:
            raise ConsistencyError(f"{count} words of index {t} do not split into classes of size {t}")
        classes += count // t
    return classes * _component_extension_product(p)
