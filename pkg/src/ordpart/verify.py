"""Named fixtures, a seeded random catalog, and the invariant checks that
``ordpart verify`` runs over them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .congruence import (
    Partition,
    is_order_congruence,
    is_order_congruence_by_circles,
    is_order_convex,
    quotient_poset,
)
from .extensions import (
    contract,
    cyclic_classes,
    cyclic_classes_by_shifts,
    e_cyclic,
    expand,
    linear_extensions,
    oplus,
    same_class,
    shift_extension,
)
from .oplattice import enumerate_lattice, is_cover, join, meet, set_partitions
from .poset import (
    CoverList,
    Poset,
    antichain,
    boolean_b2,
    chain,
    connected_components,
    disjoint_union,
    from_covers,
    minimal_elements,
    random_poset,
)
from .topology import homotopy_report, spheres_by_recurrence
from .words import detanglement_index, e_by_components, e_C_by_words, pword_of

MAX_LATTICE_NODES = 250


def three_element_shapes() -> dict[str, Poset]:
    """The five 3-element posets up to isomorphism; only the chain has one sphere."""
    return {
        "antichain3": antichain(3),
        "chain2+point": from_covers(CoverList(3, [(0, 1)])),
        "V": from_covers(CoverList(3, [(0, 1), (0, 2)])),
        "Lambda": from_covers(CoverList(3, [(0, 2), (1, 2)])),
        "chain3": chain(3),
    }


def named_fixtures() -> dict[str, Poset]:
    out = {f"chain{n}": chain(n) for n in range(3, 7)}
    out.update({f"antichain{n}": antichain(n) for n in range(3, 7)})
    out["B2"] = boolean_b2()
    out["chain2+point"] = from_covers(CoverList(3, [(0, 1)]))
    out["two-chain2"] = disjoint_union(chain(2), chain(2))
    out.update(three_element_shapes())
    return out


def random_catalog(n_min: int, n_max: int, trials: int, seed: int) -> dict[str, Poset]:
    """``trials`` random posets per size; each gets its own derived seed and density."""
    out = {}
    for n in range(n_min, n_max + 1):
        for t in range(trials):
            s = seed * 1_000_003 + n * 10_007 + t
            density = random.Random(s).random()
            out[f"random-n{n}-seed{seed}-t{t}"] = random_poset(n, density, s)
    return out


# individual invariants; each returns True on success

def check_axioms(p: Poset) -> bool:
    p.check_axioms()
    return True


def check_cover_roundtrip(p: Poset) -> bool:
    covers = p.cover_pairs()
    q = from_covers(CoverList(p.n, covers))
    return q == p and q.cover_pairs() == covers


def check_components(p: Poset) -> bool:
    comps = connected_components(p)
    union = set().union(*comps) if comps else set()
    disjoint = sum(len(c) for c in comps) == p.n
    for c in comps:
        for x in c:
            for y in range(p.n):
                if p.comparable(x, y) and y not in c:
                    return False
    return union == set(range(p.n)) and disjoint


def check_congruence_oracle(p: Poset) -> bool:
    """Quasiorder test equals the strongly-connected-component test on every partition."""
    return all(is_order_congruence(p, pi) == is_order_congruence_by_circles(p, pi) for pi in set_partitions(p.n))


def check_quotients(p: Poset) -> bool:
    for pi in enumerate_lattice(p).nodes:
        if not all(is_order_convex(p, b) for b in pi.blocks):
            return False
        q = quotient_poset(p, pi)
        q.check_axioms()
        if q.n != len(pi):
            return False
        lab = pi.block_of
        for x in range(p.n):
            for y in range(p.n):
                if p.leq(x, y) and not q.leq(lab[x], lab[y]):
                    return False
    return True


def check_lattice_structure(p: Poset) -> bool:
    """Ranked by n - |pi|, bottom/top in place, covers match the merge rule."""
    lat = enumerate_lattice(p)
    if lat.nodes[0] != Partition.singletons(p.n) or lat.nodes[-1] != Partition.one_block(p.n):
        return False
    edges = set(lat.cover_edges)
    for i, j in edges:
        if lat.rank_of(j) != lat.rank_of(i) + 1:
            return False
    for i in range(len(lat)):
        for j in range(len(lat)):
            if lat.rank_of(j) == lat.rank_of(i) + 1 and lat.nodes[i].refines(lat.nodes[j]):
                if is_cover(p, lat.nodes[i], lat.nodes[j]) != ((i, j) in edges):
                    return False
            elif (i, j) in edges:
                return False
    return True


def check_lattice_laws(p: Poset) -> bool:
    """meet/join agree with glb/lub read off the refinement order."""
    lat = enumerate_lattice(p)
    N = len(lat)
    for i in range(N):
        for j in range(i, N):
            x, y = lat.nodes[i], lat.nodes[j]
            m, jn = lat.node(meet(p, x, y)), lat.node(join(p, x, y))
            lower = [k for k in range(N) if lat.leq(k, i) and lat.leq(k, j)]
            upper = [k for k in range(N) if lat.leq(i, k) and lat.leq(j, k)]
            glb = [k for k in lower if all(lat.leq(z, k) for z in lower)]
            lub = [k for k in upper if all(lat.leq(k, z) for z in upper)]
            if glb != [m] or lub != [jn]:
                return False
            if meet(p, x, join(p, x, y)) != x or join(p, x, meet(p, x, y)) != x:
                return False
    return True


def check_extension_counts(p: Poset) -> bool:
    e, ec = len(linear_extensions(p)), e_cyclic(p)
    return e == e_by_components(p) and ec == e_C_by_words(p) and (p.is_connected() == (e == ec))


def check_kshift(p: Poset) -> bool:
    by_cycle = {frozenset(c.members) for c in cyclic_classes(p)}
    return by_cycle == set(cyclic_classes_by_shifts(p))


def check_shift_detanglement(p: Poset) -> bool:
    for g in linear_extensions(p):
        valid = sum(shift_extension(p, g, k) is not None for k in range(p.n))
        if valid != detanglement_index(pword_of(p, g)):
            return False
    return True


def check_contraction_lemmas(p: Poset) -> bool:
    """Round trip, surjectivity onto the atom quotients, equivalence
    preservation, and the e_C recurrence, for every minimal element."""
    exts = linear_extensions(p)
    for a in sorted(minimal_elements(p)):
        image = {}
        for f in exts:
            pi, fa = contract(p, f, a)
            if not fa.is_extension_of(quotient_poset(p, pi)):
                return False
            back = expand(p, a, oplus(f, a, 1), fa)
            # contraction forgets the rotation when a sits last (its successor wraps to 0)
            if back != f and (f.f[a] != p.n - 1 or not same_class(back, f)):
                return False
            image[f] = (pi, fa)
        target = set()
        transfer = 0
        for b in range(p.n):
            if b == a:
                continue
            pi = Partition.pair(p.n, a, b)
            if is_order_congruence(p, pi):
                q = quotient_poset(p, pi)
                for g in linear_extensions(q):
                    f = expand(p, a, b, g)
                    if oplus(f, a, 1) != b or contract(p, f, a) != (pi, g):
                        return False
                    target.add((pi, g))
                transfer += e_cyclic(q)
        if set(image.values()) != target:
            return False
        if p.n >= 2 and transfer != e_cyclic(p):
            return False
        for f, g in combinations(exts, 2):
            (pf, ff), (pg, gg) = image[f], image[g]
            if same_class(f, g) != (pf == pg and same_class(ff, gg)):
                return False
    return True


def check_recurrence_choice(p: Poset) -> bool:
    return spheres_by_recurrence(p, min) == spheres_by_recurrence(p, max)


def check_main_theorem(p: Poset) -> bool:
    return homotopy_report(p).agree


@dataclass(frozen=True)
class Invariant:
    name: str
    check: Callable[[Poset], bool]
    n_min: int = 1
    n_max: int | None = None
    needs_small_lattice: bool = False


INVARIANTS = (
    Invariant("poset-axioms", check_axioms),
    Invariant("cover-roundtrip", check_cover_roundtrip),
    Invariant("components", check_components),
    Invariant("congruence-oracle", check_congruence_oracle, n_max=5),
    Invariant("quotients", check_quotients, n_max=6),
    Invariant("lattice-structure", check_lattice_structure, n_max=6, needs_small_lattice=True),
    Invariant("lattice-laws", check_lattice_laws, n_max=5),
    Invariant("extension-counts", check_extension_counts),
    Invariant("kshift", check_kshift),
    Invariant("shift-detanglement", check_shift_detanglement, n_max=6),
    Invariant("contraction-lemmas", check_contraction_lemmas, n_min=2, n_max=5),
    Invariant("recurrence-choice", check_recurrence_choice, n_min=3, n_max=5),
    Invariant("main-theorem", check_main_theorem, n_min=3, needs_small_lattice=True),
)


@dataclass
class VerifyResult:
    passed: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[str, str, Poset]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_invariants(
    posets: dict[str, Poset],
    invariants=INVARIANTS,
    max_nodes: int = MAX_LATTICE_NODES,
    stop_at_first: bool = True,
) -> VerifyResult:
    res = VerifyResult()
    for inv in invariants:
        res.passed.setdefault(inv.name, 0)
        res.skipped.setdefault(inv.name, 0)
    for label, p in posets.items():
        for inv in invariants:
            if p.n < inv.n_min or (inv.n_max is not None and p.n > inv.n_max):
                continue
            if inv.needs_small_lattice and len(enumerate_lattice(p)) > max_nodes:
                res.skipped[inv.name] += 1
                continue
            where = label
            try:
                ok = inv.check(p)
            except Exception as exc:  # a crash is a failure of the invariant
                ok = False
                where = f"{label} ({type(exc).__name__}: {exc})"
            if ok:
                res.passed[inv.name] += 1
            else:
                res.failures.append((inv.name, where, p))
                if stop_at_first:
                    return res
    return res
