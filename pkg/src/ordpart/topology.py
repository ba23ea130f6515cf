"""Order complex of the proper part of O(P): integer homology, the recursive
acyclic matching, and the sphere-count recurrence."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Sequence

from .congruence import Partition, is_order_congruence, quotient_poset
from .errors import TooSmall
from .extensions import e_cyclic
from .oplattice import OPLattice, enumerate_lattice, proper_part
from .poset import Poset, _bits, minimal_elements

Face = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class AbstractComplex:
    """``faces[d + 1]`` lists the d-dimensional faces as sorted vertex tuples;
    ``faces[0]`` is ``[()]``, the empty face."""

    faces: tuple[tuple[Face, ...], ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> AbstractComplex:
        found: set[Face] = {()}
        for facet in facets:
            facet = tuple(sorted(facet))
            for k in range(1, len(facet) + 1):
                found.update(combinations(facet, k))
        by_size: dict[int, list[Face]] = defaultdict(list)
        for f in found:
            by_size[len(f)].append(f)
        top = max(by_size)
        return cls(tuple(tuple(sorted(by_size[k])) for k in range(top + 1)))

    @property
    def dim(self) -> int:
        return len(self.faces) - 2

    def all_faces(self) -> list[Face]:
        return [f for layer in self.faces for f in layer]

    def f_vector(self) -> list[int]:
        """Face counts for dimensions 0, 1, ..., dim (empty face excluded)."""
        return [len(layer) for layer in self.faces[1:]]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * k for d, k in enumerate(self.f_vector()))


@dataclass(frozen=True, eq=False)
class FacePoset:
    faces: tuple[Face, ...]
    members: frozenset = field(repr=False)

    @classmethod
    def from_complex(cls, c: AbstractComplex) -> FacePoset:
        faces = tuple(c.all_faces())
        return cls(faces, frozenset(faces))

    def covers(self, upper: Face, lower: Face) -> bool:
        return (
            upper in self.members
            and lower in self.members
            and len(upper) == len(lower) + 1
            and set(lower) < set(upper)
        )


@dataclass(frozen=True)
class Matching:
    """``pairs`` holds (upper, lower) with ``lower`` a codimension-one face of ``upper``."""

    pairs: tuple[tuple[Face, Face], ...]
    critical: tuple[Face, ...] = ()

    def critical_dims(self) -> list[int]:
        return sorted(len(f) - 1 for f in self.critical)


@dataclass
class HomologyReport:
    """Reduced Betti numbers and torsion; index 0 is dimension -1."""

    betti: list[int]
    torsion: list[list[int]]

    def betti_at(self, d: int) -> int:
        i = d + 1
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def has_torsion(self) -> bool:
        return any(self.torsion)


# order complex

def chains(lat: OPLattice, vertices: Sequence[int]) -> list[Face]:
    """All chains (including the empty one) among ``vertices`` of the lattice."""
    allowed = 0
    for v in vertices:
        allowed |= 1 << v
    out: list[Face] = [()]

    def extend(chain: Face, last: int):
        for w in _bits(lat.above[last] & allowed):
            c = chain + (w,)
            out.append(c)
            extend(c, w)

    for v in vertices:
        out.append((v,))
        extend((v,), v)
    return out


def order_complex(lat: OPLattice) -> AbstractComplex:
    """Chains of the proper part; vertex ids are lattice node ids."""
    if lat.poset.n < 3:
        raise TooSmall("the proper part is empty for fewer than 3 elements")
    by_size: dict[int, list[Face]] = defaultdict(list)
    for c in chains(lat, proper_part(lat)):
        by_size[len(c)].append(c)
    top = max(by_size)
    return AbstractComplex(tuple(tuple(sorted(by_size[k])) for k in range(top + 1)))


# Smith normal form

def _diagonal_to_invariants(diag: list[int]) -> list[int]:
    """Turn any nonzero diagonal into invariant factors d1 | d2 | ..."""
    d = sorted(abs(x) for x in diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def _dense_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonalize a small dense integer matrix; returns the nonzero pivots."""
    mat = [row[:] for row in mat]
    out = []
    while True:
        entries = [(abs(v), i, j) for i, row in enumerate(mat) for j, v in enumerate(row) if v]
        if not entries:
            return out
        _, r, c = min(entries)
        while True:
            p = mat[r][c]
            dirty = False
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    q = mat[i][c] // p
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        dirty = True
            for j in range(len(mat[r])):
                if j != c and mat[r][j]:
                    q = mat[r][j] // p
                    for i in range(len(mat)):
                        mat[i][j] -= q * mat[i][c]
                    if mat[r][j]:
                        dirty = True
            if not dirty:
                break
            cand = [(abs(mat[i][c]), i, c) for i in range(len(mat)) if mat[i][c]]
            cand += [(abs(mat[r][j]), r, j) for j in range(len(mat[r])) if mat[r][j]]
            _, r, c = min(cand)
        out.append(mat[r][c])
        del mat[r]
        for row in mat:
            del row[c]


def invariant_factors(columns: Sequence[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by columns.

    Unit entries are pivoted first (smallest column, then sparsest row), each
    elimination being exact over the integers; whatever survives without a
    unit entry is finished densely with smallest-absolute-value pivots.
    """
    cols: dict[int, dict[int, int]] = {j: dict(c) for j, c in enumerate(columns) if c}
    rows: dict[int, set[int]] = defaultdict(set)
    for j, c in cols.items():
        for r in c:
            rows[r].add(j)
    diag: list[int] = []
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda k: (len(cols[k]), k)):
            col = cols.get(j)
            if not col:
                continue
            units = [r for r, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda k: (len(rows[k]), k))
            u = col[r]
            for j2 in list(rows[r]):
                if j2 == j:
                    continue
                c2 = cols[j2]
                factor = c2[r] * u
                for r2, v in col.items():
                    nv = c2.get(r2, 0) - factor * v
                    if nv:
                        if r2 not in c2:
                            rows[r2].add(j2)
                        c2[r2] = nv
                    elif r2 in c2:
                        del c2[r2]
                        rows[r2].discard(j2)
                if not c2:
                    del cols[j2]
            for r2 in col:
                rows[r2].discard(j)
            del cols[j]
            diag.append(1)
            progress = True
    if cols:
        live_rows = sorted({r for c in cols.values() for r in c})
        pos = {r: i for i, r in enumerate(live_rows)}
        keys = sorted(cols)
        dense = [[0] * len(keys) for _ in live_rows]
        for jj, j in enumerate(keys):
            for r, v in cols[j].items():
                dense[pos[r]][jj] = v
        diag.extend(_dense_diagonal(dense))
    return _diagonal_to_invariants(diag)


def boundary_columns(c: AbstractComplex, d: int) -> list[dict[int, int]]:
    """Columns of the boundary map from d-faces to (d-1)-faces; d = 0 is the augmentation."""
    lower = {f: i for i, f in enumerate(c.faces[d])}
    out = []
    for face in c.faces[d + 1]:
        col = {}
        for i in range(len(face)):
            col[lower[face[:i] + face[i + 1:]]] = -1 if i % 2 else 1
        out.append(col)
    return out


def reduced_homology(c: AbstractComplex) -> HomologyReport:
    top = c.dim
    ranks = {}
    torsion_of = {}
    for d in range(0, top + 1):
        inv = invariant_factors(boundary_columns(c, d))
        ranks[d] = len(inv)
        torsion_of[d] = [x for x in inv if x > 1]
    betti, torsion = [], []
    for d in range(-1, top + 1):
        size = len(c.faces[d + 1])
        betti.append(size - ranks.get(d, 0) - ranks.get(d + 1, 0))
        torsion.append(torsion_of.get(d + 1, []))
    return HomologyReport(betti, torsion)


# acyclic matchings

def verify_matching(fp: FacePoset, m: Matching) -> bool:
    """Pairs are covers, no face is used twice, and the modified Hasse
    diagram has no directed cycle.  A cycle alternates between two adjacent
    dimensions, so each layer is searched separately."""
    used: set[Face] = set()
    layers: dict[int, list[tuple[Face, Face]]] = defaultdict(list)
    for upper, lower in m.pairs:
        if not fp.covers(upper, lower):
            return False
        if upper in used or lower in used:
            return False
        used.add(upper)
        used.add(lower)
        layers[len(lower)].append((upper, lower))
    for pairs in layers.values():
        partner = {lower: k for k, (_, lower) in enumerate(pairs)}
        succ = []
        for k, (upper, _) in enumerate(pairs):
            nxt = []
            for i in range(len(upper)):
                j = partner.get(upper[:i] + upper[i + 1:])
                if j is not None and j != k:
                    nxt.append(j)
            succ.append(nxt)
        indeg = [0] * len(pairs)
        for nxt in succ:
            for j in nxt:
                indeg[j] += 1
        stack = [k for k, v in enumerate(indeg) if v == 0]
        done = 0
        while stack:
            k = stack.pop()
            done += 1
            for j in succ[k]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
        if done != len(pairs):
            return False
    return True


def _atom_quotients(p: Poset, a: int):
    for b in range(p.n):
        if b == a:
            continue
        pi = Partition.pair(p.n, a, b)
        if is_order_congruence(p, pi):
            yield b, pi


@lru_cache(maxsize=None)
def _match(p: Poset, pick: Callable) -> tuple[tuple[tuple[Face, Face], ...], tuple[Face, ...]]:
    lat = enumerate_lattice(p)
    n = p.n
    if n == 3:
        verts = proper_part(lat)
        return (((verts[0],), ()),), tuple((v,) for v in verts[1:])

    a = pick(minimal_elements(p))
    nodes = lat.nodes
    in_pa = [len(pi.blocks[pi.block_of[a]]) == 1 for pi in nodes]
    pi_a = lat.node(Partition(((a,), tuple(x for x in range(n) if x != a))))
    pa_mask = nodes[pi_a].masks()
    target_of: dict[int, int] = {}

    def fibre(c: Face) -> int:
        for v in c:
            if not in_pa[v]:
                if v not in target_of:
                    rows = nodes[v].masks()
                    target_of[v] = lat.node(Partition(tuple({tuple(_bits(rows[x] & pa_mask[x])) for x in range(n)})))
                return target_of[v]
        return pi_a

    pairs: list[tuple[Face, Face]] = []
    for c in chains(lat, proper_part(lat)):
        t = fibre(c)
        if t == lat.bottom or t in c:
            continue
        pairs.append((tuple(sorted(c + (t,))), c))

    critical: list[Face] = []
    for _, ab in _atom_quotients(p, a):
        ab_id = lat.node(ab)
        q = quotient_poset(p, ab)
        qlat = enumerate_lattice(q)
        relabel = [
            lat.node(Partition(tuple(sum((ab.blocks[k] for k in blk), ()) for blk in sigma.blocks)))
            for sigma in qlat.nodes
        ]

        def lift(face: Face) -> Face:
            return tuple(sorted((ab_id,) + tuple(relabel[k] for k in face)))

        qpairs, qcrit = _match(q, pick)
        pairs.extend((lift(u), lift(d)) for u, d in qpairs)
        critical.extend(lift(f) for f in qcrit)
    return tuple(pairs), tuple(sorted(critical))


def build_matching(p: Poset, pick: Callable = min) -> Matching:
    """Acyclic matching on the face poset of the order complex whose
    critical faces all have dimension n - 3.

    Faces are grouped by the meet of their lowest vertex outside the
    partitions keeping ``a`` isolated with {{a}, rest}; every fibre except
    the bottom one is matched by toggling its label, and the bottom fibre
    splits into copies of the complexes of the atom quotients, matched
    recursively.  ``pick`` chooses ``a`` among the minimal elements.
    """
    if p.n < 3:
        raise TooSmall("matching needs at least 3 elements")
    pairs, critical = _match(p, pick)
    return Matching(pairs, critical)


@lru_cache(maxsize=None)
def _spheres(p: Poset, pick: Callable) -> int:
    if p.n == 3:
        return len(enumerate_lattice(p)) - 3
    a = pick(minimal_elements(p))
    return sum(_spheres(quotient_poset(p, pi), pick) for _, pi in _atom_quotients(p, a))


def spheres_by_recurrence(p: Poset, pick: Callable = min) -> int:
    if p.n < 3:
        raise TooSmall("the recurrence starts at 3 elements")
    return _spheres(p, pick)


# consolidated report

ROUTES = ("recurrence", "morse", "homology")


@dataclass
class SphereReport:
    n: int
    e_C: int
    recurrence: int | None = None
    critical_count: int | None = None
    critical_dims: list[int] | None = None
    matching_ok: bool | None = None
    homology: HomologyReport | None = None
    euler: int | None = None
    discrepancies: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.n - 3

    @property
    def agree(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        d = {"n": self.n, "dimension": self.dimension, "eC": self.e_C, "agree": self.agree}
        if self.recurrence is not None:
            d["recurrence"] = self.recurrence
        if self.critical_count is not None:
            d["critical"] = {"count": self.critical_count, "dims": self.critical_dims, "acyclic": self.matching_ok}
        if self.homology is not None:
            d["betti"] = self.homology.betti
            d["betti_from_dim"] = -1
            d["torsion"] = self.homology.torsion
            d["euler"] = self.euler
        if self.discrepancies:
            d["discrepancies"] = self.discrepancies
        return d


def homotopy_report(p: Poset, routes: Iterable[str] = ROUTES) -> SphereReport:
    """Count the spheres every requested way and compare with e_C(P)."""
    if p.n < 3:
        raise TooSmall("the proper part is empty for fewer than 3 elements")
    routes = set(routes)
    unknown = routes - set(ROUTES)
    if unknown:
        raise ValueError(f"unknown routes {sorted(unknown)}")
    n, dim = p.n, p.n - 3
    rep = SphereReport(n=n, e_C=e_cyclic(p))
    bad = rep.discrepancies

    if "recurrence" in routes:
        rep.recurrence = spheres_by_recurrence(p)
        if rep.recurrence != rep.e_C:
            bad.append(f"recurrence gives {rep.recurrence}, e_C is {rep.e_C}")

    if "morse" in routes or "homology" in routes:
        cx = order_complex(enumerate_lattice(p))

    if "morse" in routes:
        m = build_matching(p)
        fp = FacePoset.from_complex(cx)
        rep.matching_ok = verify_matching(fp, m)
        rep.critical_count = len(m.critical)
        rep.critical_dims = m.critical_dims()
        matched = {f for pair in m.pairs for f in pair}
        if not rep.matching_ok:
            bad.append("matching is not acyclic")
        if len(matched) + len(m.critical) != len(fp.faces) or matched & set(m.critical):
            bad.append("matched and critical faces do not partition the face poset")
        if rep.critical_count != rep.e_C:
            bad.append(f"{rep.critical_count} critical faces, e_C is {rep.e_C}")
        if any(d != dim for d in rep.critical_dims):
            bad.append(f"critical faces in dimensions {sorted(set(rep.critical_dims))}, expected {dim}")

    if "homology" in routes:
        h = reduced_homology(cx)
        rep.homology = h
        rep.euler = cx.euler_characteristic()
        if h.betti_at(dim) != rep.e_C:
            bad.append(f"reduced Betti number in dimension {dim} is {h.betti_at(dim)}, e_C is {rep.e_C}")
        others = [d - 1 for d, b in enumerate(h.betti) if b and d - 1 != dim]
        if others:
            bad.append(f"nonzero reduced Betti numbers in dimensions {others}")
        if h.has_torsion():
            bad.append(f"torsion present: {h.torsion}")
        if rep.euler != 1 + (-1) ** dim * rep.e_C:
            bad.append(f"Euler characteristic {rep.euler} != 1 + (-1)^{dim} * {rep.e_C}")
    return rep
