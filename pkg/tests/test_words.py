from collections import Counter
from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordpart.errors import TotalMismatch
from ordpart.extensions import LinearExtension, e_cyclic, linear_extensions
from ordpart.poset import CoverList, antichain, chain, disjoint_union, from_covers, random_poset
from ordpart.words import (
    Composition,
    PWord,
    U_by_enumeration,
    compositions,
    count_detangled,
    count_exact,
    count_U,
    detanglement_index,
    detanglements,
    e_by_components,
    e_C_by_words,
    entangled_count,
    entangled_table,
    finest_detanglement,
    is_detanglement,
    multiset_permutations,
    pword_of,
    refines,
)

DISCON = from_covers(CoverList(3, [(0, 1)]))
TWO_CHAINS = disjoint_union(chain(2), chain(2))


def words_oracle(m, s):
    """Distinct arrangements of s copies each of m letters, via permutations."""
    return sorted(set(permutations([c for c in range(1, m + 1) for _ in range(s)])))


def w(text):
    return PWord.parse(text)


@pytest.mark.parametrize(
    "word, finest, di",
    [("112223333", (2, 3, 4), 3), ("122123333", (5, 4), 2), ("221231333", (9,), 1)],
)
def test_finest_detanglement_examples(word, finest, di):
    assert finest_detanglement(w(word)).parts == finest
    assert detanglement_index(w(word)) == di


def test_detanglement_list():
    found = {L.parts for L in detanglements(w("112223333"))}
    assert found == {(9,), (2, 7), (5, 4), (2, 3, 4)}
    assert {L.parts for L in detanglements(w("122123333"))} == {(9,), (5, 4)}


def test_single_letter_words():
    assert detanglement_index(w("1")) == 1
    assert detanglement_index(w("1111")) == 1


def test_refines():
    a, b, c = Composition((2, 3, 4)), Composition((5, 4)), Composition((2, 7))
    assert refines(a, b) and refines(a, c)
    assert not refines(b, c) and not refines(c, b)
    assert refines(Composition((1,) * 9), a)
    assert refines(b, Composition((9,)))
    with pytest.raises(TotalMismatch):
        refines(a, Composition((3,)))


def test_composition_basics():
    L = Composition((2, 3, 4))
    assert L.cuts() == {2, 5} and L.rank == 6 and L.total == 9
    assert Composition.from_cuts(9, {2, 5}) == L
    assert [c.parts for c in compositions(3)] == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert sum(1 for _ in compositions(8)) == 2 ** 7
    with pytest.raises(ValueError):
        Composition((2, 0))


def test_parse_rejects():
    for bad in ["", "12a", "102"]:
        with pytest.raises(ValueError):
            PWord.parse(bad)


@pytest.mark.parametrize("n", range(1, 9))
def test_cut_points_match_definition(n):
    """Finest detanglement vs the definitional check over every composition."""
    words = product(range(1, 4), repeat=n)
    if n > 6:
        words = (x for i, x in enumerate(words) if i % 7 == 0)
    for word in words:
        pw = PWord(word)
        dets = detanglements(pw)
        finest = finest_detanglement(pw)
        assert finest in dets
        assert all(refines(finest, L) for L in dets)
        assert len(dets) == 2 ** (len(finest) - 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=8))
def test_detanglements_form_a_filter(letters):
    pw = PWord(tuple(letters))
    dets = detanglements(pw)
    cutsets = {L.cuts() for L in dets}
    # up-closed: every subset of a detangling cut set detangles
    for cs in cutsets:
        for c in cs:
            assert cs - {c} in cutsets
    # meet-closed: the union of two detangling cut sets detangles
    for a in cutsets:
        for b in cutsets:
            assert a | b in cutsets
    assert len(cutsets) == 2 ** (detanglement_index(pw) - 1)


def test_pword_examples():
    assert str(pword_of(chain(3), linear_extensions(chain(3))[0])) == "111"
    assert str(pword_of(DISCON, LinearExtension((0, 1, 2)))) == "112"
    for f in linear_extensions(antichain(3)):
        assert sorted(pword_of(antichain(3), f).letters) == [1, 2, 3]


def test_count_detangled_examples():
    assert count_detangled(4, 1, Composition((4,))) == 24
    assert count_detangled(2, 2, Composition((2,))) == 6
    assert count_detangled(2, 2, Composition((1, 1))) == 2
    with pytest.raises(TotalMismatch):
        count_detangled(3, 2, Composition((2,)))


@pytest.mark.parametrize("m, s", [(m, s) for m in range(1, 5) for s in range(1, 4) if m * s <= 9])
def test_counts_match_enumeration(m, s):
    words = [PWord(x) for x in words_oracle(m, s)]
    finest = Counter(finest_detanglement(x) for x in words)
    for L in compositions(m):
        big = L.scaled(s)
        assert count_exact(m, s, L) == finest[big]
        assert count_detangled(m, s, L) == sum(1 for x in words if is_detanglement(x, big))
    assert sum(count_exact(m, s, L) for L in compositions(m)) == len(words)


ENTANGLED = [
    [1, 1, 1, 1],
    [0, 4, 18, 68],
    [0, 60, 1566, 34236],
    [0, 1776, 354456, 62758896],
    [0, 84720, 163932120, 304863598320],
    [0, 5876640, 134973740880, 3242854167461280],
    [0, 556466400, 180430456454640, 66429116436728636640],
    [0, 68882446080, 366311352681348480, 2389384600126093124110080],
]


def test_entangled_table_values():
    assert entangled_table(8, 4) == ENTANGLED


def test_entangled_two_letter_row():
    # only 1^s 2^s and 2^s 1^s are tangle-free
    assert [entangled_count(2, s) for s in range(1, 12)] == [comb(2 * s, s) - 2 for s in range(1, 12)]


def test_count_U_two_chains():
    assert count_U(TWO_CHAINS, 1) == 4
    assert count_U(TWO_CHAINS, 2) == 2
    assert count_U(TWO_CHAINS, 1, method="brute") == 4


def test_count_U_connected():
    assert count_U(chain(4), 1) == 1
    with pytest.raises(ValueError):
        count_U(chain(4), 2)


@pytest.mark.parametrize("m, s", [(m, s) for m in range(1, 5) for s in range(1, 4) if m * s <= 9])
def test_closed_form_matches_enumeration(m, s):
    p = disjoint_union(*[chain(s)] * m)
    brute = U_by_enumeration(p)
    for t in range(1, m + 1):
        assert count_U(p, t, method="closed") == brute[t]


def test_U_sums_to_multinomial():
    p = disjoint_union(chain(2), chain(1), antichain(1), chain(3))
    assert sum(count_U(p, t) for t in range(1, 5)) == 7 * 6 * 5 * 4 * 3 * 2 // (2 * 6)
    with pytest.raises(ValueError):
        count_U(p, 1, method="closed")


def test_multiset_permutations():
    assert list(multiset_permutations([2, 2])) == words_oracle(2, 2)
    assert sum(1 for _ in multiset_permutations([1, 2, 3])) == 60


@pytest.mark.parametrize(
    "p, e, ec",
    [(chain(4), 1, 1), (DISCON, 3, 2), (TWO_CHAINS, 6, 5), (antichain(4), 24, 6)],
)
def test_extension_counts_by_words(p, e, ec):
    assert e_by_components(p) == len(linear_extensions(p)) == e
    assert e_C_by_words(p) == e_cyclic(p) == ec


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 10**6))
def test_word_formulas_on_random_posets(n, density, seed):
    p = random_poset(n, density, seed)
    assert e_by_components(p) == len(linear_extensions(p))
    assert e_C_by_words(p) == e_cyclic(p)
