import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from str0d.census import brute_force_frame_counts, enumerate_frames, frame_class_name
from str0d.errors import BoundExceeded, InvalidPoset, NotDistributive, NotLattice
from str0d.lattice import (
    FinitePoset,
    boolean,
    build_frame,
    canonical_form,
    chain,
    find_isomorphism,
    frame_from_pairs,
    is_boolean,
    product,
)

from .strategies import frames

# number of distributive lattices with n elements, n = 1..7
DISTRIBUTIVE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 5, 7: 8}


def diamond(top_pairs):
    elements = ["0", "a", "b", "c", "1"]
    return frame_from_pairs(elements, top_pairs)


def test_chain3_tables(chain3):
    z, a, one = (chain3.index[s] for s in "0a1")
    assert chain3.meet[a][one] == a and chain3.join[z][a] == a
    assert chain3.implies(a, z) == z
    assert chain3.pseudocomplement(a) == z
    assert chain3.complements[a] is None
    assert sorted(chain3.labels[j] for j in chain3.join_irreducibles) == ["1", "a"]


def test_m3_is_rejected_with_a_triple():
    M3 = [("0", x) for x in "abc"] + [(x, "1") for x in "abc"]
    with pytest.raises(NotDistributive) as exc:
        diamond(M3)
    assert "^" in str(exc.value)


def test_n5_is_rejected():
    N5 = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    with pytest.raises(NotDistributive):
        diamond(N5)


def test_missing_join_is_not_a_lattice():
    with pytest.raises(NotLattice):
        frame_from_pairs(["0", "a", "b"], [("0", "a"), ("0", "b")])


def test_cycle_is_not_a_poset():
    with pytest.raises(InvalidPoset):
        FinitePoset.from_pairs(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(InvalidPoset):
        FinitePoset.from_pairs(["x", "x"], [])


def test_input_order_does_not_matter():
    F = frame_from_pairs(["1", "b", "0", "a"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert find_isomorphism(F, boolean(2)) is not None
    assert F.labels[F.bottom] == "0" and F.labels[F.top] == "1"


def test_booleans():
    for k in range(4):
        B = boolean(k)
        assert B.n == 2 ** k and is_boolean(B)
        assert len(B.join_irreducibles) == k
    assert not is_boolean(chain(3))


def test_product_of_chains():
    P = product(chain(2), chain(2))
    assert find_isomorphism(P, boolean(2)) is not None
    assert product(chain(3), chain(2)).n == 6


@pytest.mark.parametrize("n", range(1, 8))
def test_census_counts(n):
    assert len([F for F in enumerate_frames(7) if F.n == n]) == DISTRIBUTIVE_COUNTS[n]


def test_census_matches_brute_force():
    census = {}
    for F in enumerate_frames(6):
        census[F.n] = census.get(F.n, 0) + 1
    assert census == brute_force_frame_counts(6)


def test_census_classes_are_distinct():
    codes = [canonical_form(F) for F in enumerate_frames(7)]
    assert len(set(codes)) == len(codes)


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_frames(9))
    assert list(enumerate_frames(0)) == []


def test_class_names():
    assert frame_class_name(chain(3)) == "chain3"
    assert frame_class_name(boolean(2)) == "2^2"
    assert frame_class_name(chain(1)) == "1"


@settings(max_examples=60, deadline=None)
@given(frames())
def test_distributive_and_residuated(F):
    m, j, h = F.meet, F.join, F.heyting
    for x in range(F.n):
        for y in range(F.n):
            assert m[x][y] == m[y][x] and F.leq(m[x][y], x)
            for z in range(F.n):
                assert m[x][j[y][z]] == j[m[x][y]][m[x][z]]
                assert F.leq(m[z][x], y) == F.leq(z, h[x][y])


@settings(max_examples=60, deadline=None)
@given(frames(), st.randoms(use_true_random=False))
def test_isomorphism_survives_shuffling(F, rnd):
    perm = list(range(F.n))
    rnd.shuffle(perm)
    elements = [f"e{perm[x]}" for x in range(F.n)]
    pairs = [(elements[x], elements[y]) for y in range(F.n) for x in range(F.n) if F.leq(x, y)]
    shuffled = list(zip(elements, range(F.n)))
    random.Random(0).shuffle(shuffled)
    G = build_frame(FinitePoset.from_pairs([e for e, _ in shuffled], pairs))
    iso = find_isomorphism(F, G)
    assert iso is not None
    assert canonical_form(F) == canonical_form(G)
    for x in range(F.n):
        for y in range(F.n):
            assert G.meet[iso[x]][iso[y]] == iso[F.meet[x][y]]
