import pytest

from str0d.biframe import congruence_biframe, find_biframe_isomorphism, is_str0d
from str0d.clear import is_congruential
from str0d.errors import InvalidSpace, NotT0
from str0d.lattice import boolean, chain
from str0d.skula import (
    brute_force_t0_topologies,
    chain_space,
    discrete,
    enumerate_t0_spaces,
    find_homeomorphism,
    is_sober,
    is_sober_by_clear_primes,
    is_sober_topological,
    make_space,
    open_set_frame,
    points_of_frame,
    sierpinski,
    skula,
    space_from_biframe,
    t0_classes_brute_force,
)

SPACES = enumerate_t0_spaces(4)


def test_enumeration_counts():
    sizes = [X.n for X in SPACES]
    assert [sizes.count(n) for n in range(1, 5)] == [1, 2, 5, 16]
    assert len(enumerate_t0_spaces(2)) == 3


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 19)])
def test_labelled_t0_topologies(n, count):
    assert len(brute_force_t0_topologies(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classes_match_brute_force(n):
    ours = [X for X in SPACES if X.n == n]
    theirs = t0_classes_brute_force(n)
    assert len(ours) == len(theirs)
    for X in ours:
        assert sum(find_homeomorphism(X, Y) is not None for Y in theirs) == 1


def test_sierpinski_is_congruence_biframe_of_chain3():
    S = skula(sierpinski())
    C = congruence_biframe(chain(3))
    assert S.total.n == C.total.n == 4
    assert find_biframe_isomorphism(S, C) is not None


@pytest.mark.parametrize("X", SPACES, ids=lambda X: f"{X.n}pt-{len(X.opens)}")
def test_skula_round_trip(X):
    B = skula(X)
    assert is_str0d(B) and is_congruential(B)
    assert find_homeomorphism(X, space_from_biframe(B)) is not None
    assert is_sober_topological(X) == is_sober_by_clear_primes(X)


def test_finite_t0_spaces_are_sober():
    assert all(is_sober(X) for X in SPACES)


def test_non_t0_rejected():
    X = make_space(["x", "y"], [[], ["x", "y"]])
    assert not X.is_t0
    with pytest.raises(NotT0):
        skula(X)
    with pytest.raises(InvalidSpace):
        make_space(["x", "y"], [[], ["x"], ["y"]])
    with pytest.raises(InvalidSpace):
        make_space(["x"], [[], ["z"]])


def test_discrete_and_chain_spaces():
    assert skula(discrete(2)).total.n == 4
    assert find_homeomorphism(chain_space(2), sierpinski()) is not None
    assert open_set_frame(chain_space(3)).n == 4


def test_points_of_frames():
    assert len(points_of_frame(boolean(3))) == 3
    assert len(points_of_frame(chain(4))) == 3
