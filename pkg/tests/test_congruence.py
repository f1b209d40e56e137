import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from str0d.census import enumerate_frames
from str0d.congruence import (
    all_congruence,
    brute_force_congruences,
    clear_congruence,
    clear_congruence_search,
    closure_cl,
    closure_cl_adjoint,
    cong_functor,
    cong_image,
    cong_preimage,
    congruence_from_pairs,
    congruence_from_pairs_by_meet,
    congruence_lattice,
    delta,
    identity_congruence,
    join_congruences,
    meet_congruences,
    nabla,
    nabla_extension,
    nucleus_violation,
    quotient,
    third_iso,
)
from str0d.errors import BoundExceeded
from str0d.lattice import boolean, chain, find_isomorphism, is_boolean
from str0d.morphisms import enumerate_homs, validate_hom

from .strategies import frames

UPTO5 = list(enumerate_frames(5))
UPTO6 = list(enumerate_frames(6))


def test_chain3_congruences(chain3):
    CF = congruence_lattice(chain3)
    assert len(CF) == 4 and is_boolean(CF.lattice)
    assert sorted(CF.lattice.labels) == sorted(["{0}{a}{1}", "{0}{a,1}", "{0,a}{1}", "{0,a,1}"])
    a = chain3.index["a"]
    assert nabla(chain3, a).classes() == [[0, a], [chain3.top]]
    assert delta(chain3, a).classes() == [[0], [a, chain3.top]]


@pytest.mark.parametrize("F, size", [(chain(1), 1), (chain(2), 2), (chain(3), 4), (boolean(2), 4), (boolean(3), 8)],
                         ids=["1", "2", "chain3", "2^2", "2^3"])
def test_sizes(F, size):
    assert len(congruence_lattice(F)) == size


@pytest.mark.parametrize("L", UPTO5, ids=lambda F: F.name)
def test_nucleus_enumeration_matches_partition_search(L):
    fast = {C.relation() for C in congruence_lattice(L).congruences()}
    assert fast == brute_force_congruences(L)


@pytest.mark.parametrize("L", UPTO6, ids=lambda F: F.name)
def test_boolean_of_size_two_to_the_j(L):
    CF = congruence_lattice(L)
    assert len(CF) == 2 ** len(L.join_irreducibles)
    assert is_boolean(CF.lattice)


def test_oracle_bound():
    with pytest.raises(BoundExceeded):
        brute_force_congruences(chain(6))


@pytest.mark.parametrize("L", UPTO5, ids=lambda F: F.name)
def test_nabla_and_delta_are_complements(L):
    CF = congruence_lattice(L)
    lat = CF.lattice
    for a in range(L.n):
        assert lat.complements[CF.nabla_table[a]] == CF.delta_table[a]
        assert nabla(L, a) == CF.congruence(CF.nabla_table[a])
    assert CF.nabla_hom.table[L.bottom] == lat.bottom
    validate_hom(L, lat, CF.nabla_table)


@pytest.mark.parametrize("L", UPTO6, ids=lambda F: F.name)
def test_clear_congruence_closed_form(L):
    CF = congruence_lattice(L)
    for a in range(L.n):
        D = clear_congruence(L, a)
        assert D == clear_congruence_search(CF, a)
        assert is_boolean(quotient(L, D)[0])
    assert clear_congruence(L, L.top) == all_congruence(L)


@pytest.mark.parametrize("L", UPTO5, ids=lambda F: F.name)
def test_closure_routes_agree(L):
    CF = congruence_lattice(L)
    for C in CF.congruences():
        c = closure_cl(CF, C)
        assert c == closure_cl_adjoint(CF, C)
        assert c <= C and closure_cl(CF, c) == c


@settings(max_examples=40, deadline=None)
@given(frames(max_points=3), st.data())
def test_lattice_operations(L, data):
    CF = congruence_lattice(L)
    idx = st.integers(0, len(CF) - 1)
    C = CF.congruence(data.draw(idx))
    D = CF.congruence(data.draw(idx))
    lat = CF.lattice
    assert CF.index(join_congruences(C, D)) == lat.join[CF.index(C)][CF.index(D)]
    assert CF.index(meet_congruences(C, D)) == lat.meet[CF.index(C)][CF.index(D)]
    assert nucleus_violation(L, C.nucleus) is None


@settings(max_examples=40, deadline=None)
@given(frames(max_points=3), st.data())
def test_generated_congruence_matches_meet_oracle(L, data):
    xs = st.integers(0, L.n - 1)
    pairs = data.draw(st.lists(st.tuples(xs, xs), max_size=2))
    assert congruence_from_pairs(L, pairs) == congruence_from_pairs_by_meet(L, pairs, bound=8)


@pytest.mark.parametrize("L", list(enumerate_frames(4)), ids=lambda F: F.name)
@pytest.mark.parametrize("M", list(enumerate_frames(4)), ids=lambda F: F.name)
def test_image_preimage_galois(L, M):
    CL, CM = congruence_lattice(L), congruence_lattice(M)
    for f in enumerate_homs(L, M):
        Cf = cong_functor(f)
        for C in CL.congruences():
            assert Cf(CL.index(C)) == CM.index(cong_image(f, C))
            for D in CM.congruences():
                assert (cong_image(f, C) <= D) == (C <= cong_preimage(f, D))
        for a in range(L.n):
            assert cong_image(f, nabla(L, a)) == nabla(M, f(a))


@pytest.mark.parametrize("L", list(enumerate_frames(5)), ids=lambda F: F.name)
def test_third_isomorphism(L):
    for C in congruence_lattice(L).congruences():
        third_iso(L, C)


def test_quotient(chain3):
    a = chain3.index["a"]
    Q, q = quotient(chain3, nabla(chain3, a))
    assert Q.n == 2 and q(a) == Q.bottom
    Q, q = quotient(chain3, identity_congruence(chain3))
    assert find_isomorphism(Q, chain3) is not None


@pytest.mark.parametrize("L", list(enumerate_frames(4)), ids=lambda F: F.name)
def test_nabla_extension_is_unique(L):
    # every hom C L -> 2 is determined by its composite with nabla
    CF = congruence_lattice(L)
    two = chain(2)
    for h in enumerate_homs(CF.lattice, two):
        g = validate_hom(L, two, [h(k) for k in CF.nabla_table])
        assert nabla_extension(CF, two, g) == h
