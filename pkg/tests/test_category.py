from itertools import combinations, product

import pytest

from str0d.biframe import (
    congruence_biframe,
    find_biframe_isomorphism,
    identity_bihom,
    is_str0d,
    part_frame,
    trivial_biframe,
)
from str0d.category import (
    Diagram,
    FibreObject,
    check_fibre_morphism,
    classify_morphism,
    closed_quotient,
    closed_quotient_map,
    colimit,
    fibre_over,
    frame_colimit,
    frame_limit,
    from_fibre,
    homs,
    limit,
    reflect_eta,
    second_congruence_frame,
    str0d_corpus,
    to_fibre,
    verify_colimit,
    verify_limit,
)
from str0d.census import enumerate_frames
from str0d.congruence import congruence_lattice, identity_congruence, nabla
from str0d.errors import InvalidDiagram, NotDense, UniversalPropertyViolation
from str0d.lattice import boolean, chain, find_isomorphism
from str0d.morphisms import compose, enumerate_homs

SMALL = list(enumerate_frames(3))
TARGETS = list(enumerate_frames(5))


def test_corpus_sizes():
    assert len(str0d_corpus(8)) == 9
    assert len(str0d_corpus(16)) == 25
    assert all(is_str0d(M) for M in str0d_corpus(16))


@pytest.mark.parametrize("L", list(enumerate_frames(6)), ids=lambda F: F.name)
def test_fibre_is_a_singleton(L):
    fib = fibre_over(L)
    assert len(fib) == 1
    assert find_biframe_isomorphism(fib[0], congruence_biframe(L)) is not None


@pytest.mark.parametrize("M", str0d_corpus(16), ids=lambda M: M.name)
def test_fibre_round_trip(M):
    O = to_fibre(M)
    assert O.is_str0d
    assert find_biframe_isomorphism(from_fibre(O), M) is not None


def test_reflection_of_a_non_dense_object(chain3):
    CF = congruence_lattice(chain3)
    a = CF.nabla_table[chain3.index["a"]]
    O = FibreObject(chain3, nabla(CF.lattice, a))
    assert not O.is_str0d
    with pytest.raises(NotDense):
        from_fibre(O)
    target, eta = reflect_eta(O)
    assert target.base.n == 2 and target.is_str0d and eta.final


def test_fibre_morphisms(chain3):
    O = FibreObject(chain3, identity_congruence(congruence_lattice(chain3).lattice))
    for f in enumerate_homs(chain3, chain3):
        mor = check_fibre_morphism(f, O, O)
        assert mor is not None


def test_second_congruence_frame_size(chain3):
    # C(chain3) is 2^2, whose congruence frame is again 2^2
    assert len(second_congruence_frame(chain3)) == 4


# frame (co)limits against the frame universal property ---------------------------


def _frame_shapes():
    for A, B in combinations(SMALL, 2):
        yield {"X": A, "Y": B}, []
    for A, B in product(SMALL, repeat=2):
        hs = list(enumerate_homs(A, B))
        for f in hs:
            yield {"X": A, "Y": B}, [("u", "X", "Y", f)]
        for f, g in combinations(hs, 2):
            yield {"X": A, "Y": B}, [("u", "X", "Y", f), ("v", "X", "Y", g)]


@pytest.mark.parametrize("frames, arrows", list(_frame_shapes()))
def test_frame_colimit_and_limit_universal(frames, arrows):
    names = list(frames)
    L, legs = frame_colimit(frames, arrows)
    for T in TARGETS:
        through = {}
        for u in enumerate_homs(L, T):
            key = tuple(compose(u, legs[X]).table for X in names)
            through[key] = through.get(key, 0) + 1
        for choice in product(*(list(enumerate_homs(frames[X], T)) for X in names)):
            fam = dict(zip(names, choice))
            if all(compose(fam[d], f).table == fam[s].table for _, s, d, f in arrows):
                assert through.get(tuple(fam[X].table for X in names)) == 1
    L, legs = frame_limit(frames, arrows)
    for T in TARGETS:
        through = {}
        for u in enumerate_homs(T, L):
            key = tuple(compose(legs[X], u).table for X in names)
            through[key] = through.get(key, 0) + 1
        for choice in product(*(list(enumerate_homs(T, frames[X])) for X in names)):
            fam = dict(zip(names, choice))
            if all(compose(f, fam[s]).table == fam[d].table for _, s, d, f in arrows):
                assert through.get(tuple(fam[X].table for X in names)) == 1


def test_coproduct_of_chains():
    L, _ = frame_colimit({"X": chain(3), "Y": chain(3)}, [])
    assert L.n == 6
    P, _ = frame_limit({"X": chain(2), "Y": chain(2)}, [])
    assert find_isomorphism(P, boolean(2)) is not None


# biframe (co)limits ----------------------------------------------------------------


def test_binary_coproduct_and_product():
    A, B = congruence_biframe(chain(3)), congruence_biframe(chain(2))
    corpus = str0d_corpus(8)
    D = Diagram({"X": A, "Y": B})
    N, legs = colimit(D)
    assert find_isomorphism(part_frame(N, 1)[0], chain(3)) is not None
    assert verify_colimit(D, N, legs, corpus) > 0
    N, legs = limit(D)
    assert verify_limit(D, N, legs, corpus) > 0


def test_equaliser_and_coequaliser():
    A = congruence_biframe(chain(3))
    corpus = str0d_corpus(8)
    hs = homs(A, A)
    D = Diagram({"X": A, "Y": A}, [("u", "X", "Y", hs[0]), ("v", "X", "Y", hs[1])])
    for build, check in ((colimit, verify_colimit), (limit, verify_limit)):
        N, legs = build(D)
        check(D, N, legs, corpus)


def test_wrong_colimit_is_rejected():
    A = congruence_biframe(chain(3))
    D = Diagram({"X": A, "Y": A})
    ident = identity_bihom(A)
    with pytest.raises(UniversalPropertyViolation):
        verify_colimit(D, A, {"X": ident, "Y": ident}, str0d_corpus(8))


def test_diagram_validation():
    A = congruence_biframe(chain(3))
    with pytest.raises(InvalidDiagram):
        Diagram({"X": A}, [("u", "X", "Z", identity_bihom(A))])


# classification -----------------------------------------------------------------


def test_classification_examples():
    corpus = str0d_corpus(8)
    M = congruence_biframe(chain(3))
    c = classify_morphism(identity_bihom(M), corpus)
    assert c.mono and c.extremal_epi and c.closed_quotient
    a = M.total.index[next(lab for lab in M.total.labels if lab == "{0,a}{1}")]
    q = closed_quotient_map(M, a)
    c = classify_morphism(q, corpus)
    assert c.extremal_epi and not c.mono


def test_closed_quotient_examples():
    M = congruence_biframe(chain(3))
    T = M.total
    assert find_biframe_isomorphism(closed_quotient(M, T.bottom), M) is not None
    assert find_biframe_isomorphism(closed_quotient(M, T.top), trivial_biframe()) is not None
    N = closed_quotient(M, T.index["{0,a}{1}"])
    assert is_str0d(N) and part_frame(N, 1)[0].n == 2
