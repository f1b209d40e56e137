import pytest

from str0d.biframe import congruence_biframe, part_frame
from str0d.category import str0d_corpus
from str0d.census import enumerate_frames
from str0d.clear import (
    biframe_cl,
    biframe_cl_via_chi,
    c_map_violation,
    clear_element_for,
    clear_elements_upward_closed,
    clearness_report,
    endo_map_search,
    is_clear,
    is_congruence_frame_by_iso,
    is_congruential,
    recognize_congruence_frame,
    recognize_quotient_of_congruence_frame,
)
from str0d.errors import BoundExceeded
from str0d.lattice import boolean, chain

CORPUS = str0d_corpus(16)


@pytest.fixture
def cchain3(chain3):
    return congruence_biframe(chain3)


def test_chain3_clear_elements(cchain3):
    T = cchain3.total
    nabla0, nabla_a = T.index["{0}{a}{1}"], T.index["{0,a}{1}"]
    delta_a = T.index["{0}{a,1}"]
    assert clear_element_for(cchain3, nabla0) == delta_a
    assert clear_element_for(cchain3, nabla_a) == nabla_a
    assert biframe_cl(cchain3, delta_a) == nabla0
    assert not is_clear(cchain3, nabla0)


@pytest.mark.parametrize("M", CORPUS, ids=lambda M: M.name)
def test_characterisations_agree(M):
    for m in range(M.total.n):
        r = clearness_report(M, m)
        assert len(set(r.condition_flags)) == 1
        assert r.is_clarifiable
        assert biframe_cl(M, m) == biframe_cl_via_chi(M, m)
    assert clear_elements_upward_closed(M)
    assert is_congruential(M)


@pytest.mark.parametrize("M", CORPUS, ids=lambda M: M.name)
def test_closure_is_an_interior_operator(M):
    T = M.total
    for m in range(T.n):
        c = biframe_cl(M, m)
        assert T.leq(c, m) and c in M.part1 and biframe_cl(M, c) == c


def test_recognizer_examples():
    assert recognize_congruence_frame(chain(3)) == []
    for k in range(4):
        assert recognize_congruence_frame(boolean(k))
    ws = recognize_congruence_frame(boolean(2))
    assert len(ws) == 3
    assert sorted(w.first_part_class for w in ws) == ["2^2", "chain3", "chain3"]
    assert len(recognize_congruence_frame(boolean(3))) == 19


@pytest.mark.parametrize("M", list(enumerate_frames(6)), ids=lambda F: F.name)
def test_recognizer_matches_endo_map_search(M):
    full = recognize_congruence_frame(M)
    assert {w.fixed_points for w in full} == endo_map_search(M, True)
    part = recognize_quotient_of_congruence_frame(M)
    assert {w.fixed_points for w in part} == endo_map_search(M, False)
    assert bool(full) == is_congruence_frame_by_iso(M)


def test_witness_maps_satisfy_the_conditions():
    B = boolean(3)
    for w in recognize_congruence_frame(B):
        assert c_map_violation(B, w.c_map) is None
        assert sorted(w.iso) == list(range(B.n))


def test_c_map_violation_messages(chain3):
    assert c_map_violation(chain3, [0, 2, 2]) == "not deflationary"
    assert c_map_violation(chain3, [0, 1, 1]) == "top not preserved"
    assert c_map_violation(chain3, [0, 0, 2]) is not None


def test_recognizer_bound():
    with pytest.raises(BoundExceeded):
        recognize_congruence_frame(boolean(5))
    with pytest.raises(BoundExceeded):
        endo_map_search(chain(7))


def test_first_part_of_corpus_object():
    M = CORPUS[-1]
    L, emb = part_frame(M, 1)
    assert all(clear_element_for(M, e) is not None for e in emb)
