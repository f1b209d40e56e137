import json

import pytest
from hypothesis import given, settings

from str0d.biframe import congruence_biframe, find_biframe_isomorphism
from str0d.category import Diagram, str0d_corpus
from str0d.errors import InvalidDiagram, InvalidSpace, Str0dError
from str0d.io import (
    biframe_from_json,
    biframe_to_json,
    builtin_frame,
    detect_kind,
    diagram_from_json,
    diagram_to_json,
    dumps,
    frame_from_json,
    frame_to_json,
    hom_from_json,
    hom_to_json,
    space_from_json,
    space_to_json,
)
from str0d.lattice import chain, find_isomorphism
from str0d.morphisms import enumerate_homs
from str0d.skula import enumerate_t0_spaces, find_homeomorphism

from .strategies import frames


@settings(max_examples=40, deadline=None)
@given(frames())
def test_frame_round_trip(F):
    G = frame_from_json(json.loads(dumps(frame_to_json(F))))
    assert G.labels == F.labels and G.down == F.down


def test_builtin_names():
    assert builtin_frame("chain4").n == 4
    assert builtin_frame("2^3").n == 8
    assert builtin_frame("1").n == 1
    with pytest.raises(KeyError):
        builtin_frame("diamond")


def test_hom_round_trip(chain3):
    for f in enumerate_homs(chain3, chain3):
        assert hom_from_json(hom_to_json(f)).table == f.table


@pytest.mark.parametrize("M", str0d_corpus(16), ids=lambda M: M.name)
def test_biframe_round_trip(M):
    N = biframe_from_json(json.loads(dumps(biframe_to_json(M))))
    assert find_biframe_isomorphism(M, N) is not None


def test_named_biframes():
    assert biframe_from_json("C(chain3)") == congruence_biframe(chain(3))
    assert biframe_from_json("Sk(sierpinski)").total.n == 4
    with pytest.raises(KeyError):
        biframe_from_json("D(chain3)")


def test_space_round_trip():
    for X in enumerate_t0_spaces(3):
        assert find_homeomorphism(X, space_from_json(space_to_json(X))) is not None
    with pytest.raises(InvalidSpace):
        space_from_json({"points": ["x"]})


def test_diagram_round_trip():
    A = congruence_biframe(chain(3))
    from str0d.biframe import identity_bihom

    D = Diagram({"X": A, "Y": A}, [("u", "X", "Y", identity_bihom(A))])
    E = diagram_from_json(json.loads(dumps(diagram_to_json(D))))
    assert [a[:3] for a in E.arrows] == [("u", "X", "Y")]
    assert E.arrows[0][3].table == tuple(range(A.total.n))
    with pytest.raises(InvalidDiagram):
        diagram_from_json({"objects": {"X": "C(2)"}, "arrows": [{"name": "u", "from": "X", "to": "Q", "map": {}}]})


def test_kind_detection():
    assert detect_kind({"elements": [], "order": []}) == "frame"
    assert detect_kind({"frame": {}, "part1": [], "part2": []}) == "biframe"
    assert detect_kind({"points": [], "opens": []}) == "space"
    assert detect_kind({"objects": {}}) == "diagram"
    with pytest.raises(Str0dError):
        detect_kind([1, 2])


def test_dumps_is_sorted():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')
    assert find_isomorphism(frame_from_json("chain3"), chain(3)) is not None
