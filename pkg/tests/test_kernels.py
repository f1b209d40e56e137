"""The compiled and pure-Python kernels must agree table for table."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from str0d import kernels
from str0d.census import enumerate_frames
from str0d.kernels import _fallback
from str0d.lattice import boolean, chain

try:
    from str0d.kernels import _compiled
except ImportError:  # extension not built
    _compiled = None

needs_compiled = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")
FRAMES = list(enumerate_frames(7)) + [boolean(3), chain(6)]


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_compiled
@pytest.mark.parametrize("F", FRAMES, ids=lambda F: F.name)
def test_lattice_and_heyting_tables_agree(F):
    a = _fallback.lattice_tables(F.n, F.leq_bytes)
    b = _compiled.lattice_tables(F.n, F.leq_bytes)
    assert [list(t) for t in a] == [list(t) for t in b]
    h1 = _fallback.heyting_table(F.n, F.leq_bytes, F.meet_flat)
    h2 = _compiled.heyting_table(F.n, F.leq_bytes, F.meet_flat)
    assert list(h1) == list(h2)


@needs_compiled
@pytest.mark.parametrize("F", FRAMES, ids=lambda F: F.name)
def test_nucleus_enumeration_agrees(F):
    args = (F.n, F.leq_bytes, F.meet_flat, F.heyting_flat, F.top)
    a = sorted(tuple(j) for j in _fallback.nucleus_images(*args))
    b = sorted(tuple(j) for j in _compiled.nucleus_images(*args))
    assert a == b


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FRAMES), st.data())
def test_generated_congruences_agree(F, data):
    xs = st.integers(0, F.n - 1)
    pairs = data.draw(st.lists(st.tuples(xs, xs), max_size=3))
    a = _fallback.generate_congruence(F.n, F.meet_flat, F.join_flat, pairs)
    b = _compiled.generate_congruence(F.n, F.meet_flat, F.join_flat, pairs)
    assert list(a) == list(b)


@needs_compiled
@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FRAMES), st.sampled_from(FRAMES), st.data())
def test_hom_violation_agrees(S, T, data):
    table = data.draw(st.lists(st.integers(0, T.n - 1), min_size=S.n, max_size=S.n))
    args = (S.n, S.meet_flat, S.join_flat, T.meet_flat, T.join_flat, T.n, kernels.int_array(table))
    assert _fallback.hom_violation(*args) == _compiled.hom_violation(*args)


@needs_compiled
@pytest.mark.parametrize("F", FRAMES[:8], ids=lambda F: F.name)
def test_nucleus_join_agrees(F):
    nuclei = [kernels.int_array(j) for j in
              _fallback.nucleus_images(F.n, F.leq_bytes, F.meet_flat, F.heyting_flat, F.top)]
    for j1 in nuclei:
        for j2 in nuclei:
            assert list(_fallback.nucleus_join(F.n, j1, j2)) == list(_compiled.nucleus_join(F.n, j1, j2))
