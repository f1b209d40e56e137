"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from str0d.lattice import downset_frame
from str0d.order import reflexive_transitive_closure


@st.composite
def posets(draw, max_points=4):
    """A random poset on 0..n-1 whose order refines the index order."""
    n = draw(st.integers(0, max_points))
    pairs = [(x, y) for y in range(n) for x in range(y) if draw(st.booleans())]
    return tuple(reflexive_transitive_closure(n, pairs))


@st.composite
def frames(draw, max_points=4):
    return downset_frame(draw(posets(max_points)))
