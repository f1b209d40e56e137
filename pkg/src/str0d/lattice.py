"""Finite posets and finite frames.

A finite frame is a finite distributive lattice.  Elements are identified by
position; labels exist for input and output only.  Every :class:`Frame`
stores its elements along a linear extension of the order, so index 0 is the
bottom and index ``n - 1`` the top.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidPoset, NotDistributive, NotLattice
from .order import (
    bits,
    canonical_order,
    find_order_isomorphism,
    is_antisymmetric,
    linear_extension,
    permute_down,
    reflexive_transitive_closure,
    up_from_down,
)


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    down: tuple[int, ...]

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinitePoset":
        """Close ``x <= y`` pairs reflexively and transitively, then validate."""
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise InvalidPoset("element labels are not distinct")
        index = {e: i for i, e in enumerate(elements)}
        try:
            idx_pairs = [(index[str(x)], index[str(y)]) for x, y in pairs]
        except KeyError as exc:
            raise InvalidPoset(f"unknown element {exc.args[0]!r} in order") from None
        down = reflexive_transitive_closure(len(elements), idx_pairs)
        bad = is_antisymmetric(down)
        if bad is not None:
            x, y = bad
            raise InvalidPoset(f"antisymmetry fails: {elements[x]!r} and {elements[y]!r}")
        return cls(elements, tuple(down))

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)


class Frame:
    """A finite distributive lattice with cached operation tables."""

    def __init__(self, labels, down, meet, join, name=None):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.down = tuple(down)
        self.up = tuple(up_from_down(self.down))
        self.meet = meet
        self.join = join
        self.bottom = 0
        self.top = self.n - 1
        self.name = name
        self.index = {label: i for i, label in enumerate(self.labels)}
        self._key = (self.labels, self.down)
        self._hash = hash(self._key)

    def __repr__(self):
        name = self.name or f"Frame[{self.n}]"
        return f"<{name}>"

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Frame) and self._key == other._key

    def __hash__(self):
        return self._hash

    def elements(self) -> range:
        return range(self.n)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def label(self, x: int) -> str:
        return self.labels[x]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        j = self.join
        for x in xs:
            acc = j[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        m = self.meet
        for x in xs:
            acc = m[acc][x]
        return acc

    @cached_property
    def leq_bytes(self) -> bytes:
        n = self.n
        out = bytearray(n * n)
        for y, d in enumerate(self.down):
            for x in bits(d):
                out[x * n + y] = 1
        return bytes(out)

    @cached_property
    def meet_flat(self):
        return kernels.int_array(v for row in self.meet for v in row)

    @cached_property
    def join_flat(self):
        return kernels.int_array(v for row in self.join for v in row)

    @cached_property
    def heyting(self) -> tuple[tuple[int, ...], ...]:
        flat = kernels.heyting_table(self.n, self.leq_bytes, self.meet_flat)
        n = self.n
        return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))

    @cached_property
    def heyting_flat(self):
        return kernels.int_array(v for row in self.heyting for v in row)

    def implies(self, x: int, y: int) -> int:
        return self.heyting[x][y]

    def pseudocomplement(self, x: int) -> int:
        return self.heyting[x][self.bottom]

    @cached_property
    def join_irreducibles(self) -> frozenset[int]:
        out = set()
        for x in range(1, self.n):
            if self.join_all(bits(self.down[x] & ~(1 << x))) != x:
                out.add(x)
        return frozenset(out)

    @cached_property
    def complements(self) -> tuple[int | None, ...]:
        return tuple(_find_complement(self, x) for x in range(self.n))


def _find_complement(F: Frame, x: int) -> int | None:
    m, j = F.meet[x], F.join[x]
    for c in range(F.n):
        if m[c] == F.bottom and j[c] == F.top:
            return c
    return None


def frame_from_down(labels: Sequence[str], down: Sequence[int], name: str | None = None,
                    check_distributive: bool = True) -> Frame:
    """Build a frame from an order already indexed along a linear extension."""
    n = len(labels)
    if n == 0:
        raise NotLattice(None, None, "bottom (empty poset)")
    for y, d in enumerate(down):
        if d >> (y + 1):
            raise ValueError("order is not indexed along a linear extension")
    leq = bytearray(n * n)
    for y, d in enumerate(down):
        for x in bits(d):
            leq[x * n + y] = 1
    leq = bytes(leq)
    meet_flat, join_flat = kernels.lattice_tables(n, leq)
    for i in range(n * n):
        if join_flat[i] < 0:
            raise NotLattice(labels[i // n], labels[i % n], "join")
        if meet_flat[i] < 0:
            raise NotLattice(labels[i // n], labels[i % n], "meet")
    meet = tuple(tuple(meet_flat[i * n:(i + 1) * n]) for i in range(n))
    join = tuple(tuple(join_flat[i * n:(i + 1) * n]) for i in range(n))
    F = Frame(labels, down, meet, join, name)
    bad = _distributivity_violation(F) if check_distributive else None
    if bad is not None:
        raise NotDistributive(*(labels[i] for i in bad))
    F.__dict__["leq_bytes"] = leq
    return F


def _distributivity_violation(F: Frame) -> tuple[int, int, int] | None:
    # x -> (join-irreducibles below x) preserves binary joins iff F is distributive
    J = 0
    for j in F.join_irreducibles:
        J |= 1 << j
    jd = [d & J for d in F.down]
    for x in range(F.n):
        row = F.join[x]
        for y in range(x + 1, F.n):
            if jd[row[y]] != jd[x] | jd[y]:
                return _find_violating_triple(F)
    return None


def _find_violating_triple(F: Frame) -> tuple[int, int, int]:
    m, j = F.meet, F.join
    for x in range(F.n):
        for y in range(F.n):
            for z in range(F.n):
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                    return (x, y, z)
    raise AssertionError("join-irreducible test and triple test disagree")


def build_frame(poset: FinitePoset, name: str | None = None) -> Frame:
    """Validate ``poset`` as a finite distributive lattice.

    Elements are reordered along a stable linear extension; labels follow
    their elements.
    """
    order = linear_extension(poset.down)
    down = permute_down(poset.down, order)
    labels = [poset.elements[i] for i in order]
    return frame_from_down(labels, down, name)


def frame_from_pairs(elements, pairs, name=None) -> Frame:
    return build_frame(FinitePoset.from_pairs(elements, pairs), name)


def complement(F: Frame, x: int) -> int | None:
    return F.complements[x]


def is_boolean(F: Frame) -> bool:
    return all(c is not None for c in F.complements)


def join_irreducibles(F: Frame) -> frozenset[int]:
    return F.join_irreducibles


def is_complemented(F: Frame, x: int) -> bool:
    return F.complements[x] is not None


# constructors ---------------------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _middle_labels(k: int) -> list[str]:
    if k <= len(_LETTERS):
        return list(_LETTERS[:k])
    return [f"e{i}" for i in range(1, k + 1)]


def chain(n: int) -> Frame:
    if n < 1:
        raise ValueError("a chain needs at least one element")
    if n == 1:
        labels = ["0"]
    else:
        labels = ["0"] + _middle_labels(n - 2) + ["1"]
    down = [(1 << (i + 1)) - 1 for i in range(n)]
    name = {1: "1", 2: "2"}.get(n, f"chain{n}")
    return frame_from_down(labels, down, name)


def trivial() -> Frame:
    return chain(1)


def two() -> Frame:
    return chain(2)


def boolean(k: int) -> Frame:
    """The Boolean frame 2^k, elements labelled by their atom sets."""
    if k == 0:
        return chain(1)
    if k == 1:
        return chain(2)
    atoms = _middle_labels(k)
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))
    labels = []
    for s in subsets:
        if s == 0:
            labels.append("0")
        elif s == (1 << k) - 1:
            labels.append("1")
        else:
            labels.append("".join(atoms[i] for i in range(k) if s >> i & 1))
    pos = {s: i for i, s in enumerate(subsets)}
    down = []
    for s in subsets:
        m = 0
        for t in subsets:
            if t & s == t:
                m |= 1 << pos[t]
        down.append(m)
    return frame_from_down(labels, down, f"2^{k}")


def downset_frame(down: Sequence[int], point_labels: Sequence[str] | None = None,
                  name: str | None = None) -> Frame:
    """Frame of down-sets of a finite poset, ordered by inclusion."""
    return downset_frame_with_sets(down, point_labels, name)[0]


def downset_frame_with_sets(down: Sequence[int], point_labels: Sequence[str] | None = None,
                            name: str | None = None) -> tuple[Frame, list[int]]:
    """As :func:`downset_frame`, also returning the down-set bitmask of each element."""
    n = len(down)
    sets = []
    for s in range(1 << n):
        if all(down[x] & ~s == 0 for x in bits(s)):
            sets.append(s)
    sets.sort(key=lambda s: (bin(s).count("1"), s))
    pos = {s: i for i, s in enumerate(sets)}
    dmasks = []
    for s in sets:
        m = 0
        for t in sets:
            if t & s == t:
                m |= 1 << pos[t]
        dmasks.append(m)
    if point_labels is None:
        labels = generic_labels(len(sets))
    else:
        labels = ["{" + ",".join(point_labels[i] for i in bits(s)) + "}" for s in sets]
    return frame_from_down(labels, dmasks, name), sets


def generic_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    return ["0"] + _middle_labels(n - 2) + ["1"]


def product(F: Frame, G: Frame, name: str | None = None) -> Frame:
    pairs = [(x, y) for x in range(F.n) for y in range(G.n)]
    labels = [f"({F.labels[x]},{G.labels[y]})" for x, y in pairs]
    down = []
    for i, (x, y) in enumerate(pairs):
        m = 0
        for k, (u, v) in enumerate(pairs):
            if F.leq(u, x) and G.leq(v, y):
                m |= 1 << k
        down.append(m)
    return build_frame(FinitePoset(tuple(labels), tuple(down)), name)


def relabel(F: Frame, labels: Sequence[str], name: str | None = None) -> Frame:
    G = Frame(labels, F.down, F.meet, F.join, name if name is not None else F.name)
    return G


def subframe_as_frame(F: Frame, elems: Iterable[int], name: str | None = None) -> tuple[Frame, tuple[int, ...]]:
    """The sub-poset on ``elems`` as a frame, plus its embedding table."""
    elems = sorted(set(elems))
    pos = {e: i for i, e in enumerate(elems)}
    down = []
    for e in elems:
        m = 0
        for x in bits(F.down[e]):
            if x in pos:
                m |= 1 << pos[x]
        down.append(m)
    labels = [F.labels[e] for e in elems]
    return frame_from_down(labels, down, name), tuple(elems)


# isomorphism ----------------------------------------------------------------


def find_isomorphism(F: Frame, G: Frame, colors_f=None, colors_g=None) -> tuple[int, ...] | None:
    """An order isomorphism F -> G as a table, or ``None``.

    Order isomorphisms of lattices preserve meets and joins, so this is a
    frame isomorphism.
    """
    iso = find_order_isomorphism(F.down, G.down, colors_f, colors_g)
    return None if iso is None else tuple(iso)


_CANON_CACHE: dict = {}


def canonical_form(F: Frame) -> tuple:
    key = F.down
    hit = _CANON_CACHE.get(key)
    if hit is None:
        hit = canonical_order(F.down)
        _CANON_CACHE[key] = hit
    return hit[0]


def canonical_frame(F: Frame, name: str | None = None) -> Frame:
    """Copy of F re-indexed in canonical order with generic labels."""
    canonical_form(F)
    order = _CANON_CACHE[F.down][1]
    down = permute_down(F.down, order)
    return frame_from_down(generic_labels(F.n), down, name)
