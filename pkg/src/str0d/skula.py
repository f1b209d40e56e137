"""Finite T0 spaces, Skula biframes and the points of a frame.

Subsets of the point set are bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .biframe import Biframe, part_frame, require_str0d, validate_biframe
from .census import posets_by_size
from .clear import clear_element_for
from .errors import InvalidSpace, NotT0, RemarkViolation
from .lattice import Frame, frame_from_down
from .order import bits, popcount


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple[str, ...]
    opens: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def is_t0(self) -> bool:
        for x, y in combinations(range(self.n), 2):
            if not any((U >> x & 1) != (U >> y & 1) for U in self.opens):
                return False
        return True

    def closed_sets(self) -> frozenset[int]:
        return frozenset(self.full & ~U for U in self.opens)

    def closure(self, s: int) -> int:
        acc = self.full
        for F in self.closed_sets():
            if s & ~F == 0:
                acc &= F
        return acc

    def subset_label(self, s: int) -> str:
        return "{" + ",".join(self.points[i] for i in bits(s)) + "}"


def make_space(points: Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    points = tuple(str(p) for p in points)
    if len(set(points)) != len(points):
        raise InvalidSpace("duplicate point labels")
    index = {p: i for i, p in enumerate(points)}
    masks = set()
    for U in opens:
        m = 0
        for p in U:
            if p not in index:
                raise InvalidSpace(f"unknown point {p!r}")
            m |= 1 << index[p]
        masks.add(m)
    return validate_space(FiniteSpace(points, frozenset(masks)))


def validate_space(X: FiniteSpace) -> FiniteSpace:
    if 0 not in X.opens or X.full not in X.opens:
        raise InvalidSpace("opens must contain the empty set and the whole space")
    for U in X.opens:
        for V in X.opens:
            if U | V not in X.opens or U & V not in X.opens:
                raise InvalidSpace("opens are not closed under union and intersection")
    return X


def generated_topology(n: int, subbasis: Iterable[int]) -> frozenset[int]:
    """Close a subbasis under finite intersections, then under unions."""
    full = (1 << n) - 1
    basis = {full}
    for s in subbasis:
        basis |= {b & s for b in basis}
    opens = {0}
    for b in basis:
        opens |= {o | b for o in opens}
    return frozenset(opens)


def sierpinski() -> FiniteSpace:
    return make_space(["x", "y"], [[], ["x"], ["x", "y"]])


def discrete(n: int) -> FiniteSpace:
    pts = [f"p{i}" for i in range(n)]
    return FiniteSpace(tuple(pts), frozenset(range(1 << n)))


def chain_space(n: int) -> FiniteSpace:
    """Points p0..p{n-1}; the opens are the initial segments."""
    pts = [f"p{i}" for i in range(n)]
    return FiniteSpace(tuple(pts), frozenset((1 << k) - 1 for k in range(n + 1)))


# frames and biframes ------------------------------------------------------------


def _family_frame(X: FiniteSpace, family: Iterable[int]) -> tuple[Frame, list[int]]:
    sets = sorted(family, key=lambda s: (popcount(s), s))
    down = []
    for s in sets:
        m = 0
        for i, t in enumerate(sets):
            if t & ~s == 0:
                m |= 1 << i
        down.append(m)
    return frame_from_down([X.subset_label(s) for s in sets], down), sets


def open_set_frame(X: FiniteSpace) -> Frame:
    return _family_frame(X, X.opens)[0]


def skula(X: FiniteSpace) -> Biframe:
    """(tau v upsilon, tau, upsilon) with upsilon generated by the closed sets."""
    if not X.is_t0:
        raise NotT0("space is not T0")
    upsilon = generated_topology(X.n, X.closed_sets())
    sigma = generated_topology(X.n, X.opens | upsilon)
    F, sets = _family_frame(X, sigma)
    pos = {s: i for i, s in enumerate(sets)}
    B = validate_biframe(F, [pos[U] for U in X.opens], [pos[V] for V in upsilon], "Sk")
    require_str0d(B)
    return B


def points_of_frame(F: Frame) -> frozenset[int]:
    """Prime elements p != 1: x ^ y <= p forces x <= p or y <= p."""
    out = set()
    for p in range(F.n):
        if p == F.top:
            continue
        if all(F.leq(x, p) or F.leq(y, p)
               for x in range(F.n) for y in range(x + 1, F.n)
               if F.leq(F.meet[x][y], p)):
            out.add(p)
    return frozenset(out)


def space_from_biframe(M: Biframe) -> FiniteSpace:
    """Points of the total part; an open for each first-part element a."""
    require_str0d(M)
    T = M.total
    pts = sorted(points_of_frame(T))
    opens = set()
    for a in M.part1:
        s = 0
        for i, p in enumerate(pts):
            if not T.leq(a, p):
                s |= 1 << i
        opens.add(s)
    X = validate_space(FiniteSpace(tuple(T.labels[p] for p in pts), frozenset(opens)))
    if not X.is_t0:
        raise NotT0("spatial side of a str0d biframe should be T0")
    return X


def find_homeomorphism(X: FiniteSpace, Y: FiniteSpace) -> tuple[int, ...] | None:
    """A bijection of points carrying opens onto opens, by direct search."""
    if X.n != Y.n or len(X.opens) != len(Y.opens):
        return None
    for perm in permutations(range(Y.n)):
        image = set()
        for U in X.opens:
            m = 0
            for i in bits(U):
                m |= 1 << perm[i]
            image.add(m)
        if image == Y.opens:
            return perm
    return None


# sobriety -------------------------------------------------------------------------


def is_sober_topological(X: FiniteSpace) -> bool:
    """Every irreducible closed set is the closure of exactly one point."""
    closed = X.closed_sets()
    for F in closed:
        if F == 0:
            continue
        proper = [G for G in closed if G != F and G & ~F == 0]
        if any(G | H == F for G in proper for H in proper):
            continue
        generic = [x for x in bits(F) if X.closure(1 << x) == F]
        if len(generic) != 1:
            return False
    return True


def is_sober_by_clear_primes(X: FiniteSpace) -> bool:
    """Every prime element of the first part of Sk X is clarifiable."""
    B = skula(X)
    L, emb = part_frame(B, 1)
    return all(clear_element_for(B, emb[p]) is not None for p in points_of_frame(L))


def is_sober(X: FiniteSpace) -> bool:
    if not X.is_t0:
        raise NotT0("space is not T0")
    a = is_sober_topological(X)
    if a != is_sober_by_clear_primes(X):
        raise RemarkViolation("sobriety and the clarifiable-primes criterion disagree")
    return a


# enumeration ----------------------------------------------------------------------


def space_from_poset(down: Sequence[int]) -> FiniteSpace:
    """Opens are the down-sets of the poset (specialisation order reversed)."""
    n = len(down)
    opens = frozenset(s for s in range(1 << n) if all(down[x] & ~s == 0 for x in bits(s)))
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), opens)


def enumerate_t0_spaces(max_points: int) -> list[FiniteSpace]:
    """One T0 space per homeomorphism class with 1..max_points points."""
    out = []
    for level in posets_by_size(max_points)[1:]:
        for down in level:
            out.append(space_from_poset(down))
    return out


def brute_force_t0_topologies(n: int) -> list[FiniteSpace]:
    """Every T0 topology on n labelled points, by scanning all families of subsets."""
    full = (1 << n) - 1
    middle = [s for s in range(1, full)]
    pts = tuple(f"p{i}" for i in range(n))
    out = []
    for mask in range(1 << len(middle)):
        opens = {0, full} | {middle[i] for i in range(len(middle)) if mask >> i & 1}
        if all(U | V in opens and U & V in opens for U in opens for V in opens):
            X = FiniteSpace(pts, frozenset(opens))
            if X.is_t0:
                out.append(X)
    return out


def t0_classes_brute_force(n: int) -> list[FiniteSpace]:
    reps: list[FiniteSpace] = []
    for X in brute_force_t0_topologies(n):
        if not any(find_homeomorphism(R, X) is not None for R in reps):
            reps.append(X)
    return reps
