"""Biframes, strict zero-dimensionality, congruence biframes and the coreflection.

Parts are stored as element subsets of the total frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import (
    Congruence,
    cong_functor,
    congruence_lattice,
    nabla_extension,
    quotient,
)
from .errors import (
    NotBiframeHom,
    NotStr0d,
    PartNotSubframe,
    PartsDoNotGenerate,
    TheoremViolation,
)
from .lattice import Frame, chain, find_isomorphism, subframe_as_frame
from .morphisms import (
    FrameHom,
    compose,
    enumerate_homs,
    hom_violation,
    identity,
    is_dense,
    is_injective,
    is_subframe,
    is_surjective,
    right_adjoint,
    subframe_generated,
)


@dataclass(frozen=True)
class Biframe:
    total: Frame
    part1: frozenset[int]
    part2: frozenset[int]
    name: str | None = field(default=None, compare=False)

    def __repr__(self):
        label = self.name or f"Biframe[{self.total.n}]"
        return f"<{label}: |L0|={self.total.n}, |L1|={len(self.part1)}, |L2|={len(self.part2)}>"

    def colors(self) -> list[tuple[bool, bool]]:
        return [(x in self.part1, x in self.part2) for x in range(self.total.n)]


def validate_biframe(total: Frame, part1, part2, name: str | None = None) -> Biframe:
    part1, part2 = frozenset(part1), frozenset(part2)
    for label, part in (("first", part1), ("second", part2)):
        if not is_subframe(total, part):
            raise PartNotSubframe(f"{label} part is not a subframe of the total part")
    if len(subframe_generated(total, part1 | part2)) != total.n:
        raise PartsDoNotGenerate("the two parts do not generate the total part")
    return Biframe(total, part1, part2, name)


_PART_CACHE: dict = {}


def part_frame(B: Biframe, which: int) -> tuple[Frame, tuple[int, ...]]:
    """Part ``which`` (0, 1 or 2) as a frame in its own right, with its inclusion table."""
    key = (B.total, B.part1, B.part2, which)
    hit = _PART_CACHE.get(key)
    if hit is None:
        elems = {0: range(B.total.n), 1: B.part1, 2: B.part2}[which]
        name = None
        if B.name:
            name = f"{B.name}_{which}"
        hit = subframe_as_frame(B.total, elems, name)
        _PART_CACHE[key] = hit
    return hit


def first_part(B: Biframe) -> Frame:
    return part_frame(B, 1)[0]


def is_str0d(B: Biframe) -> bool:
    """Every first-part element has a complement in the second part, and those
    complements generate the second part."""
    T = B.total
    comps = []
    for a in B.part1:
        c = T.complements[a]
        if c is None or c not in B.part2:
            return False
        comps.append(c)
    return subframe_generated(T, comps) == B.part2


def require_str0d(B: Biframe) -> None:
    if not is_str0d(B):
        raise NotStr0d(f"{B!r} is not strictly zero-dimensional")


def trivial_biframe() -> Biframe:
    T = chain(1)
    return Biframe(T, frozenset({0}), frozenset({0}), "1")


# homomorphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class BiframeHom:
    source: Biframe
    target: Biframe
    h0: FrameHom

    def __call__(self, x: int) -> int:
        return self.h0.table[x]

    @property
    def table(self) -> tuple[int, ...]:
        return self.h0.table

    def part(self, which: int) -> FrameHom:
        """Restriction to part ``which`` as a hom between part frames."""
        S, semb = part_frame(self.source, which)
        T, temb = part_frame(self.target, which)
        pos = {e: i for i, e in enumerate(temb)}
        return FrameHom(S, T, tuple(pos[self.h0.table[e]] for e in semb))

    @property
    def h1(self) -> FrameHom:
        return self.part(1)

    @property
    def h2(self) -> FrameHom:
        return self.part(2)


def bihom_violation(source: Biframe, target: Biframe, table) -> str | None:
    bad = hom_violation(source.total, target.total, tuple(table))
    if bad is not None:
        return f"total part: {bad[0]} not preserved at {bad[1]}"
    if any(table[a] not in target.part1 for a in source.part1):
        return "first part not preserved"
    if any(table[a] not in target.part2 for a in source.part2):
        return "second part not preserved"
    return None


def validate_bihom(source: Biframe, target: Biframe, table) -> BiframeHom:
    table = tuple(table)
    bad = bihom_violation(source, target, table)
    if bad is not None:
        raise NotBiframeHom(bad)
    return BiframeHom(source, target, FrameHom(source.total, target.total, table))


def identity_bihom(B: Biframe) -> BiframeHom:
    return BiframeHom(B, B, identity(B.total))


def compose_bihom(g: BiframeHom, f: BiframeHom) -> BiframeHom:
    return BiframeHom(f.source, g.target, compose(g.h0, f.h0))


def is_part_preserving(source: Biframe, target: Biframe, table) -> bool:
    return all(table[a] in target.part1 for a in source.part1) and all(
        table[a] in target.part2 for a in source.part2
    )


def biframe_homs(A: Biframe, B: Biframe) -> list[BiframeHom]:
    return [
        BiframeHom(A, B, f)
        for f in enumerate_homs(A.total, B.total)
        if is_part_preserving(A, B, f.table)
    ]


def is_biframe_iso(h: BiframeHom) -> bool:
    if not (is_injective(h.h0) and is_surjective(h.h0)):
        return False
    # an inverse must also preserve parts
    return {h.table[a] for a in h.source.part1} == set(h.target.part1) and {
        h.table[a] for a in h.source.part2
    } == set(h.target.part2)


def find_biframe_isomorphism(A: Biframe, B: Biframe) -> tuple[int, ...] | None:
    if (len(A.part1), len(A.part2)) != (len(B.part1), len(B.part2)):
        return None
    return find_isomorphism(A.total, B.total, A.colors(), B.colors())


def is_dense_bihom(h: BiframeHom) -> bool:
    """Dense total part; for a str0d source this must match injectivity of h1."""
    dense = is_dense(h.h0)
    if is_str0d(h.source) and dense != is_injective(h.h1):
        raise TheoremViolation("dense bihom from str0d source with non-injective first part")
    return dense


def is_biframe_surjection(h: BiframeHom) -> bool:
    """Both parts surjective; for a str0d source, the first part alone must agree."""
    surj = is_surjective(h.h1) and is_surjective(h.h2)
    if is_str0d(h.source) and surj != is_surjective(h.h1):
        raise TheoremViolation("str0d surjection criterion disagrees with both-parts test")
    return surj


# congruence biframes -----------------------------------------------------------

_CB_CACHE: dict = {}


def congruence_biframe(L: Frame) -> Biframe:
    """(C L, nabla L, delta L) with delta L generated by the open congruences."""
    hit = _CB_CACHE.get(L)
    if hit is None:
        CF = congruence_lattice(L)
        part1 = frozenset(CF.nabla_table)
        part2 = subframe_generated(CF.lattice, CF.delta_table)
        hit = validate_biframe(CF.lattice, part1, part2, CF.lattice.name)
        _CB_CACHE[L] = hit
    return hit


def unit(L: Frame) -> FrameHom:
    """nabla as a hom L -> P(C L)."""
    CF = congruence_lattice(L)
    P, emb = part_frame(congruence_biframe(L), 1)
    pos = {e: i for i, e in enumerate(emb)}
    return FrameHom(L, P, tuple(pos[k] for k in CF.nabla_table))


def cong_bihom(f: FrameHom) -> BiframeHom:
    """C f as a biframe hom between congruence biframes."""
    Cf = cong_functor(f)
    return validate_bihom(congruence_biframe(f.source), congruence_biframe(f.target), Cf.table)


def biframe_quotient(B: Biframe, theta: Congruence) -> tuple[Biframe, BiframeHom]:
    """Quotient of the total part, parts carried to their images."""
    Q, q = quotient(B.total, theta)
    part1 = frozenset(q.table[a] for a in B.part1)
    part2 = frozenset(q.table[a] for a in B.part2)
    M = validate_biframe(Q, part1, part2)
    return M, BiframeHom(B, M, q)


# the congruential coreflection ------------------------------------------------

_CHI_CACHE: dict = {}


def coreflection_chi(M: Biframe) -> BiframeHom:
    """chi : C(M_1) -> M, the extension of the inclusion M_1 -> M_0 along nabla."""
    require_str0d(M)
    hit = _CHI_CACHE.get(M)
    if hit is None:
        L, emb = part_frame(M, 1)
        CF = congruence_lattice(L)
        g = FrameHom(L, M.total, emb)
        chi0 = nabla_extension(CF, M.total, g)
        hit = validate_bihom(congruence_biframe(L), M, chi0.table)
        _CHI_CACHE[M] = hit
    return hit


def chi_star_table(M: Biframe) -> tuple[int, ...]:
    """Right adjoint of chi_0 as a table M_0 -> C(M_1)."""
    chi = coreflection_chi(M)
    return right_adjoint(chi.h0).table


def chi_star(M: Biframe, m: int) -> Congruence:
    """The distinguished congruence on the first part attached to m."""
    L, _ = part_frame(M, 1)
    CF = congruence_lattice(L)
    return CF.congruence(chi_star_table(M)[m])


def is_congruential_by_chi(M: Biframe) -> bool:
    chi = coreflection_chi(M)
    return is_injective(chi.h0) and is_surjective(chi.h0)


# exhaustive structure search --------------------------------------------------


def complemented_subframes(F: Frame) -> list[frozenset[int]]:
    """Every subframe of F made of complemented elements.

    Complemented elements of a distributive lattice form a sublattice, so
    closing a set of them never leaves it.
    """
    comp = [x for x in range(F.n) if F.complements[x] is not None]
    start = frozenset({F.bottom, F.top})
    seen = {start}
    stack = [start]
    while stack:
        S = stack.pop()
        for x in comp:
            if x not in S:
                T = subframe_generated(F, S | {x})
                if T not in seen:
                    seen.add(T)
                    stack.append(T)
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def str0d_structures(F: Frame) -> list[Biframe]:
    """Every str0d biframe with total part F.

    The first part ranges over subframes of complemented elements; the second
    part is then forced to be the subframe generated by their complements.
    """
    out = []
    for part1 in complemented_subframes(F):
        part2 = subframe_generated(F, [F.complements[a] for a in part1])
        if len(subframe_generated(F, part1 | part2)) != F.n:
            continue
        B = Biframe(F, part1, part2)
        if is_str0d(B):
            out.append(B)
    return out
