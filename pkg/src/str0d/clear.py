"""Closure on str0d biframes, clear elements, congruentiality and the congruence-frame recognizer."""
from __future__ import annotations

from dataclasses import dataclass

from . import config
from .biframe import (
    Biframe,
    chi_star_table,
    coreflection_chi,
    is_congruential_by_chi,
    part_frame,
    require_str0d,
    str0d_structures,
)
from .category import closed_quotient
from .census import enumerate_frames, frame_class_name
from .congruence import (
    clear_congruence,
    closure_cl,
    congruence_lattice,
    is_clear_congruence,
)
from .errors import ConditionDisagreement, TheoremViolation
from .lattice import Frame, find_isomorphism, is_boolean
from .morphisms import subframe_generated


def biframe_cl(M: Biframe, m: int) -> int:
    """Largest first-part element below m."""
    require_str0d(M)
    T = M.total
    return T.join_all(a for a in M.part1 if T.leq(a, m))


def biframe_cl_via_chi(M: Biframe, m: int) -> int:
    """The closure computed as chi(cl(chi_*(m))) inside C(P M)."""
    chi = coreflection_chi(M)
    L, _ = part_frame(M, 1)
    CF = congruence_lattice(L)
    C = CF.congruence(chi_star_table(M)[m])
    return chi(CF.index(closure_cl(CF, C)))


def closure_table(M: Biframe) -> tuple[int, ...]:
    return tuple(biframe_cl(M, m) for m in range(M.total.n))


def clear_element_for(M: Biframe, c: int) -> int | None:
    """Largest element with closure c, if there is one."""
    require_str0d(M)
    if c not in M.part1:
        raise ValueError("c must be a first-part element")
    cl = closure_table(M)
    T = M.total
    top = T.join_all(x for x in range(T.n) if cl[x] == c)
    return top if cl[top] == c else None


def is_clear(M: Biframe, m: int) -> bool:
    """m is the largest element sharing its closure (direct search)."""
    cl = closure_table(M)
    T = M.total
    return all(T.leq(x, m) for x in range(T.n) if cl[x] == cl[m])


@dataclass(frozen=True)
class ClearnessReport:
    element: int
    closure: int
    is_clear: bool
    is_clarifiable: bool
    witness_clear: int | None
    condition_flags: tuple[bool, bool, bool, bool]


def clearness_report(M: Biframe, m: int) -> ClearnessReport:
    """Evaluate the four equivalent characterisations of clearness separately.

    (1) m is maximal among elements with its closure; (2) the first part of
    M / nabla_m is Boolean; (3) chi_*(m) is a clear congruence, found by
    search in C(P M); (4) chi_*(m) equals the closed form of the clear
    congruence at cl(m).
    """
    require_str0d(M)
    c = biframe_cl(M, m)
    if biframe_cl_via_chi(M, m) != c:
        raise TheoremViolation("closure routes disagree")
    L, emb = part_frame(M, 1)
    CF = congruence_lattice(L)
    star = CF.congruence(chi_star_table(M)[m])
    c_in_L = emb.index(c)
    flags = (
        is_clear(M, m),
        is_boolean(part_frame(closed_quotient(M, m), 1)[0]),
        is_clear_congruence(CF, star),
        star == clear_congruence(L, c_in_L),
    )
    if len(set(flags)) != 1:
        raise ConditionDisagreement(f"clearness conditions disagree at {M.total.labels[m]}: {flags}")
    witness = clear_element_for(M, c)
    return ClearnessReport(m, c, flags[0], witness is not None, witness, flags)


def clear_elements_upward_closed(M: Biframe) -> bool:
    T = M.total
    clear = [is_clear(M, m) for m in range(T.n)]
    return all(clear[b] for a in range(T.n) if clear[a] for b in range(T.n) if T.leq(a, b))


def is_congruential(M: Biframe) -> bool:
    """chi iso, checked against clarifiability of every first-part element."""
    require_str0d(M)
    by_chi = is_congruential_by_chi(M)
    by_clear = all(clear_element_for(M, c) is not None for c in M.part1)
    if by_chi != by_clear:
        raise TheoremViolation("congruentiality and clarifiability disagree")
    return by_chi


# the recognizer --------------------------------------------------------------------


@dataclass(frozen=True)
class RecognizerWitness:
    fixed_points: frozenset[int]
    c_map: tuple[int, ...]
    iso: tuple[int, ...] | None
    first_part_class: str


def c_map_violation(M: Frame, c, full: bool = True) -> str | None:
    """Which condition on an endo-map c of M fails, if any."""
    n = M.n
    if any(c[c[x]] != c[x] for x in range(n)):
        return "not idempotent"
    if any(not M.leq(c[x], x) for x in range(n)):
        return "not deflationary"
    if c[M.top] != M.top:
        return "top not preserved"
    if any(c[M.meet[x][y]] != M.meet[c[x]][c[y]] for x in range(n) for y in range(x + 1, n)):
        return "meets not preserved"
    fixed = sorted(set(c))
    if any(M.complements[a] is None for a in fixed):
        return "fixed point not complemented"
    gens = set(fixed) | {M.complements[a] for a in fixed}
    if len(subframe_generated(M, gens)) != n:
        return "fixed points and complements do not generate"
    if full:
        for v in fixed:
            fibre = [x for x in range(n) if c[x] == v]
            if c[M.join_all(fibre)] != v:
                return "fibre without maximum"
    return None


def _witnesses(M: Frame, full: bool, bound: int | None) -> list[RecognizerWitness]:
    if bound is None:
        bound = config.RECOGNIZER_BOUND
    config.check_bound(M.n, bound, "recognizer")
    out = []
    for B in str0d_structures(M):
        if full and not is_congruential(B):
            continue
        c = closure_table(B)
        bad = c_map_violation(M, c, full)
        if bad is not None:
            raise TheoremViolation(f"recognizer produced an invalid map: {bad}")
        L, emb = part_frame(B, 1)
        iso = None
        if full:
            chi = coreflection_chi(B)
            CF = congruence_lattice(L)
            if any(chi(CF.nabla_table[i]) != e for i, e in enumerate(emb)):
                raise TheoremViolation("iso does not carry nabla to the subframe inclusion")
            inv = [0] * M.n
            for k, x in enumerate(chi.table):
                inv[x] = k
            iso = tuple(inv)
        out.append(RecognizerWitness(B.part1, c, iso, frame_class_name(L)))
    return out


def recognize_congruence_frame(M: Frame, bound: int | None = None) -> list[RecognizerWitness]:
    """Witnesses that M is a congruence frame; empty when it is not."""
    return _witnesses(M, True, bound)


def recognize_quotient_of_congruence_frame(M: Frame, bound: int | None = None) -> list[RecognizerWitness]:
    """As the full recognizer, without the fibre-maximum condition."""
    return _witnesses(M, False, bound)


# oracles -------------------------------------------------------------------------


def endo_map_search(M: Frame, full: bool = True, bound: int = 6) -> set[frozenset[int]]:
    """Fixed-point sets of every endo-map satisfying the conditions, by direct search."""
    config.check_bound(M.n, bound, "endo_map_search")
    n = M.n
    out = set()
    c = [0] * n

    def rec(x):
        if x == n:
            if c_map_violation(M, c, full) is None:
                out.add(frozenset(c))
            return
        for v in range(x + 1):
            if M.leq(v, x):
                c[x] = v
                rec(x + 1)

    rec(0)
    return out


def is_congruence_frame_by_iso(M: Frame) -> bool:
    """M is isomorphic to C L for some enumerated L with at most |M| elements."""
    for L in enumerate_frames(M.n, bound=max(M.n, config.FRAME_ENUM_BOUND)):
        if 1 << len(L.join_irreducibles) != M.n:
            continue
        if find_isomorphism(congruence_lattice(L).lattice, M) is not None:
            return True
    return False
