"""Congruences as nuclei and the congruence frame.

A congruence on a finite frame L is stored as its nucleus ``j``: the map
sending x to the largest element of its class.  Congruences are ordered by
inclusion of relations, which is the pointwise order of nuclei (and the
reverse of inclusion of fixpoint sets).
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import config, kernels
from .errors import InvalidCongruence, UniversalPropertyViolation
from .lattice import Frame, frame_from_down, subframe_as_frame
from .morphisms import FrameHom, MonotoneMap, right_adjoint, validate_hom


class Congruence:
    __slots__ = ("frame", "nucleus", "_hash")

    def __init__(self, frame: Frame, nucleus: Sequence[int]):
        self.frame = frame
        self.nucleus = tuple(nucleus)
        self._hash = hash((frame, self.nucleus))

    def __eq__(self, other):
        return (
            isinstance(other, Congruence)
            and self.nucleus == other.nucleus
            and self.frame == other.frame
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Congruence({self.frame!r}, {classes_label(self)})"

    def __call__(self, x: int) -> int:
        return self.nucleus[x]

    def related(self, x: int, y: int) -> bool:
        return self.nucleus[x] == self.nucleus[y]

    def relation(self) -> frozenset[tuple[int, int]]:
        j = self.nucleus
        n = len(j)
        return frozenset((x, y) for x in range(n) for y in range(n) if j[x] == j[y])

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x, top in enumerate(self.nucleus):
            groups.setdefault(top, []).append(x)
        return [groups[k] for k in sorted(groups, key=lambda t: groups[t][0])]

    def fixpoints(self) -> list[int]:
        return sorted(set(self.nucleus))

    def __le__(self, other: "Congruence") -> bool:
        F = self.frame
        return all(F.leq(a, b) for a, b in zip(self.nucleus, other.nucleus))


def classes_label(C: Congruence) -> str:
    labels = C.frame.labels
    return "".join("{" + ",".join(labels[x] for x in cls) + "}" for cls in C.classes())


def nucleus_violation(F: Frame, j: Sequence[int]) -> str | None:
    if len(j) != F.n:
        return "wrong length"
    for x in range(F.n):
        if not F.leq(x, j[x]):
            return f"not inflationary at {F.labels[x]}"
        if j[j[x]] != j[x]:
            return f"not idempotent at {F.labels[x]}"
    for x in range(F.n):
        for y in range(x + 1, F.n):
            if j[F.meet[x][y]] != F.meet[j[x]][j[y]]:
                return f"meet not preserved at ({F.labels[x]}, {F.labels[y]})"
    return None


def validate_nucleus(F: Frame, j: Sequence[int]) -> Congruence:
    bad = nucleus_violation(F, j)
    if bad is not None:
        raise InvalidCongruence(bad)
    return Congruence(F, j)


def relation_is_congruence(F: Frame, rel: frozenset[tuple[int, int]]) -> bool:
    """Equivalence relation that is a subframe of F x F (finite joins suffice)."""
    n = F.n
    for x in range(n):
        if (x, x) not in rel:
            return False
    for x, y in rel:
        if (y, x) not in rel:
            return False
    for x, y in rel:
        for y2, z in rel:
            if y2 == y and (x, z) not in rel:
                return False
    m, jn = F.meet, F.join
    for x, y in rel:
        for u, v in rel:
            if (m[x][u], m[y][v]) not in rel or (jn[x][u], jn[y][v]) not in rel:
                return False
    return True


def congruence_from_relation(F: Frame, rel: Iterable[tuple[int, int]]) -> Congruence:
    """Read off the nucleus of a congruence given as a relation (max of each class)."""
    rel = frozenset(rel)
    if not relation_is_congruence(F, rel):
        raise InvalidCongruence("relation is not a congruence")
    j = [max(y for y in range(F.n) if (x, y) in rel) for x in range(F.n)]
    return validate_nucleus(F, j)


def identity_congruence(F: Frame) -> Congruence:
    return Congruence(F, range(F.n))


def all_congruence(F: Frame) -> Congruence:
    return Congruence(F, [F.top] * F.n)


def nabla(F: Frame, a: int) -> Congruence:
    """Closed congruence: x ~ y iff x v a = y v a."""
    return Congruence(F, F.join[a])


def delta(F: Frame, a: int) -> Congruence:
    """Open congruence generated by (a, 1); nucleus x -> (a -> x)."""
    return Congruence(F, F.heyting[a])


def congruence_from_pairs(F: Frame, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``."""
    pairs = [(int(x), int(y)) for x, y in pairs]
    j = kernels.generate_congruence(F.n, F.meet_flat, F.join_flat, pairs)
    return Congruence(F, j)


def meet_congruences(C: Congruence, D: Congruence) -> Congruence:
    F = C.frame
    return Congruence(F, [F.meet[a][b] for a, b in zip(C.nucleus, D.nucleus)])


def join_congruences(C: Congruence, D: Congruence) -> Congruence:
    """Join by iterating j_C after j_D to a fixpoint."""
    F = C.frame
    j = kernels.nucleus_join(F.n, kernels.int_array(C.nucleus), kernels.int_array(D.nucleus))
    return Congruence(F, j)


def join_all_congruences(F: Frame, Cs: Iterable[Congruence]) -> Congruence:
    acc = identity_congruence(F)
    for C in Cs:
        acc = join_congruences(acc, C)
    return acc


def meet_all_congruences(F: Frame, Cs: Iterable[Congruence]) -> Congruence:
    acc = all_congruence(F)
    for C in Cs:
        acc = meet_congruences(acc, C)
    return acc


# the congruence frame ---------------------------------------------------------


class CongruenceFrame:
    """All congruences on ``base`` as a frame, with the nabla and delta tables."""

    def __init__(self, base: Frame, nuclei: Sequence[Sequence[int]]):
        self.base = base
        n = base.n
        # C <= D forces |Fix D| <= |Fix C|; sorting on it gives a linear extension
        ordered = sorted(
            {tuple(j) for j in nuclei}, key=lambda j: (-len(set(j)), j)
        )
        self.nuclei = tuple(ordered)
        self.position = {j: i for i, j in enumerate(self.nuclei)}
        rel_masks = []
        for j in self.nuclei:
            m = 0
            for x in range(n):
                jx = j[x]
                for y in range(n):
                    if j[y] == jx:
                        m |= 1 << (x * n + y)
            rel_masks.append(m)
        self.relation_masks = tuple(rel_masks)
        down = []
        for i, mi in enumerate(rel_masks):
            d = 0
            for k in range(i + 1):
                if rel_masks[k] & ~mi == 0:
                    d |= 1 << k
            down.append(d)
        labels = [classes_label(Congruence(base, j)) for j in self.nuclei]
        self.lattice = frame_from_down(labels, down, _cong_name(base))
        self.nabla_table = tuple(self.position[tuple(base.join[a])] for a in range(n))
        self.delta_table = tuple(self.position[tuple(base.heyting[a])] for a in range(n))

    def __len__(self):
        return len(self.nuclei)

    def __repr__(self):
        return f"<CongruenceFrame of {self.base!r}: {len(self)} congruences>"

    def congruence(self, k: int) -> Congruence:
        return Congruence(self.base, self.nuclei[k])

    def congruences(self) -> list[Congruence]:
        return [self.congruence(k) for k in range(len(self))]

    def index(self, C: Congruence) -> int:
        return self.position[C.nucleus]

    @cached_property
    def nabla_hom(self) -> FrameHom:
        return FrameHom(self.base, self.lattice, self.nabla_table)

    @cached_property
    def nabla_adjoint(self) -> MonotoneMap:
        return right_adjoint(self.nabla_hom)


def _cong_name(F: Frame) -> str:
    return f"C({F.name})" if F.name else "C(L)"


_CF_CACHE: dict = {}


def congruence_lattice(L: Frame, bound: int | None = None) -> CongruenceFrame:
    """Enumerate every congruence on L through its fixpoint set.

    Fixpoint sets of nuclei are exactly the subsets containing 1, closed under
    meets and under ``x -> s``; they form a closure system, enumerated in
    lectic order by the compiled kernel.
    """
    if bound is None:
        bound = config.hard_cap()
    config.check_bound(L.n, bound, "congruence_lattice")
    key = L
    hit = _CF_CACHE.get(key)
    if hit is not None:
        return hit
    config.check_bound(len(L.join_irreducibles), config.JOIN_IRREDUCIBLE_CAP,
                       "congruence_lattice (join-irreducibles)")
    tables = kernels.nucleus_images(L.n, L.leq_bytes, L.meet_flat, L.heyting_flat, L.top)
    for j in tables:
        bad = nucleus_violation(L, j)
        if bad is not None:
            raise InvalidCongruence(f"closure-system kernel produced a non-nucleus: {bad}")
    CF = CongruenceFrame(L, tables)
    _CF_CACHE[key] = CF
    return CF


def clear_cache() -> None:
    _CF_CACHE.clear()
    _functor_cache.clear()


# closure, clear congruences ---------------------------------------------------


def closure_cl(CF: CongruenceFrame, C: Congruence) -> Congruence:
    """Largest closed congruence below C: nabla of j_C(0)."""
    return nabla(CF.base, C.nucleus[CF.base.bottom])


def closure_cl_adjoint(CF: CongruenceFrame, C: Congruence) -> Congruence:
    """The same map computed as nabla after its right adjoint."""
    a = CF.nabla_adjoint(CF.index(C))
    return CF.congruence(CF.nabla_table[a])


def clear_congruence(L: Frame, a: int) -> Congruence:
    """Largest congruence with closure nabla_a; nucleus x -> ((x -> a) -> a)."""
    h = L.heyting
    return Congruence(L, [h[h[x][a]][a] for x in range(L.n)])


def clear_congruence_search(CF: CongruenceFrame, a: int) -> Congruence:
    """Maximum of {C : cl(C) = nabla_a} by direct search over C L."""
    lat = CF.lattice
    members = [k for k, j in enumerate(CF.nuclei) if j[CF.base.bottom] == a]
    top = lat.join_all(members)
    if top not in members:
        raise UniversalPropertyViolation(f"no largest congruence with closure {a}")
    return CF.congruence(top)


def is_clear_congruence(CF: CongruenceFrame, C: Congruence) -> bool:
    """C is the largest congruence sharing its closure (checked by search)."""
    return clear_congruence_search(CF, C.nucleus[CF.base.bottom]) == C


def dense_top(L: Frame) -> Congruence:
    return clear_congruence(L, L.bottom)


def is_dense_congruence(C: Congruence) -> bool:
    return C.nucleus[C.frame.bottom] == C.frame.bottom


def is_smooth(CF: CongruenceFrame, C: Congruence) -> bool:
    """C equals its double pseudocomplement in C L."""
    lat = CF.lattice
    k = CF.index(C)
    return lat.pseudocomplement(lat.pseudocomplement(k)) == k


# quotients and the functor -----------------------------------------------------


def quotient(L: Frame, C: Congruence) -> tuple[Frame, FrameHom]:
    """L/C as the fixpoint frame of the nucleus, with q(x) = j(x)."""
    fix = sorted(set(C.nucleus))
    Q, emb = subframe_as_frame(L, fix, name=None)
    pos = {e: i for i, e in enumerate(emb)}
    q = FrameHom(L, Q, tuple(pos[C.nucleus[x]] for x in range(L.n)))
    return Q, q


def quotient_embedding(L: Frame, C: Congruence) -> tuple[int, ...]:
    """Table of the inclusion L/C -> L, which is the right adjoint of q."""
    return tuple(sorted(set(C.nucleus)))


def kernel(f: FrameHom) -> Congruence:
    """Kernel congruence {(x, y) : f x = f y}."""
    L = f.source
    best: dict[int, int] = {}
    for x in range(L.n):
        y = f.table[x]
        if best.get(y, -1) < x:
            best[y] = x
    return Congruence(L, [best[f.table[x]] for x in range(L.n)])


def cong_image(f: FrameHom, C: Congruence) -> Congruence:
    """Congruence on the target generated by (f x f)[C].

    The pairs (x, j(x)) already generate C, so their images suffice.
    """
    j = C.nucleus
    pairs = [(f.table[x], f.table[j[x]]) for x in range(f.source.n) if j[x] != x]
    return congruence_from_pairs(f.target, pairs)


def cong_preimage(f: FrameHom, D: Congruence) -> Congruence:
    """(f x f)^-1[D]."""
    L = f.source
    jd = D.nucleus
    best: dict[int, int] = {}
    for x in range(L.n):
        key = jd[f.table[x]]
        if best.get(key, -1) < x:
            best[key] = x
    return Congruence(L, [best[jd[f.table[x]]] for x in range(L.n)])


_functor_cache: dict = {}


def cong_functor(f: FrameHom) -> FrameHom:
    """C f : C L -> C M as a frame homomorphism between congruence frames."""
    key = (f.source, f.target, f.table)
    hit = _functor_cache.get(key)
    if hit is not None:
        return hit
    CL = congruence_lattice(f.source)
    CM = congruence_lattice(f.target)
    table = tuple(CM.index(cong_image(f, C)) for C in CL.congruences())
    out = validate_hom(CL.lattice, CM.lattice, table)
    _functor_cache[key] = out
    return out


def cong_functor_adjoint(f: FrameHom) -> MonotoneMap:
    """C f_* : C M -> C L as preimage."""
    CL = congruence_lattice(f.source)
    CM = congruence_lattice(f.target)
    table = tuple(CL.index(cong_preimage(f, D)) for D in CM.congruences())
    return MonotoneMap(CM.lattice, CL.lattice, table)


def third_iso(L: Frame, C: Congruence) -> dict[int, int]:
    """D -> D/C from congruences above C onto congruences of L/C.

    Keys index ``congruence_lattice(L)``; values index
    ``congruence_lattice(L/C)``.  Bijectivity and order in both directions are
    checked.
    """
    CF = congruence_lattice(L)
    Q, q = quotient(L, C)
    CQ = congruence_lattice(Q)
    out = {}
    for k, D in enumerate(CF.congruences()):
        if C <= D:
            out[k] = CQ.index(cong_image(q, D))
    if sorted(out.values()) != list(range(len(CQ))):
        raise UniversalPropertyViolation("third isomorphism map is not a bijection")
    for a in out:
        for b in out:
            if CF.lattice.leq(a, b) != CQ.lattice.leq(out[a], out[b]):
                raise UniversalPropertyViolation("third isomorphism map is not an order iso")
    return out


def induced_map(f: FrameHom, C: Congruence, D: Congruence) -> FrameHom | None:
    """The map L/C -> M/D commuting with the quotients, if it is well defined."""
    L, M = f.source, f.target
    for x in range(L.n):
        if D.nucleus[f.table[x]] != D.nucleus[f.table[C.nucleus[x]]]:
            return None
    QL, qL = quotient(L, C)
    QM, qM = quotient(M, D)
    table = [0] * QL.n
    for x in range(L.n):
        table[qL.table[x]] = qM.table[f.table[x]]
    return validate_hom(QL, QM, table)


# universal property of nabla --------------------------------------------------


def nabla_extension(CF: CongruenceFrame, M: Frame, g: FrameHom) -> FrameHom:
    """The unique hom C L -> M extending g along nabla.

    Needs every g(a) complemented in M.  A congruence C is the join of the
    congruences generated by (x, j(x)), each equal to nabla_{j x} ^ delta_x, so
    C goes to the join of g(j x) ^ g(x)^c.
    """
    L = CF.base
    comp = []
    for x in range(L.n):
        c = M.complements[g.table[x]]
        if c is None:
            raise ValueError(f"g({L.labels[x]}) is not complemented in the target")
        comp.append(c)
    table = []
    for j in CF.nuclei:
        acc = M.bottom
        for x in range(L.n):
            if j[x] != x:
                acc = M.join[acc][M.meet[g.table[j[x]]][comp[x]]]
        table.append(acc)
    return validate_hom(CF.lattice, M, table)


# brute-force oracles ----------------------------------------------------------


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n."""
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield list(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


def brute_force_congruences(L: Frame, bound: int | None = None) -> set[frozenset[tuple[int, int]]]:
    """All equivalence relations on L that are sublattices of L x L.

    Direct search over set partitions; independent of the nucleus machinery.
    """
    if bound is None:
        bound = config.ORACLE_BOUND
    config.check_bound(L.n, bound, "brute_force_congruences")
    out = set()
    m, jn = L.meet, L.join
    for blocks in _set_partitions(L.n):
        rel = frozenset(
            (x, y) for x in range(L.n) for y in range(L.n) if blocks[x] == blocks[y]
        )
        ok = True
        for x, y in rel:
            for u, v in rel:
                if blocks[m[x][u]] != blocks[m[y][v]] or blocks[jn[x][u]] != blocks[jn[y][v]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(rel)
    return out


def congruence_from_pairs_by_meet(L: Frame, pairs: Iterable[tuple[int, int]],
                                  bound: int | None = None) -> Congruence:
    """Least congruence containing ``pairs`` as the meet of all that contain them."""
    pairs = list(pairs)
    rels = [r for r in brute_force_congruences(L, bound) if all(p in r for p in pairs)]
    inter = frozenset.intersection(*rels)
    return congruence_from_relation(L, inter)


def frame_count_check(L: Frame) -> tuple[int, int]:
    """(|C L|, 2 ** |J(L)|)."""
    return len(congruence_lattice(L)), 2 ** len(L.join_irreducibles)
