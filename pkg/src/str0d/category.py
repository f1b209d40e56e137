"""The Grothendieck construction over C², the str0d reflection, fibres, (co)limits
and the mono/epi classification.

A str0d biframe M is presented as the pair (L, C) with L = P M and C the kernel
of chi : C L -> M, a congruence on the frame C L.  Congruences on C L are plain
:class:`Congruence` objects on ``congruence_lattice(L).lattice``; the second
congruence frame is only built when a listing of all of them is wanted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from . import config
from .biframe import (
    Biframe,
    BiframeHom,
    biframe_homs,
    biframe_quotient,
    chi_star,
    compose_bihom,
    congruence_biframe,
    coreflection_chi,
    find_biframe_isomorphism,
    is_biframe_iso,
    is_biframe_surjection,
    is_dense_bihom,
    part_frame,
    require_str0d,
    str0d_structures,
    validate_bihom,
)
from .congruence import (
    Congruence,
    cong_functor,
    cong_image,
    cong_preimage,
    congruence_lattice,
    dense_top,
    is_dense_congruence,
    join_all_congruences,
    kernel,
    meet_all_congruences,
    nabla,
    quotient,
)
from .errors import (
    InvalidDiagram,
    NotDense,
    TheoremViolation,
    UniversalPropertyViolation,
)
from .lattice import Frame, boolean, downset_frame_with_sets, find_isomorphism, frame_from_pairs
from .morphisms import FrameHom, is_injective, is_surjective, validate_hom

# fibre objects ----------------------------------------------------------------


@dataclass(frozen=True)
class FibreObject:
    base: Frame
    cong2: Congruence

    def __post_init__(self):
        if self.cong2.frame != congruence_lattice(self.base).lattice:
            raise ValueError("cong2 must be a congruence on the congruence frame of base")

    @property
    def is_str0d(self) -> bool:
        return is_dense_congruence(self.cong2)


@dataclass(frozen=True)
class FibreMorphism:
    hom: FrameHom
    source: FibreObject
    target: FibreObject
    final: bool = field(default=False, compare=False)
    initial: bool = field(default=False, compare=False)


def second_image(f: FrameHom, C: Congruence) -> Congruence:
    """C² f (C)."""
    return cong_image(cong_functor(f), C)


def second_preimage(f: FrameHom, D: Congruence) -> Congruence:
    """(C² f)_* (D)."""
    return cong_preimage(cong_functor(f), D)


def check_fibre_morphism(f: FrameHom, O: FibreObject, O2: FibreObject) -> FibreMorphism | None:
    """The morphism f : O -> O2 with its finality flags, or ``None`` if C² f (C) is not below C'."""
    if f.source != O.base or f.target != O2.base:
        raise ValueError("hom does not match the fibre objects")
    image = second_image(f, O.cong2)
    if not image <= O2.cong2:
        return None
    final = image == O2.cong2
    initial = second_preimage(f, O2.cong2) == O.cong2
    return FibreMorphism(f, O, O2, final, initial)


def to_fibre(M: Biframe) -> FibreObject:
    """(P M, ker chi_0)."""
    chi = coreflection_chi(M)
    L, _ = part_frame(M, 1)
    return FibreObject(L, kernel(chi.h0))


def from_fibre(O: FibreObject) -> Biframe:
    """C L / C as a biframe; C must lie below the largest dense congruence."""
    if not O.is_str0d:
        raise NotDense("second-order congruence is not dense")
    M, _ = biframe_quotient(congruence_biframe(O.base), O.cong2)
    return M


def reflect_eta(O: FibreObject) -> tuple[FibreObject, FibreMorphism]:
    """Reflection of (L, C) into the str0d objects: (L / nabla_*(C), C / cl(C)).

    nabla_*(C) is the congruence C relates to the bottom of C L.  The
    transported congruence is C² eta (C); as a cross-check, C eta must be the
    closed quotient of C L by cl(C) and C must be recovered from its image.
    """
    L = O.base
    CF = congruence_lattice(L)
    A = CF.congruence(O.cong2.nucleus[CF.lattice.bottom])
    Q, eta = quotient(L, A)
    Ceta = cong_functor(eta)
    if kernel(Ceta) != nabla(CF.lattice, CF.index(A)):
        raise UniversalPropertyViolation("C eta is not the closed quotient by cl(C)")
    image = cong_image(Ceta, O.cong2)
    if cong_preimage(Ceta, image) != O.cong2:
        raise UniversalPropertyViolation("third isomorphism transport does not round-trip")
    target = FibreObject(Q, image)
    if not target.is_str0d:
        raise UniversalPropertyViolation("reflection target is not str0d")
    mor = check_fibre_morphism(eta, O, target)
    if mor is None or not mor.final:
        raise UniversalPropertyViolation("eta is not a final morphism")
    return target, mor


def second_congruence_frame(L: Frame):
    """congruence_lattice(C L), bounded through the join-irreducible cap on L."""
    CF = congruence_lattice(L)
    return congruence_lattice(CF.lattice, bound=1 << config.JOIN_IRREDUCIBLE_CAP)


def fibre_over(L: Frame) -> list[Biframe]:
    """One str0d biframe per congruence on C L below the largest dense one.

    Listed from the largest congruence (smallest biframe) down, matching the
    dual order of the fibre.
    """
    CF = congruence_lattice(L)
    C2 = second_congruence_frame(L)
    D = dense_top(CF.lattice)
    below = [C for C in C2.congruences() if C <= D]
    if any(not is_dense_congruence(C) for C in below):
        raise UniversalPropertyViolation("congruence below the dense top is not dense")
    below.sort(key=lambda C: C2.index(C), reverse=True)
    return [from_fibre(FibreObject(L, C)) for C in below]


# frame (co)limits ---------------------------------------------------------------


@dataclass
class Diagram:
    """A finite graph of str0d biframes and biframe homs, read as a free shape."""

    objects: dict[str, Biframe]
    arrows: list[tuple[str, str, str, BiframeHom]] = field(default_factory=list)

    def __post_init__(self):
        for name, src, dst, h in self.arrows:
            if src not in self.objects or dst not in self.objects:
                raise InvalidDiagram(f"arrow {name} has an unknown endpoint")
            if h.source != self.objects[src] or h.target != self.objects[dst]:
                raise InvalidDiagram(f"arrow {name} does not match its endpoints")
        for name, M in self.objects.items():
            require_str0d(M)


def _spectrum(F: Frame) -> list[int]:
    return sorted(F.join_irreducibles)


def _dual_map(f: FrameHom) -> dict[int, int]:
    """J(target) -> J(source): p goes to the least a with p <= f(a)."""
    L, M = f.source, f.target
    out = {}
    for p in _spectrum(M):
        out[p] = L.meet_all(a for a in range(L.n) if M.leq(p, f.table[a]))
    return out


def frame_colimit(frames: dict[str, Frame], arrows: list[tuple[str, str, str, FrameHom]]):
    """Colimit of finite frames, via the limit of their posets of join-irreducibles.

    Finite distributive lattices are dual to finite posets, so the colimit is
    the down-set frame of the poset of compatible families of points.
    Returns (L, legs) with legs[X] : frames[X] -> L.
    """
    names = list(frames)
    spectra = [_spectrum(frames[X]) for X in names]
    duals = [(src, dst, _dual_map(f)) for _, src, dst, f in arrows]
    families = []
    for choice in cartesian(*spectra):
        fam = dict(zip(names, choice))
        if all(d[fam[dst]] == fam[src] for src, dst, d in duals):
            families.append(fam)
    # order families pointwise; index them along a linear extension
    families.sort(key=lambda p: tuple(frames[X].down[p[X]].bit_count() for X in names))
    down = []
    for p in families:
        m = 0
        for j, q in enumerate(families):
            if all(frames[X].leq(q[X], p[X]) for X in names):
                m |= 1 << j
        down.append(m)
    labels = ["(" + ",".join(frames[X].labels[p[X]] for X in names) + ")" for p in families]
    L, sets = downset_frame_with_sets(down, labels)
    pos = {s: i for i, s in enumerate(sets)}
    legs = {}
    for X in names:
        F = frames[X]
        table = []
        for x in range(F.n):
            s = 0
            for i, p in enumerate(families):
                if F.leq(p[X], x):
                    s |= 1 << i
            table.append(pos[s])
        legs[X] = validate_hom(F, L, table)
    return L, legs


def frame_limit(frames: dict[str, Frame], arrows: list[tuple[str, str, str, FrameHom]]):
    """Limit of finite frames as the subframe of compatible families in the product.

    Returns (L, legs) with legs[X] : L -> frames[X].
    """
    names = list(frames)
    families = []
    for choice in cartesian(*(range(frames[X].n) for X in names)):
        fam = dict(zip(names, choice))
        if all(f.table[fam[src]] == fam[dst] for _, src, dst, f in arrows):
            families.append(fam)
    labels = ["(" + ",".join(frames[X].labels[p[X]] for X in names) + ")" for p in families]
    pairs = []
    for p in families:
        for q in families:
            if all(frames[X].leq(p[X], q[X]) for X in names):
                pairs.append((labels[families.index(p)], labels[families.index(q)]))
    L = frame_from_pairs(labels, pairs)
    legs = {}
    for X in names:
        table = [0] * L.n
        for lab, p in zip(labels, families):
            table[L.index[lab]] = p[X]
        legs[X] = validate_hom(L, frames[X], table)
    return L, legs


# biframe (co)limits ------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """M as C L / C, with chi : C L -> M."""

    base: Frame
    chi: BiframeHom
    cong2: Congruence


def presentation(M: Biframe) -> Presentation:
    chi = coreflection_chi(M)
    L, _ = part_frame(M, 1)
    return Presentation(L, chi, kernel(chi.h0))


def _first_part_diagram(D: Diagram):
    pres = {X: presentation(M) for X, M in D.objects.items()}
    frames = {X: pres[X].base for X in D.objects}
    arrows = [(name, src, dst, h.h1) for name, src, dst, h in D.arrows]
    return pres, frames, arrows


def _lift(source: Biframe, target: Biframe, pairs) -> BiframeHom:
    """Hom defined on the source through (source element, target element) pairs."""
    table: dict[int, int] = {}
    for x, y in pairs:
        if table.setdefault(x, y) != y:
            raise UniversalPropertyViolation("lifted map is not well defined")
    if len(table) != source.total.n:
        raise UniversalPropertyViolation("lifted map is not total")
    return validate_bihom(source, target, [table[x] for x in range(source.total.n)])


def colimit(D: Diagram) -> tuple[Biframe, dict[str, BiframeHom]]:
    """C L / join of C² alpha_X (C_X), with L the frame colimit of the first parts."""
    pres, frames, arrows = _first_part_diagram(D)
    L, alpha = frame_colimit(frames, arrows)
    CF = congruence_lattice(L)
    Calpha = {X: cong_functor(alpha[X]) for X in frames}
    K = join_all_congruences(
        CF.lattice, [cong_image(Calpha[X], pres[X].cong2) for X in frames]
    )
    N, q = biframe_quotient(congruence_biframe(L), K)
    legs = {}
    for X, M in D.objects.items():
        chi, Ca = pres[X].chi, Calpha[X]
        legs[X] = _lift(M, N, ((chi(c), q(Ca.table[c])) for c in range(chi.source.total.n)))
    return N, legs


def limit(D: Diagram) -> tuple[Biframe, dict[str, BiframeHom]]:
    """C L / meet of (C² beta_X)_* (C_X), with L the frame limit of the first parts."""
    pres, frames, arrows = _first_part_diagram(D)
    L, beta = frame_limit(frames, arrows)
    CF = congruence_lattice(L)
    Cbeta = {X: cong_functor(beta[X]) for X in frames}
    K = meet_all_congruences(
        CF.lattice, [cong_preimage(Cbeta[X], pres[X].cong2) for X in frames]
    )
    N, q = biframe_quotient(congruence_biframe(L), K)
    legs = {}
    for X, M in D.objects.items():
        chi, Cb = pres[X].chi, Cbeta[X]
        legs[X] = _lift(N, M, ((q(c), chi(Cb.table[c])) for c in range(CF.lattice.n)))
    return N, legs


# universal properties ----------------------------------------------------------

_HOM_CACHE: dict = {}


def homs(A: Biframe, B: Biframe) -> list[BiframeHom]:
    key = (A, B)
    hit = _HOM_CACHE.get(key)
    if hit is None:
        hit = biframe_homs(A, B)
        _HOM_CACHE[key] = hit
    return hit


def cocones(D: Diagram, T: Biframe):
    names = list(D.objects)
    options = [homs(D.objects[X], T) for X in names]
    for choice in cartesian(*options):
        fam = dict(zip(names, choice))
        if all(compose_bihom(fam[dst], h).table == fam[src].table
               for _, src, dst, h in D.arrows):
            yield fam


def cones(D: Diagram, T: Biframe):
    names = list(D.objects)
    options = [homs(T, D.objects[X]) for X in names]
    for choice in cartesian(*options):
        fam = dict(zip(names, choice))
        if all(compose_bihom(h, fam[src]).table == fam[dst].table
               for _, src, dst, h in D.arrows):
            yield fam


def verify_colimit(D: Diagram, N: Biframe, legs: dict[str, BiframeHom], corpus) -> int:
    """Every cocone to every corpus object factors uniquely through the legs.

    Returns the number of cocones checked.
    """
    for _, src, dst, h in D.arrows:
        if compose_bihom(legs[dst], h).table != legs[src].table:
            raise UniversalPropertyViolation("colimit legs do not form a cocone")
    names = list(D.objects)
    checked = 0
    for T in corpus:
        counts: dict = {}
        for u in homs(N, T):
            key = tuple(compose_bihom(u, legs[X]).table for X in names)
            counts[key] = counts.get(key, 0) + 1
        for fam in cocones(D, T):
            key = tuple(fam[X].table for X in names)
            if counts.get(key, 0) != 1:
                raise UniversalPropertyViolation(
                    f"cocone to {T!r} has {counts.get(key, 0)} mediating maps"
                )
            checked += 1
    return checked


def verify_limit(D: Diagram, N: Biframe, legs: dict[str, BiframeHom], corpus) -> int:
    """Every cone from every corpus object factors uniquely through the legs."""
    for _, src, dst, h in D.arrows:
        if compose_bihom(h, legs[src]).table != legs[dst].table:
            raise UniversalPropertyViolation("limit legs do not form a cone")
    names = list(D.objects)
    checked = 0
    for T in corpus:
        counts: dict = {}
        for u in homs(T, N):
            key = tuple(compose_bihom(legs[X], u).table for X in names)
            counts[key] = counts.get(key, 0) + 1
        for fam in cones(D, T):
            key = tuple(fam[X].table for X in names)
            if counts.get(key, 0) != 1:
                raise UniversalPropertyViolation(
                    f"cone from {T!r} has {counts.get(key, 0)} mediating maps"
                )
            checked += 1
    return checked


# corpus --------------------------------------------------------------------------

_CORPUS: dict = {}


def dedupe_biframes(items) -> list[Biframe]:
    reps: list[Biframe] = []
    for B in items:
        if not any(R.total.n == B.total.n and find_biframe_isomorphism(R, B) is not None
                   for R in reps):
            reps.append(B)
    return reps


def str0d_corpus(max_total: int = 8) -> list[Biframe]:
    """One str0d biframe per isomorphism class with total part of size <= max_total.

    The total part of a str0d biframe is generated by complemented elements
    and is therefore Boolean, so only the frames 2^k need searching.
    """
    hit = _CORPUS.get(max_total)
    if hit is None:
        hit = []
        k = 0
        while 1 << k <= max_total:
            for i, B in enumerate(dedupe_biframes(str0d_structures(boolean(k)))):
                hit.append(Biframe(B.total, B.part1, B.part2, f"S{B.total.n}.{i}"))
            k += 1
        _CORPUS[max_total] = hit
    return hit


# morphism classification --------------------------------------------------------


def is_categorical_mono(h: BiframeHom, corpus) -> bool:
    for T in corpus:
        seen = set()
        for g in homs(T, h.source):
            key = compose_bihom(h, g).table
            if key in seen:
                return False
            seen.add(key)
    return True


def is_categorical_epi(h: BiframeHom, corpus) -> bool:
    for T in corpus:
        seen = set()
        for g in homs(h.target, T):
            key = compose_bihom(g, h).table
            if key in seen:
                return False
            seen.add(key)
    return True


def is_categorical_extremal_epi(h: BiframeHom, corpus) -> bool:
    """Epi, and every factorisation h = m e through a corpus object with m monic has m iso."""
    if not is_categorical_epi(h, corpus):
        return False
    for C in corpus:
        for m in homs(C, h.target):
            if is_biframe_iso(m) or not is_categorical_mono(m, corpus):
                continue
            for e in homs(h.source, C):
                if compose_bihom(m, e).table == h.table:
                    return False
    return True


def is_closed_quotient(h: BiframeHom) -> bool:
    """A biframe surjection whose kernel is nabla of something."""
    if not is_biframe_surjection(h) or not is_surjective(h.h0):
        return False
    K = kernel(h.h0)
    return K == nabla(h.source.total, K.nucleus[h.source.total.bottom])


@dataclass(frozen=True)
class Classification:
    mono: bool
    dense: bool
    first_part_injective: bool
    extremal_epi: bool
    closed_quotient: bool


def classify_morphism(h: BiframeHom, corpus=None) -> Classification:
    """Categorical and structural classification, with each equivalence enforced."""
    if corpus is None:
        corpus = str0d_corpus(8)
    require_str0d(h.source)
    require_str0d(h.target)
    out = Classification(
        mono=is_categorical_mono(h, corpus),
        dense=is_dense_bihom(h),
        first_part_injective=is_injective(h.h1),
        extremal_epi=is_categorical_extremal_epi(h, corpus),
        closed_quotient=is_closed_quotient(h),
    )
    if not out.mono == out.dense == out.first_part_injective:
        raise TheoremViolation(f"mono/dense/injective disagree: {out}")
    if out.extremal_epi != out.closed_quotient:
        raise TheoremViolation(f"extremal epi and closed quotient disagree: {out}")
    return out


def closed_quotient(M: Biframe, a: int) -> Biframe:
    return closed_quotient_map(M, a).target


def closed_quotient_map(M: Biframe, a: int) -> BiframeHom:
    """M -> M / nabla_a; the result is str0d over P M / chi_*(a)."""
    require_str0d(M)
    N, q = biframe_quotient(M, nabla(M.total, a))
    require_str0d(N)
    L, _ = part_frame(M, 1)
    Q, _ = quotient(L, chi_star(M, a))
    if find_isomorphism(part_frame(N, 1)[0], Q) is None:
        raise TheoremViolation("closed quotient is not str0d over L / chi_*(a)")
    return q
