"""Exhaustive verification suites.

Each suite returns a :class:`VerifyReport`; a violation carries a JSON
counterexample that can be fed back through ``str0d validate`` and the
relevant subcommand.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Any, Callable

from . import config
from .biframe import (
    chi_star_table,
    cong_bihom,
    compose_bihom,
    congruence_biframe,
    coreflection_chi,
    find_biframe_isomorphism,
    is_str0d,
    part_frame,
    unit,
)
from .category import (
    Diagram,
    FibreObject,
    check_fibre_morphism,
    classify_morphism,
    closed_quotient,
    colimit,
    fibre_over,
    from_fibre,
    homs,
    is_categorical_extremal_epi,
    limit,
    reflect_eta,
    second_congruence_frame,
    str0d_corpus,
    to_fibre,
    verify_colimit,
    verify_limit,
)
from .census import brute_force_frame_counts, enumerate_frames
from .clear import (
    biframe_cl,
    clear_elements_upward_closed,
    clearness_report,
    endo_map_search,
    is_congruence_frame_by_iso,
    is_congruential,
    recognize_congruence_frame,
    recognize_quotient_of_congruence_frame,
)
from .congruence import (
    brute_force_congruences,
    clear_congruence,
    clear_congruence_search,
    closure_cl,
    closure_cl_adjoint,
    cong_image,
    congruence_lattice,
    identity_congruence,
    induced_map,
    is_smooth,
    join_congruences,
    kernel,
    nabla,
    quotient,
)
from .errors import Str0dError
from .io import biframe_to_json, frame_to_json, hom_to_json, space_to_json
from .lattice import is_boolean
from .morphisms import brute_force_homs, enumerate_homs, is_dense, right_adjoint
from .skula import (
    enumerate_t0_spaces,
    find_homeomorphism,
    is_sober,
    sierpinski,
    skula,
    space_from_biframe,
)


@dataclass
class VerifyReport:
    suite: str
    instances: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0
    checks: list[str] = field(default_factory=list)
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "violations": self.violations,
            "elapsed": round(self.elapsed, 3),
            "checks": self.checks,
            "details": self.details,
        }

    def check(self, name: str, fn: Callable[[], bool], witness: Callable[[], Any]) -> bool:
        if name not in self.checks:
            self.checks.append(name)
        self.instances += 1
        try:
            ok = bool(fn())
            note = None
        except Str0dError as exc:
            ok, note = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            entry = {"check": name, "counterexample": witness()}
            if note:
                entry["error"] = note
            self.violations.append(entry)
        return ok


def _frames(n: int):
    return list(enumerate_frames(n, bound=max(n, config.FRAME_ENUM_BOUND)))


# suites ------------------------------------------------------------------------------


def suite_oracle(max_size: int = 5) -> VerifyReport:
    r = VerifyReport("oracle")
    frames = _frames(max_size)
    for L in frames:
        def same(L=L):
            fast = {C.relation() for C in congruence_lattice(L).congruences()}
            return fast == brute_force_congruences(L, bound=max_size)
        r.check("congruences match partition search", same, lambda L=L: frame_to_json(L))
    counts: dict[int, int] = {}
    for L in frames:
        counts[L.n] = counts.get(L.n, 0) + 1
    brute = brute_force_frame_counts(max_size)
    r.check("frame census matches brute force", lambda: counts == brute, lambda: {"census": counts, "brute": brute})
    small = [L for L in frames if L.n <= 4]
    for L in small:
        for M in small:
            r.check(
                "hom enumeration matches brute force",
                lambda L=L, M=M: sorted(f.table for f in enumerate_homs(L, M))
                == sorted(f.table for f in brute_force_homs(L, M)),
                lambda L=L, M=M: {"source": frame_to_json(L), "target": frame_to_json(M)},
            )
    return r


def suite_structure(max_size: int = 6) -> VerifyReport:
    r = VerifyReport("structure")
    for L in _frames(max_size):
        w = lambda L=L: frame_to_json(L)
        CF = congruence_lattice(L)
        r.check("|C L| = 2^|J(L)|", lambda: len(CF) == 2 ** len(L.join_irreducibles), w)
        r.check("C L is Boolean", lambda: is_boolean(CF.lattice), w)
        r.check(
            "heyting residuation",
            lambda L=L: all(
                L.leq(L.meet[z][x], y) == L.leq(z, L.heyting[x][y])
                for x in range(L.n) for y in range(L.n) for z in range(L.n)
            ),
            w,
        )
        r.check(
            "every element is a join of join-irreducibles",
            lambda L=L: all(
                L.join_all(j for j in L.join_irreducibles if L.leq(j, x)) == x for x in range(L.n)
            ),
            w,
        )
        r.check("congruence biframe is str0d", lambda L=L: is_str0d(congruence_biframe(L)), w)
        r.check(
            "clear congruence closed form matches search",
            lambda L=L, CF=CF: all(clear_congruence(L, a) == clear_congruence_search(CF, a) for a in range(L.n)),
            w,
        )
        r.check(
            "closure routes agree",
            lambda CF=CF: all(closure_cl(CF, C) == closure_cl_adjoint(CF, C) for C in CF.congruences()),
            w,
        )
    return r


def suite_lemmas(max_size: int = 4) -> VerifyReport:
    r = VerifyReport("lemmas-1.x")
    frames = _frames(max_size)
    for L in frames:
        CL = congruence_lattice(L)
        for M in frames:
            CM = congruence_lattice(M)
            for f in enumerate_homs(L, M):
                for C in CL.congruences():
                    image = cong_image(f, C)
                    for D in CM.congruences():
                        r.check(
                            "induced map exists iff image below",
                            lambda f=f, C=C, D=D, image=image: (induced_map(f, C, D) is not None) == (image <= D),
                            lambda f=f, C=C, D=D: {"hom": hom_to_json(f), "C": C.nucleus, "D": D.nucleus},
                        )
                    r.check(
                        "image of closure below closure of image",
                        lambda f=f, C=C, image=image: cong_image(f, closure_cl(CL, C)) <= closure_cl(CM, image),
                        lambda f=f, C=C: {"hom": hom_to_json(f), "C": C.nucleus},
                    )
        for C in CL.congruences():
            Q, q = quotient(L, C)
            qs = right_adjoint(q)
            for a in range(L.n):
                r.check(
                    "closure of join with closed",
                    lambda C=C, a=a, q=q, qs=qs: closure_cl_adjoint(CL, join_congruences(C, nabla(L, a)))
                    == nabla(L, qs.table[q.table[a]]),
                    lambda L=L, C=C, a=a: {"frame": frame_to_json(L), "C": C.nucleus, "a": L.labels[a]},
                )
            for D in CL.congruences():
                if C <= D:
                    r.check(
                        "closure below C iff quotient map dense",
                        lambda C=C, D=D: (closure_cl(CL, D) <= C)
                        == is_dense(induced_map(_identity(L), C, D)),
                        lambda L=L, C=C, D=D: {"frame": frame_to_json(L), "C": C.nucleus, "D": D.nucleus},
                    )
    return r


def _identity(L):
    from .morphisms import identity

    return identity(L)


def suite_adjunction(max_size: int = 4, max_total: int = 8) -> VerifyReport:
    r = VerifyReport("adjunction")
    corpus = str0d_corpus(max_total)
    for L in _frames(max_size):
        CB = congruence_biframe(L)
        for M in corpus:
            PM, _ = part_frame(M, 1)
            chi = coreflection_chi(M)
            w = lambda L=L, M=M: {"frame": frame_to_json(L), "biframe": biframe_to_json(M)}

            def bijection(L=L, M=M, PM=PM, chi=chi, CB=CB):
                images = [compose_bihom(chi, cong_bihom(f)).table for f in enumerate_homs(L, PM)]
                direct = sorted(h.table for h in homs(CB, M))
                return len(set(images)) == len(images) and sorted(images) == direct

            r.check("hom-set bijection", bijection, w)
            r.check(
                "triangle on the first part",
                lambda M=M, PM=PM, chi=chi: tuple(chi.h1.table[k] for k in unit(PM).table)
                == tuple(range(PM.n)),
                w,
            )
        r.check(
            "triangle on the congruence biframe",
            lambda L=L, CB=CB: compose_bihom(coreflection_chi(CB), cong_bihom(unit(L))).table
            == tuple(range(CB.total.n)),
            lambda L=L: frame_to_json(L),
        )
    return r


def suite_fibres(max_size: int = 6, max_total: int = 16) -> VerifyReport:
    r = VerifyReport("fibres")
    frames = _frames(max_size)
    for L in frames:
        def singleton(L=L):
            fib = fibre_over(L)
            return len(fib) == 1 and find_biframe_isomorphism(fib[0], congruence_biframe(L)) is not None
        r.check("fibre is the congruence biframe alone", singleton, lambda L=L: frame_to_json(L))
    for M in str0d_corpus(max_total):
        w = lambda M=M: biframe_to_json(M)
        r.check("chi is an isomorphism", lambda M=M: sorted(coreflection_chi(M).table) == list(range(M.total.n)), w)
        r.check(
            "fibre round trip",
            lambda M=M: find_biframe_isomorphism(from_fibre(to_fibre(M)), M) is not None,
            w,
        )
    small = [L for L in frames if L.n <= min(max_size, 4)]
    targets = [L for L in frames if L.n <= 3]
    for L in small:
        C2 = second_congruence_frame(L)
        for C in C2.congruences():
            O = FibreObject(L, C)
            w = lambda L=L, C=C: {"frame": frame_to_json(L), "cong2": C.nucleus}

            def reflection(O=O):
                target, eta = reflect_eta(O)
                A = congruence_lattice(O.base).congruence(O.cong2.nucleus[0])
                for M in targets:
                    D = identity_congruence(congruence_lattice(M).lattice)
                    OM = FibreObject(M, D)
                    for f in enumerate_homs(O.base, M):
                        if check_fibre_morphism(f, O, OM) is None:
                            continue
                        g = induced_map(f, A, identity_congruence(M))
                        if g is None or check_fibre_morphism(g, target, OM) is None:
                            return False
                return target.is_str0d and eta.final

            r.check("reflection is final and universal", reflection, w)
    return r


def _shapes(objects):
    for A, B in combinations_with_replacement(objects, 2):
        yield Diagram({"X": A, "Y": B})
    for A in objects:
        for B in objects:
            hs = homs(A, B)
            for h in hs:
                yield Diagram({"X": A, "Y": B}, [("u", "X", "Y", h)])
            for f, g in combinations(hs, 2):
                yield Diagram({"X": A, "Y": B}, [("u", "X", "Y", f), ("v", "X", "Y", g)])


def suite_category(max_size: int = 4, max_total: int = 8) -> VerifyReport:
    r = VerifyReport("category")
    corpus = str0d_corpus(max_total)
    objects = [M for L in _frames(max_size) for M in fibre_over(L)]
    for D in _shapes(objects):
        w = lambda D=D: _diagram_json(D)

        def colim_ok(D=D):
            N, legs = colimit(D)
            verify_colimit(D, N, legs, corpus)
            return True

        def lim_ok(D=D):
            N, legs = limit(D)
            verify_limit(D, N, legs, corpus)
            return True

        r.check("colimit universal property", colim_ok, w)
        r.check("limit universal property", lim_ok, w)
    for A in corpus:
        for B in corpus:
            for h in homs(A, B):
                r.check(
                    "mono/epi classification",
                    lambda h=h: classify_morphism(h, corpus) is not None,
                    lambda h=h: {"source": biframe_to_json(h.source), "target": biframe_to_json(h.target),
                                 "map": list(h.table)},
                )
    for M in corpus:
        def bijection(M=M):
            kernels = set()
            for T in corpus:
                for h in homs(M, T):
                    if is_categorical_extremal_epi(h, corpus):
                        kernels.add(kernel(h.h0))
            closed = {nabla(M.total, a) for a in range(M.total.n)}
            return kernels == closed and len(closed) == M.total.n
        r.check("extremal quotients match total elements", bijection, lambda M=M: biframe_to_json(M))
        r.check(
            "closed quotients are str0d",
            lambda M=M: all(is_str0d(closed_quotient(M, a)) for a in range(M.total.n)),
            lambda M=M: biframe_to_json(M),
        )
    return r


def _diagram_json(D: Diagram):
    from .io import diagram_to_json

    return diagram_to_json(D)


def suite_clear(max_total: int = 16) -> VerifyReport:
    r = VerifyReport("clear")
    for M in str0d_corpus(max_total):
        w = lambda M=M: biframe_to_json(M)
        L, emb = part_frame(M, 1)
        CF = congruence_lattice(L)
        star = chi_star_table(M)
        r.check(
            "four clearness conditions agree",
            lambda M=M: all(clearness_report(M, m) is not None for m in range(M.total.n)),
            w,
        )
        r.check("clear elements are upward closed", lambda M=M: clear_elements_upward_closed(M), w)
        r.check(
            "chi_* commutes with closure",
            lambda M=M, CF=CF, star=star: all(
                star[biframe_cl(M, m)] == CF.index(closure_cl(CF, CF.congruence(star[m])))
                for m in range(M.total.n)
            ),
            w,
        )
        r.check(
            "chi_* preserves first parts",
            lambda CF=CF, star=star, emb=emb: all(star[e] == CF.nabla_table[i] for i, e in enumerate(emb)),
            w,
        )
        r.check(
            "smooth congruences are distinguished",
            lambda CF=CF, star=star: {k for k in range(len(CF)) if is_smooth(CF, CF.congruence(k))} <= set(star),
            w,
        )
        r.check("congruential iff all clarifiable", lambda M=M: is_congruential(M), w)
    return r


def suite_skula(max_points: int = 4) -> VerifyReport:
    r = VerifyReport("skula")
    for X in enumerate_t0_spaces(max_points):
        w = lambda X=X: space_to_json(X)
        r.check("Skula biframe is str0d", lambda X=X: is_str0d(skula(X)), w)
        r.check(
            "round trip is a homeomorphism",
            lambda X=X: find_homeomorphism(X, space_from_biframe(skula(X))) is not None,
            w,
        )
        r.check("sober by both routes", lambda X=X: is_sober(X), w)
        r.check("Skula biframe is congruential", lambda X=X: is_congruential(skula(X)), w)
    r.check(
        "Sierpinski Skula biframe is C(chain3)",
        lambda: find_biframe_isomorphism(skula(sierpinski()), congruence_biframe(_chain3())) is not None,
        lambda: space_to_json(sierpinski()),
    )
    return r


def _chain3():
    from .lattice import chain

    return chain(3)


def suite_recognizer(max_size: int = 8) -> VerifyReport:
    r = VerifyReport("recognizer")
    for M in _frames(max_size):
        w = lambda M=M: frame_to_json(M)
        full = recognize_congruence_frame(M)
        r.check("recognizer agrees with iso matching", lambda M=M, full=full: bool(full) == is_congruence_frame_by_iso(M), w)
        if M.n <= 6:
            part = recognize_quotient_of_congruence_frame(M)
            r.check(
                "subframe search agrees with endo-map search",
                lambda M=M, full=full: {x.fixed_points for x in full} == endo_map_search(M, True),
                w,
            )
            r.check(
                "quotient variant agrees with endo-map search",
                lambda M=M, part=part: {x.fixed_points for x in part} == endo_map_search(M, False),
                w,
            )
        r.details.append(f"{M.name}: {'YES' if full else 'NO'}")
    return r


SUITES = {
    "oracle": suite_oracle,
    "structure": suite_structure,
    "lemmas-1.x": suite_lemmas,
    "adjunction": suite_adjunction,
    "fibres": suite_fibres,
    "category": suite_category,
    "clear": suite_clear,
    "skula": suite_skula,
    "recognizer": suite_recognizer,
}


def run_suite(name: str, max_size: int | None = None) -> VerifyReport:
    fn = SUITES[name]
    start = time.perf_counter()
    report = fn() if max_size is None else fn(max_size)
    report.elapsed = time.perf_counter() - start
    return report


def run(names, max_size: int | None = None) -> list[VerifyReport]:
    if names == "all" or names == ["all"]:
        names = list(SUITES)
    elif isinstance(names, str):
        names = [names]
    return [run_suite(n, max_size) for n in names]
