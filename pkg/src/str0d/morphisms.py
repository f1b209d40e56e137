"""Frame homomorphisms, right adjoints, density and subframe generation."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Iterator, Mapping

from . import kernels
from .errors import NotHomomorphism
from .lattice import Frame
from .order import bits


@dataclass(frozen=True)
class MonotoneMap:
    source: Frame
    target: Frame
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class FrameHom:
    """A map preserving 0, 1 and binary meets and joins.

    Construct through :func:`validate_hom` unless the table is known good.
    """

    source: Frame
    target: Frame
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        pairs = ", ".join(
            f"{self.source.labels[x]}->{self.target.labels[y]}" for x, y in enumerate(self.table)
        )
        return f"FrameHom({self.source!r} -> {self.target!r}: {pairs})"

    def image(self) -> frozenset[int]:
        return frozenset(self.table)


def hom_violation(source: Frame, target: Frame, table) -> tuple[str, tuple] | None:
    if len(table) != source.n or any(not 0 <= y < target.n for y in table):
        return ("totality", ())
    if table[source.bottom] != target.bottom:
        return ("bottom", (source.labels[source.bottom],))
    if table[source.top] != target.top:
        return ("top", (source.labels[source.top],))
    code = kernels.hom_violation(
        source.n, source.meet_flat, source.join_flat,
        target.meet_flat, target.join_flat, target.n, kernels.int_array(table),
    )
    if code < 0:
        return None
    pair, kind = divmod(code, 2)
    x, y = divmod(pair, source.n)
    return ("join" if kind else "meet", (source.labels[x], source.labels[y]))


def validate_hom(source: Frame, target: Frame, table) -> FrameHom:
    table = tuple(table)
    bad = hom_violation(source, target, table)
    if bad is not None:
        raise NotHomomorphism(*bad)
    return FrameHom(source, target, table)


def hom_from_labels(source: Frame, target: Frame, mapping: Mapping[str, str]) -> FrameHom:
    try:
        table = [target.index[str(mapping[label])] for label in source.labels]
    except KeyError as exc:
        raise NotHomomorphism("totality", (exc.args[0],)) from None
    return validate_hom(source, target, table)


def is_hom(source: Frame, target: Frame, table) -> bool:
    return hom_violation(source, target, tuple(table)) is None


def identity(F: Frame) -> FrameHom:
    return FrameHom(F, F, tuple(range(F.n)))


def compose(g: FrameHom, f: FrameHom) -> FrameHom:
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    return FrameHom(f.source, g.target, tuple(g.table[y] for y in f.table))


def right_adjoint(f: FrameHom) -> MonotoneMap:
    """f_*(b) = join of every a with f(a) <= b."""
    L, M = f.source, f.target
    table = []
    for b in range(M.n):
        acc = L.bottom
        for a in range(L.n):
            if M.leq(f.table[a], b):
                acc = L.join[acc][a]
        table.append(acc)
    return MonotoneMap(M, L, tuple(table))


def is_dense(f: FrameHom) -> bool:
    bot = f.target.bottom
    return all(x == f.source.bottom for x in range(f.source.n) if f.table[x] == bot)


def is_codense(f: FrameHom) -> bool:
    top = f.target.top
    return all(x == f.source.top for x in range(f.source.n) if f.table[x] == top)


def is_injective(f: FrameHom) -> bool:
    return len(set(f.table)) == f.source.n


def is_surjective(f: FrameHom) -> bool:
    return len(set(f.table)) == f.target.n


def is_iso(f: FrameHom) -> bool:
    return is_injective(f) and is_surjective(f)


def inverse(f: FrameHom) -> FrameHom:
    inv = [0] * f.source.n
    for x, y in enumerate(f.table):
        inv[y] = x
    return FrameHom(f.target, f.source, tuple(inv))


def is_zero_dimensional(F: Frame) -> bool:
    """Every element is a join of complemented elements."""
    comp = [x for x in range(F.n) if F.complements[x] is not None]
    return all(F.join_all(c for c in comp if F.leq(c, x)) == x for x in range(F.n))


def subframe_generated(F: Frame, S: Iterable[int]) -> frozenset[int]:
    """Least subset containing S, 0 and 1 closed under binary meet and join."""
    mask = 1 << F.bottom | 1 << F.top
    for s in S:
        mask |= 1 << s
    elems = list(bits(mask))
    frontier = list(elems)
    while frontier:
        fresh = []
        for a in frontier:
            mrow, jrow = F.meet[a], F.join[a]
            for b in elems:
                for c in (mrow[b], jrow[b]):
                    if not mask >> c & 1:
                        mask |= 1 << c
                        fresh.append(c)
        elems.extend(fresh)
        frontier = fresh
    return frozenset(bits(mask))


def is_subframe(F: Frame, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if F.bottom not in S or F.top not in S:
        return False
    return all(F.meet[a][b] in S and F.join[a][b] in S for a in S for b in S)


# enumeration ------------------------------------------------------------------


def _irreducible_order(F: Frame) -> list[int]:
    return sorted(F.join_irreducibles)


def enumerate_homs(L: Frame, M: Frame) -> Iterator[FrameHom]:
    """All frame homomorphisms L -> M.

    A hom is fixed by a monotone map phi from the join-irreducibles of M to
    those of L, through f(x) = join of {k in J(M) : phi(k) <= x}.  Monotone maps
    are enumerated by backtracking and each resulting table is re-validated.
    """
    JL = _irreducible_order(L)
    JM = _irreducible_order(M)
    if not JL and JM:
        return
    assign: dict[int, int] = {}

    def rec(i):
        if i == len(JM):
            table = []
            for x in range(L.n):
                table.append(M.join_all(k for k in JM if L.leq(assign[k], x)))
            if is_hom(L, M, table):
                yield FrameHom(L, M, tuple(table))
            return
        k = JM[i]
        for j in JL:
            ok = True
            for k2, j2 in assign.items():
                if M.leq(k2, k) and not L.leq(j2, j):
                    ok = False
                    break
                if M.leq(k, k2) and not L.leq(j, j2):
                    ok = False
                    break
            if ok:
                assign[k] = j
                yield from rec(i + 1)
                del assign[k]

    yield from rec(0)


def brute_force_homs(L: Frame, M: Frame) -> list[FrameHom]:
    """Every total map L -> M that validates; independent of :func:`enumerate_homs`."""
    out = []
    for table in cartesian(range(M.n), repeat=L.n):
        if is_hom(L, M, table):
            out.append(FrameHom(L, M, tuple(table)))
    return out
