"""Exhaustive enumeration of small posets and frames up to isomorphism.

Frames are produced through Birkhoff's representation: a finite distributive
lattice is the lattice of down-sets of its poset of join-irreducibles, and
non-isomorphic posets give non-isomorphic lattices.  Posets are grown by
adding one maximal element at a time and pruned as soon as they have too
many down-sets.
"""
from __future__ import annotations

import hashlib
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from . import config
from .errors import NotLattice
from .lattice import (
    Frame,
    canonical_form,
    downset_frame,
    frame_from_down,
    generic_labels,
)
from .order import bits, canonical_order, permute_down


def count_downsets(down: tuple[int, ...], limit: int) -> int:
    """Number of down-sets, stopping early once it exceeds ``limit``."""
    n = len(down)
    count = 0

    def rec(i, s):
        nonlocal count
        if count > limit:
            return
        if i == n:
            count += 1
            return
        rec(i + 1, s)
        if down[i] & ~(1 << i) & ~s == 0:
            rec(i + 1, s | (1 << i))

    # elements are in linear-extension order, so down[i] only meets earlier indices
    rec(0, 0)
    return count


def _downsets(down):
    n = len(down)
    out = []

    def rec(i, s):
        if i == n:
            out.append(s)
            return
        rec(i + 1, s)
        if down[i] & ~(1 << i) & ~s == 0:
            rec(i + 1, s | (1 << i))

    rec(0, 0)
    return out


@lru_cache(maxsize=None)
def posets_by_size(max_points: int, max_downsets: int | None = None) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Canonical ``down`` tuples of all posets, grouped by size 0..max_points."""
    levels = [[()]]
    for k in range(max_points):
        seen = {}
        for down in levels[-1]:
            for ideal in _downsets(down):
                new = tuple(down) + (ideal | (1 << k),)
                if max_downsets is not None and count_downsets(new, max_downsets) > max_downsets:
                    continue
                code, order = canonical_order(new)
                if code not in seen:
                    seen[code] = tuple(permute_down(new, order))
        levels.append([seen[c] for c in sorted(seen)])
    return tuple(tuple(level) for level in levels)


def enumerate_posets(max_points: int) -> Iterator[tuple[int, ...]]:
    for level in posets_by_size(max_points):
        yield from level


@lru_cache(maxsize=None)
def _frames_upto(max_size: int) -> tuple[Frame, ...]:
    if max_size < 1:
        return ()
    found = {}
    for level in posets_by_size(max_size - 1, max_size):
        for down in level:
            if count_downsets(down, max_size) > max_size:
                continue
            F = downset_frame(down)
            code = canonical_form(F)
            if code not in found:
                found[code] = F
    frames = []
    for code in sorted(found, key=lambda c: (len(c), c)):
        frames.append(_canonical_copy(found[code]))
    by_size: dict[int, int] = {}
    named = []
    for F in frames:
        k = by_size.get(F.n, 0)
        by_size[F.n] = k + 1
        F.name = frame_class_name(F, k)
        named.append(F)
    return tuple(named)


def _canonical_copy(F: Frame) -> Frame:
    code, order = canonical_order(F.down)
    down = permute_down(F.down, order)
    return frame_from_down(generic_labels(F.n), down)


def enumerate_frames(max_size: int, bound: int | None = None) -> Iterator[Frame]:
    """One frame per isomorphism class with at most ``max_size`` elements.

    Output is ordered by size, then canonical code.
    """
    if bound is None:
        bound = config.FRAME_ENUM_BOUND
    config.check_bound(max_size, bound, "enumerate_frames")
    yield from _frames_upto(max_size)


def frames_of_size(size: int, bound: int | None = None) -> list[Frame]:
    return [F for F in enumerate_frames(size, bound) if F.n == size]


def frame_class_name(F: Frame, ordinal: int | None = None) -> str:
    """Readable name of the isomorphism class of ``F``.

    Chains are ``1``, ``2``, ``chainN``; Boolean frames ``2^k``; anything else
    ``L<size>.<ordinal>`` with the ordinal of its class in enumeration order.
    """
    n = F.n
    if all(F.leq(x, y) or F.leq(y, x) for x in range(n) for y in range(n)):
        return {1: "1", 2: "2"}.get(n, f"chain{n}")
    k = len(F.join_irreducibles)
    if n == 1 << k and all(c is not None for c in F.complements):
        return f"2^{k}"
    if ordinal is None and n > config.FRAME_ENUM_BOUND + 1:
        digest = hashlib.sha1(repr(canonical_form(F)).encode()).hexdigest()[:8]
        return f"L{n}#{digest}"
    if ordinal is None:
        code = canonical_form(F)
        for i, G in enumerate(frames_of_size(n, bound=max(n, config.FRAME_ENUM_BOUND))):
            if canonical_form(G) == code:
                ordinal = i
                break
    return f"L{n}.{ordinal}"


# brute-force oracle -----------------------------------------------------------


def _naturally_labelled_posets(k: int) -> Iterator[list[int]]:
    """Every strict order on range(k) with x < y only if x < y as integers.

    Each poset is isomorphic to at least one of these.
    """
    pairs = list(combinations(range(k), 2))
    for mask in range(1 << len(pairs)):
        down = [1 << i for i in range(k)]
        for bit, (x, y) in enumerate(pairs):
            if mask >> bit & 1:
                down[y] |= 1 << x
        ok = True
        for y in range(k):
            for x in bits(down[y]):
                if down[x] & ~down[y]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield down


def brute_force_frame_counts(max_size: int) -> dict[int, int]:
    """Frame counts by size from a direct search.

    Enumerate naturally labelled posets on the ``n - 2`` middle elements, add a
    bottom and a top, keep lattices that pass the triple distributivity test,
    then deduplicate by pairwise isomorphism search.
    """
    from .lattice import find_isomorphism

    counts = {}
    for n in range(1, max_size + 1):
        if n <= 2:
            counts[n] = 1
            continue
        k = n - 2
        reps: list[Frame] = []
        for mid in _naturally_labelled_posets(k):
            down = [1]
            for y in range(k):
                m = 1
                for x in bits(mid[y]):
                    m |= 1 << (x + 1)
                down.append(m)
            down.append((1 << n) - 1)
            try:
                F = frame_from_down(generic_labels(n), down, check_distributive=False)
            except NotLattice:
                continue
            if not _triple_distributive(F):
                continue
            if any(find_isomorphism(F, G) is not None for G in reps):
                continue
            reps.append(F)
        counts[n] = len(reps)
    return counts


def _triple_distributive(F: Frame) -> bool:
    m, j = F.meet, F.join
    r = range(F.n)
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x in r for y in r for z in r)
