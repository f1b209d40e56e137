"""Order-theoretic helpers on bitmask encodings.

A finite order on ``range(n)`` is passed around as ``down``: ``down[x]`` is
the bitmask of elements below or equal to ``x``.
"""
from __future__ import annotations

from typing import Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def up_from_down(down: Sequence[int]) -> list[int]:
    up = [0] * len(down)
    for y, d in enumerate(down):
        for x in bits(d):
            up[x] |= 1 << y
    return up


def reflexive_transitive_closure(n: int, pairs) -> list[int]:
    """``down`` masks of the reflexive-transitive closure of ``x <= y`` pairs."""
    down = [1 << x for x in range(n)]
    for x, y in pairs:
        down[y] |= 1 << x
    # Warshall on bitsets
    for k in range(n):
        dk = down[k]
        bit = 1 << k
        for y in range(n):
            if down[y] & bit:
                down[y] |= dk
    return down


def is_antisymmetric(down: Sequence[int]) -> tuple[int, int] | None:
    for y, d in enumerate(down):
        for x in bits(d):
            if x != y and down[x] >> y & 1:
                return (x, y)
    return None


def linear_extension(down: Sequence[int]) -> list[int]:
    """Stable topological order: repeatedly take the lowest ready index."""
    n = len(down)
    placed = 0
    order = []
    remaining = list(range(n))
    while remaining:
        for i, x in enumerate(remaining):
            if down[x] & ~(1 << x) & ~placed == 0:
                order.append(x)
                placed |= 1 << x
                del remaining[i]
                break
        else:
            raise ValueError("relation has a cycle")
    return order


def permute_down(down: Sequence[int], order: Sequence[int]) -> list[int]:
    """Re-index so that new position ``i`` holds old element ``order[i]``."""
    pos = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        m = 0
        for x in bits(down[old]):
            m |= 1 << pos[x]
        out.append(m)
    return out


def heights(down: Sequence[int]) -> list[int]:
    order = linear_extension(down)
    h = [0] * len(down)
    for x in order:
        below = down[x] & ~(1 << x)
        h[x] = 1 + max((h[y] for y in bits(below)), default=-1)
    return h


def invariants(down: Sequence[int], colors: Sequence | None = None) -> list[tuple]:
    up = up_from_down(down)
    h = heights(down)
    out = []
    for x in range(len(down)):
        key = (h[x], popcount(down[x]), popcount(up[x]))
        if colors is not None:
            key += (colors[x],)
        out.append(key)
    return out


def canonical_order(down: Sequence[int], colors: Sequence | None = None) -> tuple[tuple, list[int]]:
    """Canonical code and the ordering realising it.

    Among all linear extensions, pick the one whose sequence of
    ``(invariant, down-mask in new positions)`` is lexicographically least.
    Ties are explored by branching, so the code is an isomorphism invariant.
    """
    n = len(down)
    inv = invariants(down, colors)
    best: list = [None, None]

    def rec(order, placed, pos, code):
        k = len(order)
        if k == n:
            if best[0] is None or code < best[0]:
                best[0] = list(code)
                best[1] = list(order)
            return
        cands = []
        for x in range(n):
            if placed >> x & 1:
                continue
            if down[x] & ~(1 << x) & ~placed:
                continue
            m = 1 << k
            for y in bits(down[x] & ~(1 << x)):
                m |= 1 << pos[y]
            cands.append(((inv[x], m), x))
        low = min(c[0] for c in cands)
        if best[0] is not None:
            prefix = best[0][:k]
            if code[:k] == prefix and low > best[0][k]:
                return
        for key, x in cands:
            if key != low:
                continue
            pos[x] = k
            order.append(x)
            code.append(key)
            if best[0] is None or code <= best[0][: k + 1]:
                rec(order, placed | (1 << x), pos, code)
            code.pop()
            order.pop()
            del pos[x]

    rec([], 0, {}, [])
    return tuple(best[0]), best[1]


def find_order_isomorphism(
    down_a: Sequence[int],
    down_b: Sequence[int],
    colors_a: Sequence | None = None,
    colors_b: Sequence | None = None,
) -> list[int] | None:
    """An order isomorphism a -> b (respecting colours), or ``None``.

    Invariants (height, down/up degree, colour) prune the candidates and
    backtracking checks the order relation against everything already mapped.
    """
    n = len(down_a)
    if n != len(down_b):
        return None
    inv_a = invariants(down_a, colors_a)
    inv_b = invariants(down_b, colors_b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    up_a = up_from_down(down_a)
    up_b = up_from_down(down_b)
    order = linear_extension(down_a)
    image = [-1] * n
    used = 0

    def consistent(x, y):
        for x2 in range(n):
            y2 = image[x2]
            if y2 < 0:
                continue
            if bool(down_a[x] >> x2 & 1) != bool(down_b[y] >> y2 & 1):
                return False
            if bool(up_a[x] >> x2 & 1) != bool(up_b[y] >> y2 & 1):
                return False
        return True

    def rec(k):
        nonlocal used
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if used >> y & 1 or inv_b[y] != inv_a[x]:
                continue
            if not consistent(x, y):
                continue
            image[x] = y
            used |= 1 << y
            if rec(k + 1):
                return True
            image[x] = -1
            used &= ~(1 << y)
        return False

    return list(image) if rec(0) else None
