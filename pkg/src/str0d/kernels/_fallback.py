"""Pure-Python table kernels.

Every kernel takes flat row-major tables (``t[x * n + y]``) and assumes the
elements are indexed along a linear extension of the order, so that the
least element of an up-set is its lowest index and the greatest element of a
down-set its highest.  Sets are Python ints used as bitsets.
"""


def _rows(n, table):
    return [table[i * n:(i + 1) * n] for i in range(n)]


def _masks(n, leq):
    up = [0] * n
    down = [0] * n
    for x in range(n):
        row = x * n
        for y in range(n):
            if leq[row + y]:
                up[x] |= 1 << y
                down[y] |= 1 << x
    return up, down


def lattice_tables(n, leq):
    """Return flat (meet, join) tables; a missing bound is stored as -1."""
    up, down = _masks(n, leq)
    meet = [-1] * (n * n)
    join = [-1] * (n * n)
    for x in range(n):
        ux, dx = up[x], down[x]
        for y in range(x, n):
            u = ux & up[y]
            if u:
                z = (u & -u).bit_length() - 1
                if up[z] == u:
                    join[x * n + y] = join[y * n + x] = z
            d = dx & down[y]
            if d:
                z = d.bit_length() - 1
                if down[z] == d:
                    meet[x * n + y] = meet[y * n + x] = z
    return meet, join


def heyting_table(n, leq, meet):
    """x -> y as the largest z with z ^ x <= y (distributive input only)."""
    up, _ = _masks(n, leq)
    m = _rows(n, meet)
    out = [0] * (n * n)
    for x in range(n):
        mx = [m[z][x] for z in range(n)]
        for y in range(n):
            # scanning downward, the first hit is the maximum of a join-closed down-set
            for z in range(n - 1, -1, -1):
                if up[mx[z]] >> y & 1:
                    out[x * n + y] = z
                    break
    return out


def _meet_close(mask, m):
    elems = []
    x = mask
    while x:
        low = x & -x
        elems.append(low.bit_length() - 1)
        x ^= low
    frontier = list(elems)
    while frontier:
        fresh = []
        for a in frontier:
            row = m[a]
            for b in elems:
                c = row[b]
                if not mask >> c & 1:
                    mask |= 1 << c
                    fresh.append(c)
        elems.extend(fresh)
        frontier = fresh
    return mask


def nucleus_images(n, leq, meet, heyting, top):
    """All nucleus tables of the frame, via lectic enumeration of fixpoint sets.

    A fixpoint set is closed under meets and under ``x -> s``; the closure of
    a set is the meet-closure of every ``x -> s`` with ``s`` in the set.
    """
    up, _ = _masks(n, leq)
    m = _rows(n, meet)
    h = _rows(n, heyting)
    cols = [[h[x][s] for x in range(n)] for s in range(n)]

    def close(mask):
        mask |= 1 << top
        gens = 0
        x = mask
        while x:
            low = x & -x
            for v in cols[low.bit_length() - 1]:
                gens |= 1 << v
            x ^= low
        return _meet_close(gens, m)

    found = []
    current = close(0)
    full = (1 << n) - 1
    while True:
        found.append(current)
        if current == full:
            break
        a = current
        nxt = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                a &= ~bit
                continue
            b = close(a | bit)
            if (b & ~a) & (bit - 1) == 0:
                nxt = b
                break
        if nxt is None:
            break
        current = nxt

    tables = []
    for s in found:
        table = []
        for x in range(n):
            u = s & up[x]
            table.append((u & -u).bit_length() - 1)
        tables.append(table)
    return tables


def generate_congruence(n, meet, join, pairs):
    """Nucleus of the least congruence containing ``pairs``.

    Union-find over translations: each successful merge of x and y enqueues
    (x ^ z, y ^ z) and (x v z, y v z) for every z.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    m = _rows(n, meet)
    j = _rows(n, join)
    work = list(pairs)
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[rx] = ry
        mx, my, jx, jy = m[x], m[y], j[x], j[y]
        for z in range(n):
            work.append((mx[z], my[z]))
            work.append((jx[z], jy[z]))
    top_of = {}
    for x in range(n):
        r = find(x)
        if top_of.get(r, -1) < x:
            top_of[r] = x
    return [top_of[find(x)] for x in range(n)]


def nucleus_join(n, j1, j2):
    out = [0] * n
    for x in range(n):
        y = x
        while True:
            z = j1[j2[y]]
            if z == y:
                break
            y = z
        out[x] = y
    return out


def hom_violation(ns, meet_s, join_s, meet_t, join_t, nt, table):
    """First pair (x, y) where ``table`` fails to preserve a meet or join.

    Returns ``-1`` when none fails, else ``2 * (x * ns + y) + kind`` with
    kind 0 for meets and 1 for joins.
    """
    for x in range(ns):
        fx = table[x]
        row = x * ns
        trow = fx * nt
        for y in range(x + 1, ns):
            fy = table[y]
            if table[meet_s[row + y]] != meet_t[trow + fy]:
                return 2 * (row + y)
            if table[join_s[row + y]] != join_t[trow + fy]:
                return 2 * (row + y) + 1
    return -1
