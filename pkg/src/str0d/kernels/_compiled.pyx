# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; same contracts as ``_fallback``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy


def lattice_tables(int n, const unsigned char[:] leq):
    cdef list meet = [-1] * (n * n)
    cdef list join = [-1] * (n * n)
    cdef int x, y, z, u
    cdef bint ok
    for x in range(n):
        for y in range(x, n):
            # least upper bound: first common upper bound in index order
            z = y
            while z < n and not (leq[x * n + z] and leq[y * n + z]):
                z += 1
            if z < n:
                ok = True
                for u in range(z + 1, n):
                    if leq[x * n + u] and leq[y * n + u] and not leq[z * n + u]:
                        ok = False
                        break
                if ok:
                    join[x * n + y] = z
                    join[y * n + x] = z
            z = x
            while z >= 0 and not (leq[z * n + x] and leq[z * n + y]):
                z -= 1
            if z >= 0:
                ok = True
                for u in range(z):
                    if leq[u * n + x] and leq[u * n + y] and not leq[u * n + z]:
                        ok = False
                        break
                if ok:
                    meet[x * n + y] = z
                    meet[y * n + x] = z
    return meet, join


def heyting_table(int n, const unsigned char[:] leq, const int[:] meet):
    cdef list out = [0] * (n * n)
    cdef int x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n - 1, -1, -1):
                if leq[meet[z * n + x] * n + y]:
                    out[x * n + y] = z
                    break
    return out


cdef void _close(int n, int top, const int[:] meet, const int[:] heyting,
                 const unsigned char* seed, unsigned char* out, int* stack) nogil:
    cdef int s, x, v, a, b, c, sp = 0, count = 0
    memset(out, 0, n)
    for s in range(n):
        if seed[s] or s == top:
            for x in range(n):
                v = heyting[x * n + s]
                if not out[v]:
                    out[v] = 1
                    stack[sp] = v
                    sp += 1
    # stack[0:sp] holds every member; meet-close by sweeping new members
    a = 0
    while a < sp:
        for b in range(sp):
            c = meet[stack[a] * n + stack[b]]
            if not out[c]:
                out[c] = 1
                stack[sp] = c
                sp += 1
        a += 1


def nucleus_images(int n, const unsigned char[:] leq, const int[:] meet,
                   const int[:] heyting, int top):
    cdef unsigned char* cur = <unsigned char*> malloc(n)
    cdef unsigned char* a = <unsigned char*> malloc(n)
    cdef unsigned char* b = <unsigned char*> malloc(n)
    cdef int* stack = <int*> malloc(n * sizeof(int))
    cdef int i, k, x, y
    cdef bint good, full, advanced
    cdef list found = []
    cdef list table
    try:
        memset(a, 0, n)
        _close(n, top, meet, heyting, a, cur, stack)
        while True:
            found.append(bytes(cur[:n]))
            full = True
            for i in range(n):
                if not cur[i]:
                    full = False
                    break
            if full:
                break
            memcpy(a, cur, n)
            advanced = False
            for i in range(n - 1, -1, -1):
                if a[i]:
                    a[i] = 0
                    continue
                a[i] = 1
                _close(n, top, meet, heyting, a, b, stack)
                a[i] = 0
                good = True
                for k in range(i):
                    if b[k] and not a[k]:
                        good = False
                        break
                if good:
                    memcpy(cur, b, n)
                    advanced = True
                    break
            if not advanced:
                break
    finally:
        free(cur)
        free(a)
        free(b)
        free(stack)

    cdef list tables = []
    cdef bytes s
    for s in found:
        table = [0] * n
        for x in range(n):
            for y in range(n):
                if s[y] and leq[x * n + y]:
                    table[x] = y
                    break
        tables.append(table)
    return tables


def generate_congruence(int n, const int[:] meet, const int[:] join, pairs):
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int x, y, z, rx, ry, r
    cdef list work = [tuple(p) for p in pairs]
    cdef list out = [0] * n
    cdef dict top_of = {}
    try:
        for x in range(n):
            parent[x] = x
        while work:
            x, y = work.pop()
            rx = x
            while parent[rx] != rx:
                parent[rx] = parent[parent[rx]]
                rx = parent[rx]
            ry = y
            while parent[ry] != ry:
                parent[ry] = parent[parent[ry]]
                ry = parent[ry]
            if rx == ry:
                continue
            parent[rx] = ry
            for z in range(n):
                work.append((meet[x * n + z], meet[y * n + z]))
                work.append((join[x * n + z], join[y * n + z]))
        for x in range(n):
            r = x
            while parent[r] != r:
                r = parent[r]
            if top_of.get(r, -1) < x:
                top_of[r] = x
        for x in range(n):
            r = x
            while parent[r] != r:
                r = parent[r]
            out[x] = top_of[r]
    finally:
        free(parent)
    return out


def nucleus_join(int n, const int[:] j1, const int[:] j2):
    cdef list out = [0] * n
    cdef int x, y, z
    for x in range(n):
        y = x
        while True:
            z = j1[j2[y]]
            if z == y:
                break
            y = z
        out[x] = y
    return out


def hom_violation(int ns, const int[:] meet_s, const int[:] join_s,
                  const int[:] meet_t, const int[:] join_t, int nt, const int[:] table):
    cdef int x, y, fx, fy, row, trow
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
