# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels. Same contract as ``_kernels_py``; n <= 62."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"

cdef int MAXN = 62


cdef int _components_in(const u64* adj, u64 s) nogil:
    cdef int count = 0
    cdef u64 rem = s, low, comp, frontier, nxt, f
    while rem:
        low = rem & (~rem + 1)
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                nxt |= adj[__builtin_ctzll(f)]
                f &= f - 1
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        rem &= ~comp
        count += 1
    return count


cdef u64* _load_adj(adj, int n) except NULL:
    if n > MAXN:
        raise ValueError(f"bitmask kernels support at most {MAXN} vertices")
    cdef u64* a = <u64*>malloc((n + 1) * sizeof(u64))
    if a == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        a[i] = <u64>adj[i]
    return a


def mono_component_count(adj, int n, mask):
    cdef u64* a = _load_adj(adj, n)
    cdef u64 full = (<u64>1 << n) - 1 if n > 0 else 0
    cdef u64 m = <u64>mask & full
    cdef int c
    try:
        c = _components_in(a, m) + _components_in(a, ~m & full)
    finally:
        free(a)
    return c


def min_coloring_cost(adj, int n, forced1, forced2):
    if n == 0:
        return 0, 0
    cdef u64* a = _load_adj(adj, n)
    cdef u64 full = (<u64>1 << n) - 1
    cdef u64 f1 = <u64>forced1, f2 = <u64>forced2
    if f1 == 0 and f2 == 0:
        f1 = 1
    cdef u64 fr = full & ~f1 & ~f2
    cdef u64 sub = 0, mask, best_mask = 0
    cdef int best = n + 1, cost
    try:
        with nogil:
            while True:
                mask = f2 | sub
                cost = n - _components_in(a, mask) - _components_in(a, ~mask & full)
                if cost < best:
                    best = cost
                    best_mask = mask
                    if cost == 0:
                        break
                if sub == fr:
                    break
                sub = (sub - fr) & fr
    finally:
        free(a)
    return best, best_mask


cdef int _cfind(int* comp, int a) nogil:
    while comp[a] != a:
        comp[a] = comp[comp[a]]
        a = comp[a]
    return a


cdef bint _quotient_bipartite(int n, int m, const int* eu, const int* ev,
                              const int* chosen, int size, bint contract,
                              int* comp, int* parent, int* parity, char* skip) nogil:
    cdef int i, a, b, ra, rb, pa, pb
    for i in range(n):
        comp[i] = i
        parent[i] = i
        parity[i] = 0
    for i in range(m):
        skip[i] = 0
    for i in range(size):
        skip[chosen[i]] = 1
        if contract:
            a = _cfind(comp, eu[chosen[i]])
            b = _cfind(comp, ev[chosen[i]])
            if a != b:
                if a < b:
                    comp[b] = a
                else:
                    comp[a] = b
    for i in range(m):
        if skip[i]:
            continue
        a = _cfind(comp, eu[i])
        b = _cfind(comp, ev[i])
        if a == b:
            continue
        pa = 0
        while parent[a] != a:
            pa ^= parity[a]
            a = parent[a]
        pb = 0
        while parent[b] != b:
            pb ^= parity[b]
            b = parent[b]
        if a == b:
            if pa == pb:
                return False
        else:
            parent[b] = a
            parity[b] = pa ^ pb ^ 1
    return True


cdef object _min_subset(int n, eu_list, ev_list, int k, bint contract):
    cdef int m = len(eu_list)
    cdef int* eu = <int*>malloc((m + 1) * sizeof(int))
    cdef int* ev = <int*>malloc((m + 1) * sizeof(int))
    cdef int* chosen = <int*>malloc((m + 1) * sizeof(int))
    cdef int* comp = <int*>malloc((n + 1) * sizeof(int))
    cdef int* parent = <int*>malloc((n + 1) * sizeof(int))
    cdef int* parity = <int*>malloc((n + 1) * sizeof(int))
    cdef char* skip = <char*>malloc((m + 1) * sizeof(char))
    cdef int i, size, j, top
    cdef bint found = False
    try:
        if not (eu and ev and chosen and comp and parent and parity and skip):
            raise MemoryError()
        for i in range(m):
            eu[i] = eu_list[i]
            ev[i] = ev_list[i]
        top = k if k < m else m
        with nogil:
            for size in range(top + 1):
                for i in range(size):
                    chosen[i] = i
                while True:
                    if _quotient_bipartite(n, m, eu, ev, chosen, size, contract,
                                           comp, parent, parity, skip):
                        found = True
                        break
                    # next combination in lexicographic order
                    j = size - 1
                    while j >= 0 and chosen[j] == m - size + j:
                        j -= 1
                    if j < 0:
                        break
                    chosen[j] += 1
                    for i in range(j + 1, size):
                        chosen[i] = chosen[i - 1] + 1
                if found:
                    break
        if found:
            return tuple([chosen[i] for i in range(size)])
        return None
    finally:
        free(eu); free(ev); free(chosen); free(comp); free(parent); free(parity); free(skip)


def min_contraction_subset(int n, eu, ev, int k):
    return _min_subset(n, eu, ev, k, True)


def min_deletion_subset(int n, eu, ev, int k):
    return _min_subset(n, eu, ev, k, False)


def connected_sets(adj, int n, int x, int y, int p):
    cdef u64* a = _load_adj(adj, n)
    cdef u64 full = (<u64>1 << n) - 1
    cdef u64 xb = <u64>1 << x
    cdef u64 fr = full & ~xb & ~(<u64>1 << y)
    cdef u64 sub = 0, s, f
    cdef int d
    out = []
    try:
        while True:
            s = sub | xb
            if _components_in(a, s) == 1:
                d = 0
                f = s
                while f:
                    d += __builtin_popcountll(a[__builtin_ctzll(f)] & ~s)
                    f &= f - 1
                if d <= p:
                    out.append((s, d))
            if sub == fr:
                break
            sub = (sub - fr) & fr
    finally:
        free(a)
    return out
