"""Pure-Python enumeration kernels.

Reference twin of ``_kernels.pyx``; both expose the same functions with the
same results. Vertices are indexed ``0..n-1`` and a vertex set is an int
bitmask. ``adj[i]`` is the neighbor mask of vertex ``i``.
"""

from itertools import combinations

BACKEND = "python"


def _components_in(adj, s):
    count = 0
    rem = s
    while rem:
        low = rem & -rem
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= adj[b.bit_length() - 1]
                f ^= b
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        rem &= ~comp
        count += 1
    return count


def mono_component_count(adj, n, mask):
    """Monochromatic components when bit set means color 2."""
    full = (1 << n) - 1
    return _components_in(adj, mask & full) + _components_in(adj, ~mask & full)


def min_coloring_cost(adj, n, forced1, forced2):
    """Minimum cost over colorings with ``forced1`` colored 1 and ``forced2`` colored 2.

    Returns ``(cost, mask)`` for the first optimum in increasing submask order
    of the free vertices. With no forced vertices, vertex 0 is fixed to color 1.
    """
    full = (1 << n) - 1
    if n == 0:
        return 0, 0
    if forced1 == 0 and forced2 == 0:
        forced1 = 1
    free = full & ~forced1 & ~forced2
    best = n + 1
    best_mask = 0
    sub = 0
    while True:
        mask = forced2 | sub
        cost = n - mono_component_count(adj, n, mask)
        if cost < best:
            best = cost
            best_mask = mask
            if cost == 0:
                break
        if sub == free:
            break
        sub = (sub - free) & free
    return best, best_mask


def _quotient_bipartite(n, eu, ev, chosen, contract):
    # Parity union-find. With contract=True, chosen edges are merged and the
    # remaining edges must be bichromatic between merged classes; with
    # contract=False chosen edges are deleted and the rest must be bichromatic.
    comp = list(range(n))

    def cfind(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    if contract:
        for i in chosen:
            a, b = cfind(eu[i]), cfind(ev[i])
            if a != b:
                comp[max(a, b)] = min(a, b)
    parent = list(range(n))
    parity = [0] * n

    def find(a):
        p = 0
        while parent[a] != a:
            p ^= parity[a]
            a = parent[a]
        return a, p

    skip = set(chosen)
    for i in range(len(eu)):
        if i in skip:
            continue
        a, b = cfind(eu[i]), cfind(ev[i])
        if a == b:
            continue
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa == pb:
                return False
        else:
            parent[rb] = ra
            parity[rb] = pa ^ pb ^ 1
    return True


def min_contraction_subset(n, eu, ev, k):
    """First edge-index tuple, smallest size then lexicographic, whose contraction is bipartite."""
    m = len(eu)
    for size in range(0, min(k, m) + 1):
        for combo in combinations(range(m), size):
            if _quotient_bipartite(n, eu, ev, combo, True):
                return combo
    return None


def min_deletion_subset(n, eu, ev, k):
    """First edge-index tuple, smallest size then lexicographic, whose deletion is bipartite."""
    m = len(eu)
    for size in range(0, min(k, m) + 1):
        for combo in combinations(range(m), size):
            if _quotient_bipartite(n, eu, ev, combo, False):
                return combo
    return None


def connected_sets(adj, n, x, y, p):
    """All connected ``S`` with ``x`` in S, ``y`` not in S and edge boundary at most ``p``.

    Returns a list of ``(mask, boundary)`` in increasing mask order.
    """
    full = (1 << n) - 1
    free = full & ~(1 << x) & ~(1 << y)
    out = []
    sub = 0
    while True:
        s = sub | (1 << x)
        if _components_in(adj, s) == 1:
            d = 0
            f = s
            while f:
                b = f & -f
                d += bin(adj[b.bit_length() - 1] & ~s).count("1")
                f ^= b
            if d <= p:
                out.append((s, d))
        if sub == free:
            break
        sub = (sub - free) & free
    return out
