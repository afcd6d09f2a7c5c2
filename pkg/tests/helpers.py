def bitmask(g):
    """Adjacency bitmasks over sorted vertex ids, plus the id-to-index map."""
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * g.n
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return adj, index
