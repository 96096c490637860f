"""Shared helpers for the test suite."""

from sidnc import StateFeedbackMatrix


def random_sfm(rng, max_packets, max_receivers, erasure_prob):
    """Random post-broadcast wants matrix with at least one outstanding want.

    All-zero matrices (broadcast already complete) are resampled since most
    graph/cover identities are stated for nonempty instances.
    """
    while True:
        k = int(rng.integers(2, max_packets + 1))
        n = int(rng.integers(1, max_receivers + 1))
        a = rng.random((n, k)) < erasure_prob
        if a.any():
            return StateFeedbackMatrix(a)


def graph_from_edge_list(vertex_count, edges):
    from sidnc.fixtures import graph_from_edges

    return graph_from_edges(vertex_count, edges)


def brute_force_chromatic(masks):
    """Independent coloring oracle: try every color assignment, smallest k wins.

    Exponential; only for graphs with a handful of vertices.
    """
    import itertools

    n = len(masks)
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for colors in itertools.product(range(k), repeat=n):
            ok = True
            for i in range(n):
                m = masks[i]
                while m:
                    low = m & -m
                    j = low.bit_length() - 1
                    if j > i and colors[i] == colors[j]:
                        ok = False
                        break
                    m ^= low
                if not ok:
                    break
            if ok:
                return k
    return n


def induced_subgraph_masks(graph, keep):
    """Adjacency bitmasks of the subgraph induced by the ordered vertex list."""
    index = {v: i for i, v in enumerate(keep)}
    masks = [0] * len(keep)
    for v in keep:
        for w in keep:
            if v != w and graph.adjacent(v, w):
                masks[index[v]] |= 1 << index[w]
    return masks
