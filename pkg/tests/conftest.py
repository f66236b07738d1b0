"""Shared test helpers: small named graphs and exponential-time oracles."""

import numpy as np

from hrglab.graphs import from_edge_array


def complete_graph(n):
    return from_edge_array(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n):
    return from_edge_array(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return from_edge_array(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n):
    return from_edge_array(n, [(0, i) for i in range(1, n)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_array(10, outer + spokes + inner)


def er_graph(rng, n, p):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edge_array(n, np.array(pairs).reshape(-1, 2))


def adjacency_masks(g):
    masks = []
    for v in range(g.vertex_count):
        row = 0
        for u in g.neighbors(v).tolist():
            row |= 1 << u
        masks.append(row)
    return masks


def brute_degeneracy(g):
    """max over vertex subsets of the minimum induced degree."""
    n = g.vertex_count
    masks = adjacency_masks(g)
    best = 0
    for s in range(1, 1 << n):
        mind = n
        probe = s
        while probe:
            v = (probe & -probe).bit_length() - 1
            mind = min(mind, (masks[v] & s).bit_count())
            probe &= probe - 1
        best = max(best, mind)
    return best


def brute_clique(g):
    """max size over vertex subsets that are pairwise adjacent."""
    n = g.vertex_count
    if n == 0:
        return 0
    masks = adjacency_masks(g)
    best = 0
    for s in range(1, 1 << n):
        size = s.bit_count()
        if size <= best:
            continue
        probe = s
        ok = True
        while probe:
            bit = probe & -probe
            v = bit.bit_length() - 1
            if (masks[v] & s) != s & ~bit:
                ok = False
                break
            probe &= probe - 1
        if ok:
            best = size
    return best
