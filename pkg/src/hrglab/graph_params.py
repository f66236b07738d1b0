"""Exact graph parameters and their geometric witnesses.

Degeneracy is computed by smallest-last peeling: repeatedly remove a
minimum-degree vertex (ties by smallest id), record the degree at removal,
and take the running maximum. Colouring the reverse of that order greedily
needs at most degeneracy + 1 colours. Cliques come from three routes that
the analysis chain cross-checks: the geometric core (radius at most R/2,
or weight at least sqrt(n/lambda)), a greedy radius-ordered extension of
the core, and budgeted exact search.

Everything here is read-only on the input graph, so analyses of different
graphs can run concurrently without locks.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np
from numba import njit

from .geometry import _line_distance_array
from .graphs import Graph
from .samplers import GirgPointSet, HrgPointSet


class CliqueBudgetExceeded(RuntimeError):
    """Exact search ran out of budget; carries the best clique found so far.

    The partial result is still a valid lower bound on the clique number.
    """

    def __init__(self, size: int, members):
        super().__init__(
            f"clique search budget exhausted; best clique so far has {size} vertices"
        )
        self.size = size
        self.members = members


@dataclass(frozen=True)
class DegeneracyResult:
    """Smallest-last removal order together with the exact degeneracy."""

    kappa: int
    ordering: np.ndarray
    removal_degrees: np.ndarray

    def __post_init__(self):
        n = self.ordering.shape[0]
        if self.removal_degrees.shape[0] != n:
            raise ValueError("ordering and removal_degrees must be parallel")
        if not np.array_equal(np.sort(self.ordering), np.arange(n)):
            raise ValueError("ordering is not a permutation of the vertex ids")
        expect = int(self.removal_degrees.max()) if n else 0
        if self.kappa != expect:
            raise ValueError(
                f"kappa {self.kappa} does not match max removal degree {expect}"
            )
        self.ordering.setflags(write=False)
        self.removal_degrees.setflags(write=False)


@dataclass(frozen=True)
class InnerDegreeProfile:
    """Per-vertex count of neighbours that precede it in the radial order."""

    inner_degree: np.ndarray
    argmax_vertex: int
    max_inner_degree: int

    def __post_init__(self):
        n = self.inner_degree.shape[0]
        peak = int(self.inner_degree.max()) if n else 0
        if self.max_inner_degree != peak:
            raise ValueError("max_inner_degree does not match the profile")
        if n and int(self.inner_degree[self.argmax_vertex]) != peak:
            raise ValueError("argmax_vertex does not attain max_inner_degree")
        self.inner_degree.setflags(write=False)


@dataclass(frozen=True)
class SeparatorPartition:
    """Inner-neighbourhood of the anchor split into hypercycle and two sides."""

    anchor: int
    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray

    def __post_init__(self):
        parts = np.concatenate((self.s0, self.s1, self.s2))
        if np.unique(parts).shape[0] != parts.shape[0]:
            raise ValueError("separator parts must be pairwise disjoint")
        for arr in (self.s0, self.s1, self.s2):
            arr.setflags(write=False)

    @property
    def gamma_size(self) -> int:
        return self.s0.shape[0] + self.s1.shape[0] + self.s2.shape[0]


# ---------------------------------------------------------------------------
# smallest-last peeling (numba kernels)


@njit(cache=True)
def _heap_push(heap, size, key):
    heap[size] = key
    i = size
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return size + 1


@njit(cache=True)
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        small = left
        right = left + 1
        if right < size and heap[right] < heap[left]:
            small = right
        if heap[i] <= heap[small]:
            break
        heap[i], heap[small] = heap[small], heap[i]
        i = small
    return top, size


@njit(cache=True)
def _peel(indptr, indices):
    """Smallest-last order; ties on degree broken by smallest vertex id.

    Keys pack (degree, id) into one int64 so the heap order is exactly the
    lexicographic order the contract asks for. Stale entries (pushed before
    a later degree decrement) are skipped on pop: every decrement pushes a
    fresh key, so per vertex only the latest degree matches.
    """
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    capacity = n + indices.shape[0] // 2 + 1
    heap = np.empty(capacity, np.int64)
    size = 0
    for v in range(n):
        size = _heap_push(heap, size, (deg[v] << 32) | v)
    removed = np.zeros(n, np.uint8)
    order = np.empty(n, np.int64)
    removal_degrees = np.empty(n, np.int64)
    for pos in range(n):
        v = -1
        while size > 0:
            key, size = _heap_pop(heap, size)
            v = key & 0xFFFFFFFF
            if removed[v] == 0 and (key >> 32) == deg[v]:
                break
            v = -1
        order[pos] = v
        removal_degrees[pos] = deg[v]
        removed[v] = 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if removed[u] == 0:
                deg[u] -= 1
                size = _heap_push(heap, size, (deg[u] << 32) | u)
    return order, removal_degrees


@njit(cache=True)
def _colour_reverse(indptr, indices, order):
    """Greedy colouring along the reversed order; scratch is stamp-cleared."""
    n = order.shape[0]
    colours = np.full(n, -1, np.int64)
    mark = np.full(n + 1, -1, np.int64)
    for pos in range(n - 1, -1, -1):
        v = order[pos]
        for e in range(indptr[v], indptr[v + 1]):
            c = colours[indices[e]]
            if c >= 0:
                mark[c] = v
        c = 0
        while mark[c] == v:
            c += 1
        colours[v] = c
    return colours


def degeneracy(g: Graph) -> DegeneracyResult:
    """Exact degeneracy with the smallest-last removal order."""
    order, removal_degrees = _peel(g.indptr, g.indices)
    kappa = int(removal_degrees.max()) if g.vertex_count else 0
    return DegeneracyResult(
        kappa=kappa, ordering=order, removal_degrees=removal_degrees
    )


def greedy_colour(g: Graph, result: DegeneracyResult) -> np.ndarray:
    """Proper colouring with at most ``result.kappa + 1`` colours."""
    colours = _colour_reverse(g.indptr, g.indices, result.ordering)
    used = int(colours.max()) + 1 if g.vertex_count else 0
    if used > result.kappa + 1:
        raise RuntimeError(
            f"greedy colouring used {used} colours, above kappa + 1 = {result.kappa + 1}"
        )
    return colours


def validate_colouring(g: Graph, colours: np.ndarray) -> list[tuple[int, int]]:
    """Every monochromatic edge, as (u, v) pairs; empty list means proper."""
    if colours.shape[0] != g.vertex_count or np.any(colours < 0):
        raise ValueError("every vertex needs a nonnegative colour")
    heads = np.repeat(np.arange(g.vertex_count), np.diff(g.indptr))
    bad = (colours[heads] == colours[g.indices]) & (heads < g.indices)
    return list(zip(heads[bad].tolist(), g.indices[bad].tolist()))


# ---------------------------------------------------------------------------
# geometric witnesses


def core(points: HrgPointSet | GirgPointSet) -> np.ndarray:
    """Vertex ids of the always-mutually-adjacent centre of the instance."""
    if isinstance(points, HrgPointSet):
        return np.flatnonzero(points.radii <= 0.5 * points.params.R)
    return np.flatnonzero(points.weights >= points.params.core_weight)


def _precedence_rank(points: HrgPointSet | GirgPointSet) -> np.ndarray:
    """Position of each vertex in the inner order; ties broken by id.

    Disk instances order by ascending radius, torus instances by descending
    weight. Stable sort makes the id tie-break implicit.
    """
    if isinstance(points, HrgPointSet):
        order = np.argsort(points.radii, kind="stable")
    else:
        order = np.argsort(-points.weights, kind="stable")
    n = order.shape[0]
    dtype = np.int32 if n <= np.iinfo(np.int32).max else np.int64
    rank = np.empty(n, dtype=dtype)
    rank[order] = np.arange(n, dtype=dtype)
    return rank


def inner_degrees(
    points: HrgPointSet | GirgPointSet, g: Graph
) -> InnerDegreeProfile:
    """Count, per vertex, the neighbours that precede it in the inner order."""
    if g.vertex_count != len(points):
        raise ValueError("graph and point set sizes differ")
    rank = _precedence_rank(points)
    # per-row count of neighbours of smaller rank via one running sum over
    # the adjacency; avoids materializing a heads array of length 2m
    mask = rank[g.indices] < np.repeat(rank, np.diff(g.indptr))
    running = np.zeros(g.indices.shape[0] + 1, dtype=np.int64)
    np.cumsum(mask, out=running[1:])
    inner = running[g.indptr[1:]] - running[g.indptr[:-1]]
    argmax = int(np.argmax(inner)) if g.vertex_count else 0
    return InnerDegreeProfile(
        inner_degree=inner,
        argmax_vertex=argmax,
        max_inner_degree=int(inner[argmax]) if g.vertex_count else 0,
    )


def exact_clique(
    g: Graph, max_vertices: int = 500, max_steps: int = 10**8
) -> int:
    """Exact clique number by pivoted branch-and-bound over bitmask sets.

    Raises ``ValueError`` above ``max_vertices`` (pass a larger budget to
    override) and ``CliqueBudgetExceeded`` past ``max_steps`` recursive
    calls, carrying the best clique found.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise ValueError(
            f"{n} vertices exceeds the exact-search budget of {max_vertices}"
        )
    if n == 0:
        return 0
    adjacency = []
    for v in range(n):
        row = 0
        for u in g.indices[g.indptr[v] : g.indptr[v + 1]].tolist():
            row |= 1 << u
        adjacency.append(row)
    full = (1 << n) - 1
    state = {"best": 0, "members": 0, "steps": 0}

    def expand(r: int, p: int, x: int) -> None:
        state["steps"] += 1
        if state["steps"] > max_steps:
            raise CliqueBudgetExceeded(
                state["best"], _bits_to_ids(state["members"])
            )
        if p == 0 and x == 0:
            size = r.bit_count()
            if size > state["best"]:
                state["best"], state["members"] = size, r
            return
        if r.bit_count() + p.bit_count() <= state["best"]:
            return
        pivot, pivot_score = -1, -1
        probe = p | x
        while probe:
            u = (probe & -probe).bit_length() - 1
            score = (p & adjacency[u]).bit_count()
            if score > pivot_score:
                pivot, pivot_score = u, score
            probe &= probe - 1
        ext = p & ~adjacency[pivot]
        while ext:
            bit = ext & -ext
            v = bit.bit_length() - 1
            expand(r | bit, p & adjacency[v], x & adjacency[v])
            p &= ~bit
            x |= bit
            ext &= ext - 1

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        expand(0, full, 0)
    finally:
        sys.setrecursionlimit(limit)
    return state["best"]


def _bits_to_ids(mask: int) -> list[int]:
    ids = []
    while mask:
        ids.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return ids


def _adjacency_row(g: Graph, v: int) -> np.ndarray:
    row = np.zeros(g.vertex_count, dtype=bool)
    row[g.indices[g.indptr[v] : g.indptr[v + 1]]] = True
    return row


def certify_clique(g: Graph, ids: np.ndarray) -> None:
    """Raise unless every pair in ``ids`` is an edge of the graph."""
    members = np.asarray(ids, dtype=np.int64)
    for v in members.tolist():
        row = g.indices[g.indptr[v] : g.indptr[v + 1]]
        others = members[members != v]
        if others.shape[0] and not row.shape[0]:
            raise RuntimeError(f"vertices {v} and {int(others[0])} are not adjacent")
        pos = np.searchsorted(row, others)
        ok = (pos < row.shape[0]) & (row[np.minimum(pos, row.shape[0] - 1)] == others)
        if not np.all(ok):
            missing = others[~ok][0]
            raise RuntimeError(f"vertices {v} and {int(missing)} are not adjacent")


def extend_core_clique(points: HrgPointSet, g: Graph) -> np.ndarray:
    """Grow the core clique by scanning outward in ascending radius.

    Every accepted vertex is adjacent to all current members, checked
    against the built graph, so the return value is a certified clique.
    The core itself must pass the same structural check; a failure there
    means the edge builder broke the geometric guarantee.
    """
    n = len(points)
    if g.vertex_count != n:
        raise ValueError("graph and point set sizes differ")
    half = 0.5 * points.params.R
    order = np.argsort(points.radii, kind="stable")
    compatible = np.ones(n, dtype=bool)
    members = []
    for v in order.tolist():
        if not compatible[v]:
            if points.radii[v] <= half:
                raise RuntimeError(
                    f"core vertex {v} is missing an edge to another core vertex"
                )
            continue
        members.append(v)
        compatible &= _adjacency_row(g, v)
    return np.array(members, dtype=np.int64)


def separator_partition(
    points: HrgPointSet, g: Graph, anchor: int
) -> SeparatorPartition:
    """Split the anchor's inner-neighbourhood by the line through its angle.

    s0 collects inner-neighbours within line distance R/2 (the hypercycle
    strip); s1 and s2 take the rest by side. Two vertices strictly farther
    than R/2 from the line and on opposite sides are more than R apart, so
    no s1-s2 edge can exist; the function verifies that on the built graph
    and raises if the guarantee is violated.
    """
    n = len(points)
    R = points.params.R
    r_anchor = float(points.radii[anchor])
    if not 0.5 * R < r_anchor < R:
        raise ValueError(
            f"anchor radius {r_anchor:.6g} outside the open interval (R/2, R)"
        )
    rank = _precedence_rank(points)
    neigh = g.neighbors(anchor)
    gamma = neigh[rank[neigh] < rank[anchor]]
    phi = float(points.angles[anchor])
    dist = _line_distance_array(points.radii[gamma], points.angles[gamma], phi)
    in_strip = dist <= 0.5 * R
    rel = np.mod(points.angles[gamma] - phi, 2.0 * np.pi)
    s0 = gamma[in_strip]
    s1 = gamma[~in_strip & (rel < np.pi)]
    s2 = gamma[~in_strip & (rel > np.pi)]
    side = np.zeros(n, dtype=np.int8)
    side[s1] = 1
    side[s2] = 2
    heads = np.repeat(np.arange(n), np.diff(g.indptr))
    crossing = np.count_nonzero((side[heads] == 1) & (side[g.indices] == 2))
    if crossing:
        raise RuntimeError(
            f"{crossing} edges cross the separator; geometric guarantee violated"
        )
    return SeparatorPartition(anchor=anchor, s0=s0, s1=s1, s2=s2)


# ---------------------------------------------------------------------------
# result files


def write_colouring(colours: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        for v, c in enumerate(colours.tolist()):
            fh.write(f"{v} {c}\n")


def write_ordering(ordering: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        for v in ordering.tolist():
            fh.write(f"{v}\n")
