"""Immutable undirected simple graphs in compressed sparse adjacency form.

Neighbour lists are sorted ascending, so membership tests are binary
searches and the flattened (row, neighbour) key sequence is globally
sorted; the structural validator exploits that to check symmetry without
re-sorting anything.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``indices[indptr[v]:indptr[v+1]]`` are v's neighbours."""

    vertex_count: int
    indptr: np.ndarray
    indices: np.ndarray
    edge_count: int

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return self.edge_count

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < row.shape[0] and row[k] == v)

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, ascending lexicographic."""
        heads = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees())
        tails = self.indices.astype(np.int64, copy=False)
        keep = heads < tails
        return np.column_stack((heads[keep], tails[keep]))

    def validate(self) -> None:
        """Check sortedness, simplicity and symmetry; raises on any breach."""
        n = self.vertex_count
        indptr, indices = self.indptr, self.indices
        if indptr.shape[0] != n + 1 or indptr[0] != 0 or indptr[-1] != indices.shape[0]:
            raise ValueError("corrupt indptr")
        if np.any(np.diff(indptr) < 0):
            raise ValueError("indptr not monotone")
        if indices.shape[0] != 2 * self.edge_count:
            raise ValueError("edge_count does not match adjacency size")
        if indices.shape[0] == 0:
            return
        if indices.min() < 0 or indices.max() >= n:
            raise ValueError("neighbour id out of range")
        heads = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        if np.any(indices == heads):
            raise ValueError("self-loop present")
        interior = np.diff(indices) <= 0
        boundaries = indptr[1:-1] - 1  # indptr[-1]-1 is past the last diff
        boundaries = boundaries[(boundaries >= 0) & (boundaries < interior.shape[0])]
        interior[boundaries] = False  # row boundaries may decrease
        if np.any(interior):
            raise ValueError("neighbour lists not strictly sorted")
        # Symmetry: (v, u) must exist for every (u, v). Keys are strictly
        # increasing (checked above), so reversal is a bijection on entries
        # exactly when the sorted mirror keys coincide with the key sequence;
        # one in-place sort beats 2m random-access binary searches, and the
        # in-place arithmetic keeps the check at three length-2m buffers.
        keys = heads * np.int64(n)
        keys += indices
        mirror = indices.astype(np.int64)
        mirror *= n
        mirror += heads
        del heads
        mirror.sort()
        if np.any(keys != mirror):
            raise ValueError("adjacency not symmetric")


def from_edge_array(vertex_count: int, pairs: np.ndarray) -> Graph:
    """Build a canonical Graph from raw (u, v) rows.

    Self-loops are dropped, orientation and duplicates are normalized, the
    adjacency is ascending within every row. Works on narrow integer input
    without widening it; intermediates are freed as soon as possible so the
    peak footprint stays near two int64 arrays of length 2m.
    """
    n = int(vertex_count)
    dtype = np.int32 if n <= np.iinfo(np.int32).max else np.int64
    pairs = np.asarray(pairs)
    if not np.issubdtype(pairs.dtype, np.integer):
        pairs = pairs.astype(np.int64)
    pairs = pairs.reshape(-1, 2)
    if pairs.shape[0]:
        if pairs.min() < 0 or pairs.max() >= n:
            raise ValueError("vertex id out of range")
        u = np.minimum(pairs[:, 0], pairs[:, 1])
        v = np.maximum(pairs[:, 0], pairs[:, 1])
        del pairs
        keep = u != v
        if not np.all(keep):
            u, v = u[keep], v[keep]
        keys = u.astype(np.int64, copy=True)
        keys *= n
        keys += v
        del u, v, keep
        keys = np.unique(keys)
        u = (keys // n).astype(dtype)
        keys %= n
        v = keys.astype(dtype)
        del keys
    else:
        u = v = np.empty(0, dtype=dtype)

    m = u.shape[0]
    deg = np.bincount(u, minlength=n) + np.bincount(v, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    del deg
    heads = np.concatenate((u, v))
    tails = np.concatenate((v, u))
    del u, v
    sort_key = heads.astype(np.int64, copy=True)
    sort_key *= n
    sort_key += tails
    del heads
    # keys are distinct, so unstable introsort gives the same order as the
    # stable radix sort while skipping the radix workspace (2m extra words)
    order = np.argsort(sort_key)
    del sort_key
    indices = np.ascontiguousarray(tails[order], dtype=dtype)
    return Graph(vertex_count=n, indptr=indptr, indices=indices, edge_count=int(m))


def write_edge_list(g: Graph, path) -> None:
    """Write "n m" then one "u v" line per edge, u < v, ascending."""
    edges = g.edge_array()
    with open(path, "w") as fh:
        fh.write(f"{g.vertex_count} {g.edge_count}\n")
        if edges.shape[0]:
            left = edges[:, 0].astype("U10")
            right = edges[:, 1].astype("U10")
            body = np.char.add(np.char.add(left, " "), right)
            fh.write("\n".join(body))
            fh.write("\n")


def read_edge_list(path) -> Graph:
    flat = np.fromfile(path, dtype=np.int64, sep=" ")
    if flat.shape[0] < 2:
        raise ValueError(f"{path}: missing 'n m' header")
    n, m = int(flat[0]), int(flat[1])
    if flat.shape[0] != 2 + 2 * m:
        raise ValueError(f"{path}: expected {m} edges, found {(flat.shape[0] - 2) // 2}")
    g = from_edge_array(n, flat[2:].reshape(-1, 2))
    if g.edge_count != m:
        raise ValueError(f"{path}: edge list is not canonical (duplicates or loops)")
    return g
