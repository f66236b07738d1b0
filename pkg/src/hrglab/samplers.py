"""Reproducible point-set samplers and edge-set builders.

Draw order is part of the contract so published runs can be regenerated
bit-for-bit: the disk sampler consumes one block of 2n uniforms laid out
per vertex as (radius-uniform, angle-uniform); the Poissonized variant
draws the count first, then the same per-vertex layout; the torus sampler
draws all weights, then all positions.

Both edge builders decide adjacency from the same cosh-space expression
A = cosh(r1)cosh(r2) - sinh(r1)sinh(r2)cos(dphi), evaluated with an
identical operation order. The banded builder compares A <= cosh(R)
directly (the angular test: monotone-exact, no cancellation-prone acosh);
the naive reference uses the inverted distance acosh(A) <= R but defers to
the angular test inside a 1e-9 band around R, which makes the two paths
agree deterministically rather than within an ulp lottery.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import rng
from .geometry import TWO_PI, HrgParams, PolarPoint, radial_quantile
from .graphs import Graph, from_edge_array

_NAIVE_CUTOFF = 2 ** 10  # below this the banded builder just runs the naive path
_DISTANCE_BAND = 1e-9  # |d - R| band where the naive path defers to the angular test
_BAND_WIDTH = math.log(2.0)  # radial band width of the sweep grid


@dataclass(frozen=True)
class GirgParams:
    """Torus model parameters: Pareto weight exponent beta and edge scale lambda."""

    n: int
    beta: float
    lam: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if not 2.0 < self.beta < 3.0:
            raise ValueError(f"beta must lie strictly inside (2, 3), got {self.beta}")
        if not self.lam > 0.0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    @property
    def alpha(self) -> float:
        return 0.5 * (self.beta - 1.0)

    @property
    def core_weight(self) -> float:
        return math.sqrt(self.n / self.lam)


@dataclass(frozen=True)
class HrgPointSet:
    """Sampled disk positions; index is the vertex id."""

    params: HrgParams
    radii: np.ndarray
    angles: np.ndarray
    seed: int

    def __post_init__(self):
        if self.radii.shape != self.angles.shape or self.radii.ndim != 1:
            raise ValueError("radii and angles must be parallel 1-d arrays")
        self.radii.setflags(write=False)
        self.angles.setflags(write=False)

    def __len__(self) -> int:
        return self.radii.shape[0]

    def point(self, i: int) -> PolarPoint:
        return PolarPoint(float(self.radii[i]), float(self.angles[i]))


@dataclass(frozen=True)
class GirgPointSet:
    """Sampled torus positions and Pareto weights; index is the vertex id."""

    params: GirgParams
    weights: np.ndarray
    positions: np.ndarray
    seed: int

    def __post_init__(self):
        if self.weights.shape != self.positions.shape or self.weights.ndim != 1:
            raise ValueError("weights and positions must be parallel 1-d arrays")
        self.weights.setflags(write=False)
        self.positions.setflags(write=False)

    def __len__(self) -> int:
        return self.weights.shape[0]


def sample_hrg(params: HrgParams, seed: int) -> HrgPointSet:
    """n i.i.d. points: radius by inverse-CDF of the radial law, angle uniform."""
    gen = rng.stream(seed)
    u = gen.random((params.n, 2))
    radii = radial_quantile(u[:, 0], params)
    angles = TWO_PI * u[:, 1]
    return HrgPointSet(params=params, radii=radii, angles=angles, seed=seed)


def sample_hrg_poisson(params: HrgParams, seed: int) -> HrgPointSet:
    """Poissonized variant: vertex count ~ Poisson(n), then i.i.d. positions.

    Counts in disjoint regions are then independent, which the fixed-n model
    does not give. The count is the first draw on the stream.
    """
    gen = rng.stream(seed)
    count = int(gen.poisson(params.n))
    u = gen.random((count, 2))
    radii = radial_quantile(u[:, 0], params) if count else np.empty(0)
    angles = TWO_PI * u[:, 1] if count else np.empty(0)
    return HrgPointSet(params=params, radii=radii, angles=angles, seed=seed)


def sample_girg_points(params: GirgParams, seed: int) -> GirgPointSet:
    """Pareto weights (all first on the stream), then uniform positions."""
    gen = rng.stream(seed)
    # 1 - U lies in (0, 1], so the inverse CDF never divides by zero and the
    # weight floor w = 1 is attainable.
    uw = gen.random(params.n)
    weights = (1.0 - uw) ** (-1.0 / (params.beta - 1.0))
    positions = gen.random(params.n)
    return GirgPointSet(params=params, weights=weights, positions=positions, seed=seed)


def build_girg_edges(points: GirgPointSet) -> Graph:
    """Exact edge set for a sampled torus instance."""
    return _girg_edges_layered(points)


def sample_girg(params: GirgParams, seed: int) -> tuple[GirgPointSet, Graph]:
    """Sample a torus instance and build its threshold graph."""
    points = sample_girg_points(params, seed)
    return points, build_girg_edges(points)


def girg_inner_prob(w, params: GirgParams):
    """Probability that a random partner is adjacent with weight >= w.

    Closed form from the Pareto tail plus the saturated-threshold region;
    above the core weight sqrt(n/lambda) every heavier partner is adjacent
    regardless of position, leaving the bare tail w^(-2 alpha).
    """
    w_arr = np.asarray(w, dtype=np.float64)
    if np.any(w_arr < 1.0):
        raise ValueError("weights live in [1, inf)")
    a = params.alpha
    n, lam = params.n, params.lam
    tail_at = n / (w_arr * lam)
    sub = (tail_at**-(2.0 * a)) + (a / (a - 0.5)) * (
        lam * w_arr ** (2.0 * (1.0 - a)) / n - tail_at**-(2.0 * a)
    )
    out = np.where(w_arr >= params.core_weight, w_arr**-(2.0 * a), sub)
    out = np.minimum(out, 1.0)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# shared adjacency predicate


def _wrap_dphi(a, b):
    """Angular distance in [0, pi]; identical expression on every code path."""
    return np.pi - np.abs(np.pi - np.abs(a - b))


def _cosh_gap(cosh_r1, sinh_r1, cosh_r2, sinh_r2, dphi):
    """cosh of the hyperbolic distance, computed once and shared by both builders."""
    return cosh_r1 * cosh_r2 - sinh_r1 * sinh_r2 * np.cos(dphi)


def build_edges_naive(points: HrgPointSet) -> Graph:
    """Exact O(n^2) threshold graph; the reference oracle for the banded builder."""
    n = len(points)
    R = points.params.R
    cosh_R = math.cosh(R)
    ch, sh = np.cosh(points.radii), np.sinh(points.radii)
    rows = []
    chunk = max(1, (2 ** 22) // max(n, 1))
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        dphi = _wrap_dphi(points.angles[lo:hi, None], points.angles[None, :])
        gap = _cosh_gap(ch[lo:hi, None], sh[lo:hi, None], ch[None, :], sh[None, :], dphi)
        d = np.arccosh(np.maximum(gap, 1.0))
        edge = d <= R
        near = np.abs(d - R) <= _DISTANCE_BAND
        if np.any(near):
            edge[near] = gap[near] <= cosh_R  # angular test wins inside the band
        # upper triangle only
        cols = np.arange(n)[None, :]
        edge &= cols > np.arange(lo, hi)[:, None]
        u, v = np.nonzero(edge)
        rows.append(np.column_stack((u + lo, v)))
    pairs = np.concatenate(rows) if rows else np.empty((0, 2), dtype=np.int64)
    g = from_edge_array(n, pairs)
    g.validate()
    return g


def _theta_window(r, lowest, cosh_R):
    """Upper bound on the connection angle of r against any radius >= lowest.

    Vectorized over r. Zero radii (either side) mean the pair shares the
    origin ray, where the angle degenerates; the window widens to pi there.
    """
    r = np.asarray(r, dtype=np.float64)
    out = np.full(r.shape, np.pi)
    if lowest <= 0.0:
        return out
    ok = r > 0.0
    arg = (np.cosh(r[ok]) * math.cosh(lowest) - cosh_R) / (
        np.sinh(r[ok]) * math.sinh(lowest)
    )
    out[ok] = np.arccos(np.clip(arg, -1.0, 1.0))
    return out


def build_edges_sweep(points: HrgPointSet) -> Graph:
    """Banded edge builder; identical edge set to ``build_edges_naive``.

    Vertices are bucketed into radial bands [R/2 + k ln 2, R/2 + (k+1) ln 2)
    plus the core band [0, R/2). Within a band pair, each point only scans
    the angular window allowed by the connection angle of its own radius
    against the partner band's smallest radius, found by binary search over
    the partner band sorted by angle. Candidates then pass through the exact
    shared predicate. Small inputs fall back to the naive path.
    """
    if len(points) <= _NAIVE_CUTOFF:
        return build_edges_naive(points)
    graph, _ = _sweep_edges(points)
    return graph


def _sweep_edges(points: HrgPointSet) -> tuple[Graph, int]:
    """Banded build plus the count of exact predicate evaluations."""
    n = len(points)
    candidates_tested = 0
    R = points.params.R
    cosh_R = math.cosh(R)
    radii, angles = points.radii, points.angles
    ch, sh = np.cosh(radii), np.sinh(radii)

    half = 0.5 * R
    band_of = np.where(
        radii < half, 0, 1 + np.floor((radii - half) / _BAND_WIDTH)
    ).astype(np.int64)
    band_count = int(band_of.max()) + 1 if n else 0

    # per band: vertex ids sorted by angle, plus the smallest radius present;
    # ids kept narrow so the pair chunks stay small at acceptance scale
    ids_dtype = np.int32 if n <= np.iinfo(np.int32).max else np.int64
    order = np.lexsort((angles,))
    members: list[np.ndarray] = []
    min_radius = np.empty(band_count)
    for b in range(band_count):
        ids = order[band_of[order] == b].astype(ids_dtype)
        members.append(ids)
        min_radius[b] = radii[ids].min() if ids.shape[0] else np.inf

    chunks: list[np.ndarray] = []
    budget = 2 ** 22  # candidate pairs tested per vectorized slice
    for bi in range(band_count):
        A = members[bi]
        if not A.shape[0]:
            continue
        for bj in range(bi, band_count):
            B = members[bj]
            if not B.shape[0]:
                continue
            theta = _theta_window(radii[A], float(min_radius[bj]), cosh_R)
            if not np.any(theta > 0.0):
                continue
            ang_b = angles[B]
            ext_angles = np.concatenate((ang_b - TWO_PI, ang_b, ang_b + TWO_PI))
            ext_ids = np.concatenate((B, B, B))
            lo = np.searchsorted(ext_angles, angles[A] - theta, side="left")
            hi = np.searchsorted(ext_angles, angles[A] + theta, side="right")
            counts = hi - lo
            nz = counts > 0
            if not np.any(nz):
                continue
            idx_a, lo, counts = A[nz], lo[nz], counts[nz]
            starts = np.cumsum(counts) - counts
            total = int(counts.sum())
            for s in range(0, total, budget):
                e = min(s + budget, total)
                span = np.arange(s, e)
                owner = np.searchsorted(starts, span, side="right") - 1
                cand = ext_ids[lo[owner] + (span - starts[owner])]
                src = idx_a[owner]
                if bi == bj:
                    keep = cand > src
                    cand, src = cand[keep], src[keep]
                if not cand.shape[0]:
                    continue
                candidates_tested += cand.shape[0]
                dphi = _wrap_dphi(angles[src], angles[cand])
                gap = _cosh_gap(ch[src], sh[src], ch[cand], sh[cand], dphi)
                hit = gap <= cosh_R
                if np.any(hit):
                    chunks.append(np.column_stack((src[hit], cand[hit])))
    pairs = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    chunks.clear()
    g = from_edge_array(n, pairs)
    del pairs
    g.validate()
    return g, candidates_tested


# ---------------------------------------------------------------------------
# torus model edge construction


def _girg_adjacent(weights, positions, params, i, j):
    """Shared exact edge predicate on index arrays i, j."""
    delta = np.abs(positions[i] - positions[j])
    torus = np.minimum(delta, 1.0 - delta)
    t = 0.5 * params.lam * weights[i] * weights[j] / params.n
    return torus <= np.minimum(t, 0.5)


def _girg_edges_naive(points: GirgPointSet) -> Graph:
    """O(n^2) reference builder for the torus model."""
    n = len(points)
    pairs = []
    chunk = max(1, (2 ** 22) // max(n, 1))
    idx = np.arange(n)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        ii, jj = np.meshgrid(idx[lo:hi], idx, indexing="ij")
        mask = jj > ii
        mask &= _girg_adjacent(
            points.weights, points.positions, points.params, ii, jj
        )
        u, v = np.nonzero(mask)
        pairs.append(np.column_stack((u + lo, v)))
    allp = np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=np.int64)
    g = from_edge_array(n, allp)
    g.validate()
    return g


def _girg_edges_layered(points: GirgPointSet) -> Graph:
    """Dyadic weight layers with per-point torus windows; exact edge set."""
    n = len(points)
    params = points.params
    if n <= _NAIVE_CUTOFF:
        return _girg_edges_naive(points)
    w, x = points.weights, points.positions
    layer_of = np.floor(np.log2(w)).astype(np.int64)
    layer_count = int(layer_of.max()) + 1
    ids_dtype = np.int32 if n <= np.iinfo(np.int32).max else np.int64
    order = np.argsort(x, kind="stable")
    members: list[np.ndarray] = []
    w_max = np.empty(layer_count)
    for l in range(layer_count):
        ids = order[layer_of[order] == l].astype(ids_dtype)
        members.append(ids)
        w_max[l] = w[ids].max() if ids.shape[0] else 0.0

    chunks: list[np.ndarray] = []
    budget = 2 ** 22
    for li in range(layer_count):
        A = members[li]
        if not A.shape[0]:
            continue
        for lj in range(li, layer_count):
            B = members[lj]
            if not B.shape[0]:
                continue
            reach = np.minimum(0.5 * params.lam * w[A] * w_max[lj] / n, 0.5)
            pos_b = x[B]
            ext_pos = np.concatenate((pos_b - 1.0, pos_b, pos_b + 1.0))
            ext_ids = np.concatenate((B, B, B))
            lo = np.searchsorted(ext_pos, x[A] - reach, side="left")
            hi = np.searchsorted(ext_pos, x[A] + reach, side="right")
            counts = hi - lo
            nz = counts > 0
            if not np.any(nz):
                continue
            idx_a, lo, counts = A[nz], lo[nz], counts[nz]
            starts = np.cumsum(counts) - counts
            total = int(counts.sum())
            for s in range(0, total, budget):
                e = min(s + budget, total)
                span = np.arange(s, e)
                owner = np.searchsorted(starts, span, side="right") - 1
                cand = ext_ids[lo[owner] + (span - starts[owner])]
                src = idx_a[owner]
                if li == lj:
                    keep = cand > src
                    cand, src = cand[keep], src[keep]
                if not cand.shape[0]:
                    continue
                hit = _girg_adjacent(w, x, params, src, cand)
                if np.any(hit):
                    chunks.append(np.column_stack((src[hit], cand[hit])))
    pairs = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    chunks.clear()
    g = from_edge_array(n, pairs)
    del pairs
    g.validate()
    return g


# ---------------------------------------------------------------------------
# coordinate sidecar files ("id radius angle" / "id weight position")


def write_hrg_coords(points: HrgPointSet, path) -> None:
    with open(path, "w") as fh:
        for i in range(len(points)):
            fh.write(f"{i} {points.radii[i]:.17g} {points.angles[i]:.17g}\n")


def write_girg_coords(points: GirgPointSet, path) -> None:
    with open(path, "w") as fh:
        for i in range(len(points)):
            fh.write(f"{i} {points.weights[i]:.17g} {points.positions[i]:.17g}\n")


def _read_coord_table(path):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # empty file warns before we raise
        data = np.loadtxt(path, ndmin=2)
    if data.shape[0] and (
        data.shape[1] != 3 or np.any(data[:, 0] != np.arange(data.shape[0]))
    ):
        raise ValueError(f"{path}: expected consecutive 'id a b' rows")
    return data


def read_hrg_coords(
    path, alpha: float, C: float, seed: int = -1, n: int | None = None
) -> HrgPointSet:
    """Rebuild a point set from a sidecar; seed -1 marks external provenance.

    ``n`` sets the nominal vertex count the disk radius derives from; it
    defaults to the row count, which is only right for fixed-n instances.
    """
    data = _read_coord_table(path)
    if data.shape[0] == 0:
        raise ValueError(f"{path}: empty coordinate file")
    params = HrgParams(n=n if n is not None else data.shape[0], alpha=alpha, C=C)
    return HrgPointSet(
        params=params, radii=data[:, 1].copy(), angles=data[:, 2].copy(), seed=seed
    )


def read_girg_coords(
    path, beta: float, lam: float, seed: int = -1, n: int | None = None
) -> GirgPointSet:
    data = _read_coord_table(path)
    if data.shape[0] == 0:
        raise ValueError(f"{path}: empty coordinate file")
    params = GirgParams(n=n if n is not None else data.shape[0], beta=beta, lam=lam)
    return GirgPointSet(
        params=params, weights=data[:, 1].copy(), positions=data[:, 2].copy(), seed=seed
    )
