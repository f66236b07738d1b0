"""Reproducible sweeps: sample, build, analyze, persist.

A sweep is a grid of (model, n, alpha, seed) cells. Each cell owns its RNG
stream and graph, so cells are independent and may run on any thread; the
final record list is sorted by (model, n, alpha, seed) before writing so
the CSV bytes never depend on scheduling. Per-cell failures land in the
record's error column instead of aborting sibling cells.

Runtime columns are written as zeros unless the config opts in, because
wall-clock noise would break the byte-determinism contract.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from . import graph_params, rng, samplers
from .geometry import HrgParams, theory_bounds
from .graphs import Graph

FORMAT_TAG = "# hrglab-records-v1"

MODELS = ("hrg", "hrg-poisson", "girg")
_MODEL_TAG = {"hrg": 1, "hrg-poisson": 2, "girg": 3}

ANALYSES = (
    "degeneracy",
    "colouring",
    "cliques-exact",
    "clique-extend",
    "separator",
    "inner-degrees",
)

_COLUMNS = (
    "model",
    "n",
    "alpha",
    "c_or_lambda",
    "seed",
    "sigma",
    "kappa",
    "max_inner_degree",
    "omega_lb",
    "omega_exact",
    "colours_greedy",
    "edges",
    "runtime_ms_sample",
    "runtime_ms_build",
    "runtime_ms_analyze",
    "kappa_lower_const",
    "kappa_upper_const",
    "clique_upper_const",
    "girg_ratio_const",
    "error",
)

_INT_COLUMNS = {
    "n",
    "seed",
    "sigma",
    "kappa",
    "max_inner_degree",
    "omega_lb",
    "omega_exact",
    "colours_greedy",
    "edges",
}
_FLOAT_COLUMNS = {
    "alpha",
    "c_or_lambda",
    "runtime_ms_sample",
    "runtime_ms_build",
    "runtime_ms_analyze",
    "kappa_lower_const",
    "kappa_upper_const",
    "clique_upper_const",
    "girg_ratio_const",
}


@dataclass(frozen=True)
class ExperimentRecord:
    """One CSV row; None fields serialize as empty cells."""

    model: str
    n: int
    alpha: float
    c_or_lambda: float
    seed: int
    sigma: int | None = None
    kappa: int | None = None
    max_inner_degree: int | None = None
    omega_lb: int | None = None
    omega_exact: int | None = None
    colours_greedy: int | None = None
    edges: int | None = None
    runtime_ms_sample: float = 0.0
    runtime_ms_build: float = 0.0
    runtime_ms_analyze: float = 0.0
    kappa_lower_const: float = 0.0
    kappa_upper_const: float = 0.0
    clique_upper_const: float = 0.0
    girg_ratio_const: float = 0.0
    error: str | None = None


@dataclass(frozen=True)
class SweepConfig:
    """Grid description: which cells to run and which analyses per cell.

    Seeds come either as an explicit list (used verbatim as sampler seeds in
    every cell) or as (base_seed, reps), where each cell derives its own
    sampler seed by mixing the base with the cell coordinates; the derived
    form guarantees that adding cells never perturbs existing ones.
    """

    model: str
    n_values: tuple[int, ...]
    alpha_values: tuple[float, ...]
    c_or_lambda: float
    analyses: frozenset[str] = frozenset({"degeneracy"})
    seeds: tuple[int, ...] | None = None
    base_seed: int | None = None
    reps: int | None = None
    thread_count: int = 1
    out: str | None = None
    record_runtimes: bool = False

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be a non-empty list of positive integers")
        if not self.alpha_values or any(
            not 0.5 < a < 1.0 for a in self.alpha_values
        ):
            raise ValueError("every alpha must lie strictly inside (1/2, 1)")
        explicit = self.seeds is not None
        derived = self.base_seed is not None or self.reps is not None
        if explicit == derived:
            raise ValueError("give either an explicit seed list or base_seed + reps")
        if explicit and not self.seeds:
            raise ValueError("seed list must be non-empty")
        if derived and (
            self.base_seed is None or self.reps is None or self.reps < 1
        ):
            raise ValueError("derived seeding needs base_seed and reps >= 1")
        unknown = self.analyses - set(ANALYSES)
        if unknown:
            raise ValueError(f"unknown analyses: {sorted(unknown)}")
        if "cliques-exact" in self.analyses and max(self.n_values) > 500:
            raise ValueError("cliques-exact requires every n to fit the exact budget (500)")
        if self.thread_count < 1:
            raise ValueError("thread_count must be at least 1")
        if self.model == "girg" and not self.c_or_lambda > 0:
            raise ValueError("lambda must be positive for the torus model")
        if self.model == "girg" and "separator" in self.analyses:
            raise ValueError("the separator analysis is specific to the disk models")

    def cell_seeds(self, n: int, alpha: float) -> list[int]:
        if self.seeds is not None:
            return list(self.seeds)
        tag = _MODEL_TAG[self.model]
        return [
            rng.mix64(self.base_seed, tag, n, rng.float_bits(alpha), rep)
            for rep in range(self.reps)
        ]

    def cells(self) -> list[tuple[int, float, int]]:
        return [
            (n, alpha, seed)
            for n in self.n_values
            for alpha in self.alpha_values
            for seed in self.cell_seeds(n, alpha)
        ]


def _girg_params(n: int, alpha: float, lam: float) -> samplers.GirgParams:
    # weight tail exponent beta = 2 alpha + 1 puts alpha back in (1/2, 1)
    return samplers.GirgParams(n=n, beta=2.0 * alpha + 1.0, lam=lam)


def _pick_anchor(points: samplers.HrgPointSet) -> int:
    """Vertex with radius nearest R/2 + 1, restricted to the open band (R/2, R)."""
    R = points.params.R
    radii = points.radii
    eligible = np.flatnonzero((radii > 0.5 * R) & (radii < R))
    if not eligible.shape[0]:
        raise ValueError("no vertex available in the anchor band (R/2, R)")
    target = 0.5 * R + 1.0
    return int(eligible[np.argmin(np.abs(radii[eligible] - target))])


def analyze_cell(
    points, g: Graph, analyses: frozenset[str]
) -> dict[str, int | None]:
    """Run the selected analyses; returns the record columns they fill."""
    out: dict[str, int | None] = {
        "sigma": None,
        "kappa": None,
        "max_inner_degree": None,
        "omega_lb": None,
        "omega_exact": None,
        "colours_greedy": None,
    }
    core_ids = graph_params.core(points)
    out["sigma"] = int(core_ids.shape[0])
    result = None
    if analyses & {"degeneracy", "colouring"}:
        result = graph_params.degeneracy(g)
        out["kappa"] = result.kappa
    if "colouring" in analyses:
        colours = graph_params.greedy_colour(g, result)
        out["colours_greedy"] = int(colours.max()) + 1 if g.vertex_count else 0
    if "inner-degrees" in analyses:
        profile = graph_params.inner_degrees(points, g)
        out["max_inner_degree"] = profile.max_inner_degree
    if "clique-extend" in analyses:
        if isinstance(points, samplers.HrgPointSet):
            clique = graph_params.extend_core_clique(points, g)
            out["omega_lb"] = int(clique.shape[0])
        else:
            # torus cores admit no radius sweep; the certified core itself
            # is the clique witness
            graph_params.certify_clique(g, core_ids)
            out["omega_lb"] = int(core_ids.shape[0])
    if "cliques-exact" in analyses:
        out["omega_exact"] = graph_params.exact_clique(g)
    if "separator" in analyses:
        anchor = _pick_anchor(points)
        graph_params.separator_partition(points, g, anchor)
    return out


def run_cell(config: SweepConfig, n: int, alpha: float, seed: int) -> ExperimentRecord:
    """Sample, build and analyze one grid cell; failures become the error column."""
    bounds = theory_bounds(alpha)
    base = dict(
        model=config.model,
        n=n,
        alpha=alpha,
        c_or_lambda=config.c_or_lambda,
        seed=seed,
        kappa_lower_const=bounds.kappa_lower_const,
        kappa_upper_const=bounds.kappa_upper_const,
        clique_upper_const=bounds.clique_upper_const,
        girg_ratio_const=bounds.girg_ratio_const,
    )
    try:
        t0 = time.perf_counter()
        if config.model == "girg":
            points = samplers.sample_girg_points(
                _girg_params(n, alpha, config.c_or_lambda), seed
            )
        elif config.model == "hrg-poisson":
            points = samplers.sample_hrg_poisson(
                HrgParams(n=n, alpha=alpha, C=config.c_or_lambda), seed
            )
        else:
            points = samplers.sample_hrg(
                HrgParams(n=n, alpha=alpha, C=config.c_or_lambda), seed
            )
        t1 = time.perf_counter()
        if config.model == "girg":
            g = samplers.build_girg_edges(points)
        else:
            g = samplers.build_edges_sweep(points)
        t2 = time.perf_counter()
        columns = analyze_cell(points, g, config.analyses)
        t3 = time.perf_counter()
    except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
        return ExperimentRecord(**base, error=f"{type(exc).__name__}: {exc}")
    record = ExperimentRecord(**base, edges=g.edge_count, **columns)
    if config.record_runtimes:
        record = replace(
            record,
            runtime_ms_sample=1e3 * (t1 - t0),
            runtime_ms_build=1e3 * (t2 - t1),
            runtime_ms_analyze=1e3 * (t3 - t2),
        )
    return record


def run_sweep(config: SweepConfig) -> list[ExperimentRecord]:
    """All cells of the grid, order-stabilized and chain-validated."""
    cells = config.cells()
    if config.thread_count == 1:
        records = [run_cell(config, *cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=config.thread_count) as pool:
            records = list(
                pool.map(lambda cell: run_cell(config, *cell), cells)
            )
    records.sort(key=lambda r: (r.model, r.n, r.alpha, r.seed))
    validate_records(records)
    return records


# ---------------------------------------------------------------------------
# CSV persistence


def _format_cell(name: str, value) -> str:
    if value is None:
        return ""
    if name in _FLOAT_COLUMNS:
        return f"{value:.17g}"
    return str(value)


def write_csv(records: list[ExperimentRecord], path) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(FORMAT_TAG + "\n")
            writer = csv.writer(fh)
            writer.writerow(_COLUMNS)
            for rec in records:
                writer.writerow(
                    [_format_cell(c, getattr(rec, c)) for c in _COLUMNS]
                )
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in _INT_COLUMNS:
        return int(text)
    if name in _FLOAT_COLUMNS:
        return float(text)
    return text


def read_csv(path) -> list[ExperimentRecord]:
    try:
        with open(path, newline="") as fh:
            tag = fh.readline().rstrip("\n")
            if tag != FORMAT_TAG:
                raise ValueError(
                    f"{path}: unrecognized format tag {tag!r}; expected {FORMAT_TAG!r}"
                )
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != list(_COLUMNS):
                raise ValueError(f"{path}: header does not match the v1 schema")
            records = []
            for row in reader:
                if len(row) != len(_COLUMNS):
                    raise ValueError(f"{path}: row has {len(row)} fields, expected {len(_COLUMNS)}")
                records.append(
                    ExperimentRecord(
                        **{c: _parse_cell(c, v) for c, v in zip(_COLUMNS, row)}
                    )
                )
            return records
    except OSError as exc:
        raise OSError(f"cannot read records from {path}: {exc}") from exc


def records_to_csv_bytes(records: list[ExperimentRecord]) -> bytes:
    buf = io.StringIO(newline="")
    buf.write(FORMAT_TAG + "\n")
    writer = csv.writer(buf)
    writer.writerow(_COLUMNS)
    for rec in records:
        writer.writerow([_format_cell(c, getattr(rec, c)) for c in _COLUMNS])
    return buf.getvalue().encode()


# ---------------------------------------------------------------------------
# validation and comparison


def validate_records(records: list[ExperimentRecord]) -> None:
    """Chain and theory-column invariants; raises on the first violation."""
    theory_by_alpha: dict[float, tuple[float, float, float, float]] = {}
    for i, rec in enumerate(records):
        if rec.error is not None:
            continue
        chain = [rec.sigma, rec.omega_lb, rec.omega_exact, rec.colours_greedy]
        chain = [v for v in chain if v is not None]
        if rec.kappa is not None:
            chain.append(rec.kappa + 1)
        for lo, hi in zip(chain, chain[1:]):
            if lo > hi:
                raise RuntimeError(
                    f"record {i} (model={rec.model}, n={rec.n}, alpha={rec.alpha}, "
                    f"seed={rec.seed}) violates the clique-chain invariant: {chain}"
                )
        theory = (
            rec.kappa_lower_const,
            rec.kappa_upper_const,
            rec.clique_upper_const,
            rec.girg_ratio_const,
        )
        expect = theory_by_alpha.setdefault(rec.alpha, theory)
        if theory != expect:
            raise RuntimeError(
                f"record {i}: theory columns disagree with an earlier alpha={rec.alpha} row"
            )
        bounds = theory_bounds(rec.alpha)
        fresh = (
            bounds.kappa_lower_const,
            bounds.kappa_upper_const,
            bounds.clique_upper_const,
            bounds.girg_ratio_const,
        )
        if any(abs(a - b) > 1e-9 for a, b in zip(theory, fresh)):
            raise RuntimeError(
                f"record {i}: theory columns drift from recomputation at alpha={rec.alpha}"
            )


@dataclass(frozen=True)
class GapSummary:
    """Per-cell difference of median kappa/sigma ratios, torus minus disk."""

    n: int
    alpha: float
    gap: float
    ci_low: float
    ci_high: float


def _ratio_pool(records: list[ExperimentRecord]) -> dict[tuple[int, float], list[float]]:
    pools: dict[tuple[int, float], list[float]] = {}
    for rec in records:
        if rec.error is not None:
            continue
        if rec.kappa is None or not rec.sigma:
            raise ValueError(
                "comparison needs kappa and a positive sigma in every record"
            )
        pools.setdefault((rec.n, rec.alpha), []).append(rec.kappa / rec.sigma)
    return pools


def compare_models(
    hrg_records: list[ExperimentRecord],
    girg_records: list[ExperimentRecord],
    bootstrap: int = 2000,
) -> list[GapSummary]:
    """Median kappa/sigma gap per (n, alpha) cell with bootstrap 95% intervals."""
    hrg_pool = _ratio_pool(hrg_records)
    girg_pool = _ratio_pool(girg_records)
    if set(hrg_pool) != set(girg_pool):
        raise ValueError(
            f"(n, alpha) grids differ: {sorted(set(hrg_pool) ^ set(girg_pool))}"
        )
    out = []
    for key in sorted(hrg_pool):
        h, g = hrg_pool[key], girg_pool[key]
        gap = statistics.median(g) - statistics.median(h)
        gen = rng.stream(rng.mix64(key[0], rng.float_bits(key[1])), stream_id=7)
        draws = np.empty(bootstrap)
        h_arr, g_arr = np.array(h), np.array(g)
        for b in range(bootstrap):
            hb = h_arr[gen.integers(0, len(h), len(h))]
            gb = g_arr[gen.integers(0, len(g), len(g))]
            draws[b] = np.median(gb) - np.median(hb)
        lo, hi = np.quantile(draws, [0.025, 0.975])
        out.append(
            GapSummary(n=key[0], alpha=key[1], gap=gap, ci_low=float(lo), ci_high=float(hi))
        )
    return out


# ---------------------------------------------------------------------------
# config files (flat key = value lines)

_CONFIG_KEYS = {
    "model",
    "n",
    "alpha",
    "C",
    "lambda",
    "seeds",
    "base_seed",
    "reps",
    "analyses",
    "threads",
    "out",
    "record_runtimes",
}


def parse_config(path) -> SweepConfig:
    """Flat key-value sweep description; '#' starts a comment."""
    raw: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in text.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            raw[key] = value
    for required in ("model", "n", "alpha"):
        if required not in raw:
            raise ValueError(f"{path}: missing required key {required!r}")
    model = raw["model"]
    if model == "girg":
        if "C" in raw:
            raise ValueError(f"{path}: the torus model takes 'lambda', not 'C'")
        c_or_lambda = float(raw.get("lambda", "1"))
    else:
        if "lambda" in raw:
            raise ValueError(f"{path}: disk models take 'C', not 'lambda'")
        c_or_lambda = float(raw.get("C", "0"))
    seeds = None
    base_seed = None
    reps = None
    if "seeds" in raw:
        if "base_seed" in raw or "reps" in raw:
            raise ValueError(f"{path}: 'seeds' conflicts with base_seed/reps")
        seeds = tuple(int(s) for s in raw["seeds"].split(","))
    else:
        base_seed = int(raw.get("base_seed", "0"))
        reps = int(raw.get("reps", "1"))
    analyses = frozenset(
        a.strip() for a in raw.get("analyses", "degeneracy").split(",") if a.strip()
    )
    return SweepConfig(
        model=model,
        n_values=tuple(int(s) for s in raw["n"].split(",")),
        alpha_values=tuple(float(s) for s in raw["alpha"].split(",")),
        c_or_lambda=c_or_lambda,
        analyses=analyses,
        seeds=seeds,
        base_seed=base_seed,
        reps=reps,
        thread_count=int(raw.get("threads", "1")),
        out=raw.get("out"),
        record_runtimes=raw.get("record_runtimes", "false").lower() == "true",
    )


def record_as_dict(rec: ExperimentRecord) -> dict:
    return {f.name: getattr(rec, f.name) for f in fields(rec)}
