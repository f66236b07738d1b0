"""Ratio figure: theory curves over alpha, empirical medians overlaid.

The renderer is deliberately paranoid: CSV theory columns are re-derived
from alpha and compared at 1e-9, and disk medians must fall inside the
kappa band before anything is drawn. A figure that silently plotted
inconsistent data would defeat its purpose as a cross-check artifact.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from . import theory
from .records import RatioRow, read_records

CURVE_FAMILIES = ("kappa-bounds", "clique-bound", "girg-ratio")

_THEORY_COLUMNS = (
    ("kappa_lower_const", theory.kappa_lower),
    ("kappa_upper_const", theory.kappa_upper),
    ("clique_upper_const", theory.clique_upper),
    ("girg_ratio_const", theory.girg_ratio),
)


class TheoryMismatchError(ValueError):
    """A CSV theory column disagrees with client-side recomputation."""


class BandViolationError(ValueError):
    """A disk median kappa/sigma falls outside the drawn kappa band."""


@dataclass(frozen=True)
class PlotSpec:
    """What to render: input records, output image, curve families, overlay."""

    csv_path: str
    out_path: str
    alpha_range: tuple[float, float] = (0.5, 1.0)
    curves: frozenset[str] = field(
        default_factory=lambda: frozenset(CURVE_FAMILIES)
    )
    overlay: bool = True

    def __post_init__(self):
        lo, hi = self.alpha_range
        if not 0.5 <= lo < hi <= 1.0:
            raise ValueError(
                f"alpha range must sit inside [0.5, 1.0], got ({lo}, {hi})"
            )
        unknown = self.curves - set(CURVE_FAMILIES)
        if unknown:
            raise ValueError(f"unknown curve families: {sorted(unknown)}")
        if not self.curves:
            raise ValueError("at least one curve family is required")


def _check_theory_columns(rows: list[RatioRow]) -> None:
    for row in rows:
        for column, fn in _THEORY_COLUMNS:
            stored = getattr(row, column)
            fresh = fn(row.alpha)
            if abs(stored - fresh) > 1e-9:
                raise TheoryMismatchError(
                    f"{column} at alpha={row.alpha} (model={row.model}, "
                    f"seed={row.seed}): file has {stored!r}, recomputation "
                    f"gives {fresh!r}"
                )


def _usable(row: RatioRow) -> bool:
    return row.error is None and row.kappa is not None and row.sigma is not None


def _median_pools(rows: list[RatioRow]) -> dict[tuple[str, float], dict]:
    pools: dict[tuple[str, float], list[float]] = {}
    for row in rows:
        if not _usable(row):
            continue
        if row.sigma == 0:
            raise ValueError(
                f"row (model={row.model}, n={row.n}, alpha={row.alpha}, "
                f"seed={row.seed}) has sigma = 0; kappa/sigma is undefined"
            )
        pools.setdefault((row.model, row.alpha), []).append(row.kappa / row.sigma)
    return {
        key: dict(
            median=statistics.median(vals),
            low=min(vals),
            high=max(vals),
            count=len(vals),
        )
        for key, vals in sorted(pools.items())
    }


def _check_disk_medians(pools: dict[tuple[str, float], dict]) -> None:
    for (model, alpha), stats in pools.items():
        if model == "girg":
            continue
        lo, hi = theory.kappa_lower(alpha), theory.kappa_upper(alpha)
        if not lo <= stats["median"] <= hi:
            raise BandViolationError(
                f"median kappa/sigma {stats['median']:.4f} for model={model} "
                f"at alpha={alpha} lies outside the kappa band "
                f"[{lo:.4f}, {hi:.4f}]"
            )


def render_ratio_plot(spec: PlotSpec) -> str:
    """Validate the records, then draw the figure; returns the output path."""
    rows = read_records(spec.csv_path)
    _check_theory_columns(rows)
    pools = _median_pools(rows) if spec.overlay else {}
    if spec.overlay and not pools:
        raise ValueError(
            f"{spec.csv_path}: overlay requested but the file has no usable "
            "rows (no clean record carries both kappa and sigma)"
        )
    _check_disk_medians(pools)

    lo, hi = spec.alpha_range
    # the ratio constants blow up at alpha = 1/2, so curves stop just inside
    grid = np.linspace(max(lo, 0.505), min(hi, 0.995), 197)

    fig = Figure(figsize=(7.0, 4.5), dpi=150)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)

    if "kappa-bounds" in spec.curves:
        ax.plot(grid, [theory.kappa_lower(a) for a in grid], color="#1f77b4",
                label="degeneracy lower (disk)")
        ax.plot(grid, [theory.kappa_upper(a) for a in grid], color="#1f77b4",
                linestyle="--", label="degeneracy upper (disk)")
    if "clique-bound" in spec.curves:
        ax.plot(grid, [theory.clique_upper(a) for a in grid], color="#2ca02c",
                linestyle="-.", label="clique upper (disk)")
    if "girg-ratio" in spec.curves:
        ax.plot(grid, [theory.girg_ratio(a) for a in grid], color="#d62728",
                linestyle=":", label="degeneracy (torus)")

    disk = [(a, s) for (m, a), s in pools.items() if m != "girg"]
    torus = [(a, s) for (m, a), s in pools.items() if m == "girg"]
    for points, colour, marker, label in (
        (disk, "#1f77b4", "o", "disk median"),
        (torus, "#d62728", "s", "torus median"),
    ):
        if not points:
            continue
        xs = [a for a, _ in points]
        med = [s["median"] for _, s in points]
        err = np.array(
            [[s["median"] - s["low"] for _, s in points],
             [s["high"] - s["median"] for _, s in points]]
        )
        ax.errorbar(xs, med, yerr=err, fmt=marker, color=colour,
                    markersize=5, capsize=3, linestyle="none", label=label)

    ax.set_xlim(lo, hi)
    ax.set_xlabel("alpha")
    ax.set_ylabel("multiple of the core size")
    ax.set_title("Graph parameters relative to the core")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    return spec.out_path
