"""Figures from hrglab record CSVs: theory curves with empirical overlays.

This package is strictly downstream of the record-file contract: it reads
the documented CSV columns and nothing else, and never samples or analyzes
graphs itself.
"""

from .figure import PlotSpec, render_ratio_plot
from .records import RatioRow, SchemaError, read_records

__all__ = [
    "PlotSpec",
    "RatioRow",
    "SchemaError",
    "read_records",
    "render_ratio_plot",
]
