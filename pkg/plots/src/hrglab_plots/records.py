"""Reader for the v1 record CSV, pinned to the documented schema.

Any deviation from the expected tag line or header raises SchemaError
instead of guessing: silently tolerating drift would let a renamed or
reordered column feed wrong numbers into a figure.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

FORMAT_TAG = "# hrglab-records-v1"

COLUMNS = (
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


class SchemaError(ValueError):
    """The file does not conform to the v1 record schema."""


@dataclass(frozen=True)
class RatioRow:
    """The slice of one record this package consumes."""

    model: str
    n: int
    alpha: float
    seed: int
    sigma: int | None
    kappa: int | None
    kappa_lower_const: float
    kappa_upper_const: float
    clique_upper_const: float
    girg_ratio_const: float
    error: str | None


def _int_or_none(text: str) -> int | None:
    return None if text == "" else int(text)


def read_records(path) -> list[RatioRow]:
    """Parse a v1 record CSV into ratio rows; header-only files give []."""
    with open(path, newline="") as fh:
        tag = fh.readline().rstrip("\n")
        if tag != FORMAT_TAG:
            raise SchemaError(
                f"{path}: format tag {tag!r} does not match {FORMAT_TAG!r}"
            )
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(COLUMNS):
            raise SchemaError(f"{path}: header deviates from the v1 column list")
        field = {name: i for i, name in enumerate(COLUMNS)}
        rows = []
        for lineno, raw in enumerate(reader, start=3):
            if len(raw) != len(COLUMNS):
                raise SchemaError(
                    f"{path}:{lineno}: {len(raw)} fields, expected {len(COLUMNS)}"
                )
            try:
                rows.append(
                    RatioRow(
                        model=raw[field["model"]],
                        n=int(raw[field["n"]]),
                        alpha=float(raw[field["alpha"]]),
                        seed=int(raw[field["seed"]]),
                        sigma=_int_or_none(raw[field["sigma"]]),
                        kappa=_int_or_none(raw[field["kappa"]]),
                        kappa_lower_const=float(raw[field["kappa_lower_const"]]),
                        kappa_upper_const=float(raw[field["kappa_upper_const"]]),
                        clique_upper_const=float(raw[field["clique_upper_const"]]),
                        girg_ratio_const=float(raw[field["girg_ratio_const"]]),
                        error=raw[field["error"]] or None,
                    )
                )
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from exc
        return rows
