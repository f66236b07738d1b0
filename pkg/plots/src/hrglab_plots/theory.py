"""Client-side recomputation of the per-alpha theory constants.

These duplicate the producer's formulas on purpose: the figure
cross-validates every CSV theory column against this module, so a producer
that starts writing different constants is detected instead of plotted.
"""

import math


def _exponent(alpha: float) -> float:
    return (1.0 - alpha) / (2.0 * alpha - 1.0)


def kappa_lower(alpha: float) -> float:
    """Lower curve for the degeneracy-to-core ratio on the disk."""
    base = 2.0 * (1.0 - alpha) / (0.5 * math.pi - alpha * (math.pi - 2.0))
    return (4.0 / math.pi) * base ** _exponent(alpha)


def kappa_upper(alpha: float) -> float:
    """Upper curve for the degeneracy-to-core ratio on the disk."""
    return (4.0 / 3.0) ** alpha


def clique_upper(alpha: float) -> float:
    """Upper curve for the clique-to-core ratio on the disk."""
    return (4.0 / 3.0) ** (0.5 * alpha)


def girg_ratio(alpha: float) -> float:
    """Degeneracy-to-core ratio constant on the torus."""
    return 2.0 * (2.0 * (1.0 - alpha)) ** _exponent(alpha)
