"""Closed-form and numerical quantities of the hyperbolic disk model.

Vertices live in the disk D_R = [0, R] x [0, 2*pi) with R = 2*ln(n) + C and
radial density alpha*sinh(alpha*x) / (2*pi*(cosh(alpha*R) - 1)) per radian.
Two points are adjacent in the threshold graph when their hyperbolic distance
is at most R, equivalently when their angular difference is at most the
connection angle theta_R of their radii.

Everything here is a pure function of its inputs; radial arguments accept
floats or numpy arrays where noted. acosh and arccos arguments are clamped to
their domains so rounding at the connection threshold cannot escape them
(R stays below ~45 for any practical n, so cosh fits comfortably in a double).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_simpson

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HrgParams:
    """Threshold disk-model parameters; the disk radius is always derived."""

    n: int
    alpha: float
    C: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if not 0.5 < self.alpha < 1.0:
            raise ValueError(
                f"alpha must lie strictly inside (1/2, 1), got {self.alpha}"
            )
        if not math.isfinite(self.C):
            raise ValueError("C must be finite")

    @property
    def R(self) -> float:
        # Never stored: recomputed so it can't drift from (n, C).
        return 2.0 * math.log(self.n) + self.C


@dataclass(frozen=True)
class PolarPoint:
    """A position (radius, angle) in the disk; the angle is kept in [0, 2*pi)."""

    radius: float
    angle: float

    def __post_init__(self):
        if not (self.radius >= 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be finite and nonnegative, got {self.radius}")
        a = math.fmod(self.angle, TWO_PI)
        if a < 0.0:
            a += TWO_PI
        object.__setattr__(self, "angle", a)


class DeltaCase(enum.IntEnum):
    """Rows of the inner-ball upper-bound table, keyed by delta = r - R/2.

    Row k applies for delta >= _DELTA_THRESHOLDS[k]; selection takes the
    largest applicable row, so exact boundary values get the tighter gamma.
    """

    GE_ZERO = 0
    GE_LOG_SQRT_4_3 = 1
    GE_LOG_SQRT_2 = 2
    GE_LOG_2 = 3


_DELTA_THRESHOLDS = (
    0.0,
    0.5 * math.log(4.0 / 3.0),
    0.5 * math.log(2.0),
    math.log(2.0),
)

_GAMMAS = (1.0, 4.0 / (3.0 * math.sqrt(3.0)), 1.0 / math.sqrt(2.0), 2.0 / 3.0)


def _eta_for(case: DeltaCase, alpha: float) -> float:
    # Each row subtracts the gamma drop of the previous rows, evaluated at
    # that row's threshold exponent, so the bound stays continuous in delta.
    g0, g1, g2, g3 = _GAMMAS
    eta = 1.0 / (2.0 * alpha)
    if case >= DeltaCase.GE_LOG_SQRT_4_3:
        eta -= (1.0 - g1) * (4.0 / 3.0) ** (alpha - 0.5)
    if case >= DeltaCase.GE_LOG_SQRT_2:
        eta -= (g1 - g2) * 2.0 ** (alpha - 0.5)
    if case >= DeltaCase.GE_LOG_2:
        eta -= (g2 - g3) * 2.0 ** (2.0 * alpha - 1.0)
    return eta


def delta_case_for(delta: float) -> DeltaCase:
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    case = DeltaCase.GE_ZERO
    for k in (DeltaCase.GE_LOG_SQRT_4_3, DeltaCase.GE_LOG_SQRT_2, DeltaCase.GE_LOG_2):
        if delta >= _DELTA_THRESHOLDS[k]:
            case = k
    return case


@dataclass(frozen=True)
class InnerBallBounds:
    """Closed-form sandwich for the measure of an inner-ball."""

    lower: float
    upper: float
    gamma: float
    eta: float
    delta_case: DeltaCase

    def __post_init__(self):
        if self.gamma != _GAMMAS[self.delta_case]:
            raise ValueError("gamma does not match the selected case row")
        if not self.lower <= self.upper:
            raise ValueError(
                f"bounds are inverted: lower={self.lower!r} > upper={self.upper!r}"
            )


@dataclass(frozen=True)
class TheoryBounds:
    """Leading constants multiplying the core size sigma(G)."""

    kappa_lower_const: float
    kappa_upper_const: float
    clique_upper_const: float
    girg_ratio_const: float

    def __post_init__(self):
        if not self.kappa_lower_const <= self.kappa_upper_const:
            raise ValueError("degeneracy constants are inverted")


def distance(a: PolarPoint, b: PolarPoint) -> float:
    """Hyperbolic distance between two disk points (symmetric, total).

    cosh(d) = cosh r1 cosh r2 - sinh r1 sinh r2 cos(dphi), evaluated in the
    rearranged form cosh(r1 - r2) + 2 sinh r1 sinh r2 sin^2(dphi / 2): every
    term is nonnegative, so coincident and collinear points come out exact
    instead of losing the answer to cancellation at the acosh clamp.
    """
    half = 0.5 * (a.angle - b.angle)
    gap = 2.0 * math.sinh(a.radius) * math.sinh(b.radius) * math.sin(half) ** 2
    arg = math.cosh(a.radius - b.radius) + gap
    return math.acosh(max(arg, 1.0))


def connection_angle(r1, r2, params: HrgParams):
    """Largest angular difference at which radii (r1, r2) stay within distance R.

    Returns pi when r1 + r2 <= R (always adjacent) and 0 when even opposite
    angles leave the pair beyond R. Rejects zero radii: the angle is undefined
    at the origin, which the caller must treat as adjacent to everything
    within radius R. Accepts scalars or numpy arrays.
    """
    r1 = np.asarray(r1, dtype=np.float64)
    r2 = np.asarray(r2, dtype=np.float64)
    if np.any(r1 <= 0.0) or np.any(r2 <= 0.0):
        raise ValueError("connection angle is undefined for zero or negative radii")
    arg = (np.cosh(r1) * np.cosh(r2) - math.cosh(params.R)) / (
        np.sinh(r1) * np.sinh(r2)
    )
    out = np.arccos(np.clip(arg, -1.0, 1.0))
    return float(out) if out.ndim == 0 else out


def radial_cdf(r, params: HrgParams):
    """Probability mass of the origin ball B_0(r); strictly increasing on [0, R]."""
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0.0) or np.any(r > params.R):
        raise ValueError("radius outside [0, R]")
    a = params.alpha
    # cosh(x) - 1 written as 2*sinh(x/2)^2: no cancellation for small radii
    out = 2.0 * np.sinh(0.5 * a * r) ** 2 / (math.cosh(a * params.R) - 1.0)
    return float(out) if out.ndim == 0 else out


def radial_quantile(u, params: HrgParams):
    """Inverse of ``radial_cdf``; round-trips to 1e-12 absolute."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u < 0.0) or np.any(u > 1.0):
        raise ValueError("quantile argument outside [0, 1]")
    a = params.alpha
    t = u * (math.cosh(a * params.R) - 1.0)
    # arccosh(1 + t) via log1p avoids the (1+t)^2 - 1 cancellation at tiny u
    out = np.log1p(t + np.sqrt(t * (t + 2.0))) / a
    return float(out) if out.ndim == 0 else out


def inner_ball_measure(r: float, params: HrgParams) -> float:
    """Measure of B_u(R) intersected with B_0(r) for a point u at radius r.

    Below R/2 the intersection is the full ball B_0(r). Above, the angular
    width at radius x is the full circle for x <= R - r and 2*theta_R(x, r)
    beyond, integrated against the per-radian radial density by adaptive
    Simpson (absolute tolerance 1e-10, hard evaluation cap). The arccos clamp
    point x = R - r is the lower panel boundary by construction.
    """
    R = params.R
    if not 0.0 <= r <= R:
        raise ValueError(f"radius {r} outside [0, R]")
    if r <= 0.5 * R:
        return radial_cdf(r, params)
    a = params.alpha
    denom = TWO_PI * (math.cosh(a * R) - 1.0)
    coshR = math.cosh(R)
    coshr = math.cosh(r)
    sinhr = math.sinh(r)

    def integrand(x):
        if x == 0.0:
            return 0.0  # density vanishes; the angle's origin gap is immaterial
        arg = (math.cosh(x) * coshr - coshR) / (math.sinh(x) * sinhr)
        theta = math.acos(min(max(arg, -1.0), 1.0))
        return theta * a * math.sinh(a * x) / denom

    tail = adaptive_simpson(integrand, R - r, r)
    return radial_cdf(R - r, params) + 2.0 * tail


def inner_ball_bounds(r: float, params: HrgParams) -> InnerBallBounds:
    """Closed-form sandwich for ``inner_ball_measure`` at radius r = R/2 + delta."""
    R = params.R
    delta = r - 0.5 * R
    if delta < 0.0:
        raise ValueError(f"radius {r} is below R/2 = {0.5 * R}")
    a = params.alpha
    case = delta_case_for(delta)
    gamma = _GAMMAS[case]
    eta = _eta_for(case, a)
    scale = a * math.exp(-a * r) / (a - 0.5)
    growth = math.exp(0.5 * (2.0 * a - 1.0) * (2.0 * r - R))
    upper = scale * (gamma * growth - eta)
    lower = scale * ((2.0 / math.pi) * growth - (2.0 / math.pi - (a - 0.5) / a))
    # The two expressions coincide at delta = 0; a one-ulp inversion there is
    # rounding noise, not a violated bound.
    lower = min(lower, upper)
    return InnerBallBounds(lower=lower, upper=upper, gamma=gamma, eta=eta, delta_case=case)


def r_star(alpha: float, gamma: float, eta: float, params: HrgParams) -> float:
    """Radius maximizing the closed-form inner-ball expression for (gamma, eta)."""
    if not 0.5 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (1/2, 1), got {alpha}")
    if gamma <= 0.0 or eta <= 0.0:
        raise ValueError("gamma and eta must be positive")
    return 0.5 * params.R + math.log(alpha * eta / (gamma * (1.0 - alpha))) / (
        2.0 * alpha - 1.0
    )


def jung_covering_radius(params: HrgParams) -> float:
    """Radius of a ball covering any subset of the disk of diameter at most R."""
    return 0.5 * params.R + math.log(2.0 / math.sqrt(3.0))


def line_distance(p: PolarPoint, line_angle: float) -> float:
    """Hyperbolic distance from p to the diameter line at the given angle.

    Uses the standard right-triangle identity sinh(d) = sinh(r)*|sin(dphi)|;
    the diameter line continues through the origin, hence the plain sine.
    """
    return math.asinh(math.sinh(p.radius) * abs(math.sin(p.angle - line_angle)))


def _line_distance_array(radii, angles, line_angle):
    """Vectorized ``line_distance`` over coordinate arrays."""
    return np.arcsinh(np.sinh(radii) * np.abs(np.sin(angles - line_angle)))


def theory_bounds(alpha: float) -> TheoryBounds:
    """Leading constants (multiples of the core size) for the given alpha."""
    if not 0.5 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (1/2, 1), got {alpha}")
    expo = (1.0 - alpha) / (2.0 * alpha - 1.0)
    kappa_lower = (4.0 / math.pi) * (
        2.0 * (1.0 - alpha) / (math.pi / 2.0 - alpha * (math.pi - 2.0))
    ) ** expo
    kappa_upper = (4.0 / 3.0) ** alpha
    return TheoryBounds(
        kappa_lower_const=kappa_lower,
        kappa_upper_const=kappa_upper,
        clique_upper_const=math.sqrt(kappa_upper),  # equals (4/3)**(alpha/2)
        girg_ratio_const=2.0 * (2.0 * (1.0 - alpha)) ** expo,
    )
