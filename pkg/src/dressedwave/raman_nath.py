"""
Raman-Nath momentum distributions of the deflected atom.

Each distribution is a comb of copies of the initial Gaussian

    W0(p) = k dx exp(-(k dx p)^2) / sqrt(pi)

displaced to p = +-s sqrt(n+1), with s = alpha (red sideband, W1) or
s = beta (blue sideband, W2), plus an undeflected copy at p = 0 carried by
the free channel.  Momenta are in units of hbar*k.

Axis orientation: the channel imprinted with phase exp(+i s sqrt(n+1) x) is
placed at p = -s sqrt(n+1).  ``oracle.momentum_distribution`` uses the same
orientation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .cavity import CavityFieldState
from .dressed import DressedCoefficients

PhaseConvention = Literal["uniform", "literal", "uniform_plus"]

WEIGHT_FLOOR = 1e-14
OVERLAP_WIDTHS = 4.0


@dataclass(frozen=True)
class MomentumGrid:
    p_min: float
    p_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.p_min) and math.isfinite(self.p_max)):
            raise ValueError("grid bounds must be finite")
        if not self.p_min < self.p_max:
            raise ValueError(f"need p_min < p_max, got {self.p_min}, {self.p_max}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.p_max - self.p_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, int(self.n_points))

    @classmethod
    def auto(cls, shift: float, n_max: int, k_dx: float) -> "MomentumGrid":
        """Symmetric grid covering every comb tooth by 8 widths 1/k_dx, spacing <= 0.1/k_dx.

        The point count is odd so p = 0 is a grid point.
        """
        span = abs(shift) * math.sqrt(n_max + 1) + 8.0 / k_dx
        n_points = 2 * math.ceil(span / (0.1 / k_dx)) + 1
        return cls(-span, span, n_points)


@dataclass(frozen=True)
class Peak:
    location: float
    weight: float


@dataclass(frozen=True, eq=False)
class MomentumDistribution:
    grid: MomentumGrid
    density: np.ndarray
    k_dx: float
    peaks: tuple[Peak, ...] = field(default_factory=tuple)

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.grid.points))

    def total_weight(self) -> float:
        return math.fsum(p.weight for p in self.peaks)


def w0(p, k_dx: float):
    """Initial momentum density of a Gaussian packet of width k_dx (units 1/k)."""
    p = np.asarray(p, dtype=float)
    return k_dx * np.exp(-((k_dx * p) ** 2)) / math.sqrt(math.pi)


def _check_width(k_dx):
    if not (math.isfinite(k_dx) and k_dx > 0):
        raise ValueError(f"packet width k_dx must be positive, got {k_dx}")


def initial_distribution(k_dx: float, grid: MomentumGrid) -> MomentumDistribution:
    _check_width(k_dx)
    return MomentumDistribution(grid, w0(grid.points, k_dx), k_dx, (Peak(0.0, 1.0),))


def w1_peaks(field: CavityFieldState, coeffs: DressedCoefficients, alpha: float,
             phase: float) -> list[Peak]:
    """All comb teeth of W1, including zero-weight ones.

    Tooth n sits at -+alpha sqrt(n+1) with weight |a c_n -+ e^{i phase} b c_{n+1}|^2 / 2;
    the free channel adds b^2 |c_0|^2 at p = 0.
    """
    a, b = coeffs.a, coeffs.b
    c = field.padded(field.n_max + 2)
    rot = cmath.exp(1j * phase)
    peaks = []
    for n in range(field.n_max + 1):
        shift = alpha * math.sqrt(n + 1)
        first, second = a * c[n], rot * b * c[n + 1]
        peaks.append(Peak(-shift, 0.5 * abs(first - second) ** 2))
        peaks.append(Peak(shift, 0.5 * abs(first + second) ** 2))
    peaks.append(Peak(0.0, b * b * abs(c[0]) ** 2))
    return peaks


def w2_peaks(field: CavityFieldState, coeffs: DressedCoefficients, beta: float,
             phase: float, convention: PhaseConvention = "uniform") -> list[Peak]:
    """All comb teeth of W2.

    Tooth n sits at +-beta sqrt(n+1) with weight |a c_{n+1} -+ e^{-i phase} b c_n|^2 / 2
    and the free channel adds a^2 |c_0|^2 at p = 0.  ``convention`` selects the
    rotation applied to b c_n in the two branches:

    uniform       e^{-i phase} in both (probability conserving)
    literal       e^{+i phase} at +beta, e^{-i phase} at -beta
    uniform_plus  e^{+i phase} in both (probability conserving)
    """
    a, b = coeffs.a, coeffs.b
    c = field.padded(field.n_max + 2)
    rot_up, rot_down = {
        "uniform": (cmath.exp(-1j * phase), cmath.exp(-1j * phase)),
        "literal": (cmath.exp(1j * phase), cmath.exp(-1j * phase)),
        "uniform_plus": (cmath.exp(1j * phase), cmath.exp(1j * phase)),
    }[convention]
    peaks = []
    for n in range(field.n_max + 1):
        shift = beta * math.sqrt(n + 1)
        upper = a * c[n + 1]
        peaks.append(Peak(shift, 0.5 * abs(upper - rot_up * b * c[n]) ** 2))
        peaks.append(Peak(-shift, 0.5 * abs(upper + rot_down * b * c[n]) ** 2))
    peaks.append(Peak(0.0, a * a * abs(c[0]) ** 2))
    return peaks


def _comb(peaks: list[Peak], k_dx: float, grid: MomentumGrid) -> MomentumDistribution:
    p = grid.points
    density = np.zeros_like(p)
    for peak in peaks:
        if peak.weight > 0.0:
            density += peak.weight * w0(p - peak.location, k_dx)
    kept = tuple(pk for pk in peaks if pk.weight >= WEIGHT_FLOOR)
    return MomentumDistribution(grid, density, k_dx, kept)


def deflect_W1(field: CavityFieldState, coeffs: DressedCoefficients, alpha: float,
               phase: float, k_dx: float, grid: MomentumGrid | None = None) -> MomentumDistribution:
    """Momentum distribution behind a red-sideband cavity (phase = phi_L - phi_c)."""
    _check_width(k_dx)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if grid is None:
        grid = MomentumGrid.auto(alpha, field.n_max, k_dx)
    return _comb(w1_peaks(field, coeffs, alpha, phase), k_dx, grid)


def deflect_W2(field: CavityFieldState, coeffs: DressedCoefficients, beta: float,
               phase: float, k_dx: float, grid: MomentumGrid | None = None,
               convention: PhaseConvention = "uniform") -> MomentumDistribution:
    """Momentum distribution behind a blue-sideband cavity (phase = phi_L - phi_c)."""
    _check_width(k_dx)
    if beta < 0:
        raise ValueError("beta must be non-negative")
    if grid is None:
        grid = MomentumGrid.auto(beta, field.n_max, k_dx)
    return _comb(w2_peaks(field, coeffs, beta, phase, convention), k_dx, grid)


def peak_table(dist: MomentumDistribution) -> list[dict]:
    """Peaks sorted by location with Gaussian heights and an overlap flag.

    Two peaks overlap when closer than 4/k_dx.
    """
    rows = sorted(dist.peaks, key=lambda pk: pk.location)
    min_sep = OVERLAP_WIDTHS / dist.k_dx
    height = dist.k_dx / math.sqrt(math.pi)
    table = []
    for i, pk in enumerate(rows):
        near = any(abs(pk.location - rows[j].location) < min_sep
                   for j in (i - 1, i + 1) if 0 <= j < len(rows))
        table.append({"location": pk.location, "weight": pk.weight,
                      "height": pk.weight * height, "overlaps": near})
    return table


def tv_distance(first: MomentumDistribution, second: MomentumDistribution) -> float:
    """Half the integrated absolute difference; both must share one grid."""
    if first.grid != second.grid:
        raise ValueError("distributions live on different grids")
    return 0.5 * float(np.trapezoid(np.abs(first.density - second.density), first.grid.points))
