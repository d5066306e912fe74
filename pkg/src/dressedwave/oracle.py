"""
Wave-packet propagation oracle for the deflection distributions.

Each doubly-dressed channel is a scalar wave packet obeying

    i d/dt psi = (epsilon p^2 + U(x)) psi,      p = -i d/dx,

with x in units of 1/k, t in units of 1/g and U in units of hbar*g.  The
channels are decoupled, so the momentum density is the incoherent sum of
|weight|^2 |psi~(p)|^2 over channels.  Nothing here uses the closed-form comb;
the agreement with ``raman_nath`` is what the oracle checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal, Sequence

import numpy as np

from .cavity import CavityFieldState
from .dressed import Config, PhysicalParams
from .errors import NormDriftError
from .potentials import interaction_alpha, interaction_beta, potential_A, potential_B
from .raman_nath import (
    MomentumDistribution,
    MomentumGrid,
    deflect_W1,
    deflect_W2,
    tv_distance,
)

Branch = Literal["+", "-", "free"]

NORM_DRIFT_LIMIT = 1e-8
PACKET_SIGMAS = 8.0
_WEIGHT2_FLOOR = 1e-30


@dataclass(frozen=True)
class SpatialGrid:
    x_min: float
    x_max: float
    n_points: int
    periodic: bool = True

    def __post_init__(self):
        n = self.n_points
        if int(n) != n or n < 64 or (int(n) & (int(n) - 1)):
            raise ValueError(f"n_points must be a power of two >= 64, got {n}")
        if not self.x_min < self.x_max:
            raise ValueError("need x_min < x_max")
        if self.periodic:
            periods = self.length / (2.0 * math.pi)
            if abs(periods - round(periods)) > 1e-9 * max(1.0, periods):
                raise ValueError("periodic domain length must be a multiple of 2*pi/k")

    @classmethod
    def periods(cls, n_periods: int, n_points: int, center: float = 0.0) -> "SpatialGrid":
        return cls(center - n_periods * math.pi, center + n_periods * math.pi, n_points)

    @classmethod
    def for_packet(cls, k_dx: float, p_extent: float, *, center_x: float = 0.0,
                   drift: float = 0.0) -> "SpatialGrid":
        """Smallest periodic grid holding the packet (plus drift) with bandwidth
        above p_extent + 12/k_dx."""
        sigma = k_dx / math.sqrt(2.0)
        reach = abs(center_x) + 1.25 * PACKET_SIGMAS * sigma + abs(drift)
        n_periods = max(1, math.ceil(reach / math.pi))
        length = 2.0 * math.pi * n_periods
        bandwidth = 1.2 * abs(p_extent) + 12.0 / k_dx
        n_points = 64
        while math.pi * n_points / length < bandwidth:
            n_points *= 2
        return cls.periods(n_periods, n_points)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return self.length / (self.n_points if self.periodic else self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @property
    def wavenumbers(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.n_points, self.dx)

    @property
    def bandwidth(self) -> float:
        return math.pi / self.dx


@dataclass(frozen=True, eq=False)
class Channel:
    photon_index: int
    branch: Branch
    weight: complex
    psi: np.ndarray
    potential: np.ndarray

    @property
    def label(self) -> str:
        return "free" if self.branch == "free" else f"{self.photon_index}{self.branch}"


@dataclass(frozen=True, eq=False)
class ChannelSet:
    channels: tuple[Channel, ...]
    config: Config
    params: PhysicalParams
    k_dx: float
    grid: SpatialGrid
    linearized: bool = False
    time: float = 0.0
    log: tuple[str, ...] = field(default_factory=tuple)

    def norms(self) -> np.ndarray:
        return np.array([np.sum(np.abs(ch.psi) ** 2) * self.grid.dx for ch in self.channels])

    def total_probability(self) -> float:
        return float(sum(abs(ch.weight) ** 2 * n for ch, n in zip(self.channels, self.norms())))


def gaussian_packet(grid: SpatialGrid, k_dx: float, center_x: float = 0.0) -> np.ndarray:
    """exp(-(x - x0)^2 / (2 dx^2)), normalised on the grid."""
    x = grid.points
    psi = np.exp(-0.5 * ((x - center_x) / k_dx) ** 2).astype(complex)
    psi /= math.sqrt(float(np.sum(np.abs(psi) ** 2)) * grid.dx)
    return psi


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


def build_channels(config: Config, field: CavityFieldState, params: PhysicalParams,
                   k_dx: float, grid: SpatialGrid, *, center_x: float = 0.0,
                   linearized: bool = False) -> ChannelSet:
    """Decompose |g> x sum_n c_n |n> x f(x) into doubly-dressed channels.

    Config A: channel (n, +-) has weight (a c_n -+ e^{i phi} b c_{n+1}) / sqrt(2)
    and potential U_{n+1}^{(+-)}; the free channel |Phi_2>|0> has weight
    -b c_0 e^{-i phi_L}.
    Config B: channel (n, +-) has weight (a c_{n+1} -+ e^{-i phi} b c_n) / sqrt(2)
    and potential V_{n+1}^{(+-)}; the free channel |Phi_1>|0> has weight a c_0.
    Here phi = phi_L - phi_c.  Channels with vanishing weight are dropped.
    """
    if not (math.isfinite(k_dx) and k_dx > 0):
        raise ValueError("k_dx must be positive")
    if not grid.periodic:
        raise ValueError("the propagator needs a periodic grid")
    sigma = k_dx / math.sqrt(2.0)
    if (center_x - PACKET_SIGMAS * sigma < grid.x_min
            or center_x + PACKET_SIGMAS * sigma > grid.x_max):
        raise ValueError(
            f"grid [{grid.x_min:.4g}, {grid.x_max:.4g}] cannot hold the packet to "
            f"{PACKET_SIGMAS:g} standard deviations around x = {center_x:.4g}")
    if grid.dx > sigma:
        raise ValueError("grid spacing is coarser than the packet width")

    coeffs = params.coefficients()
    a, b = coeffs.a, coeffs.b
    phi = params.phase
    c = field.padded(field.n_max + 2)
    x = grid.points
    psi0 = _frozen(gaussian_packet(grid, k_dx, center_x))
    s = 1.0 / math.sqrt(2.0)

    channels = []
    for n in range(field.n_max + 1):
        if config == "A":
            u_plus, u_minus = potential_A(n + 1, x, params, linearized=linearized)
            first, second = a * c[n], np.exp(1j * phi) * b * c[n + 1]
        elif config == "B":
            u_plus, u_minus = potential_B(n + 1, x, params, linearized=linearized)
            first, second = a * c[n + 1], np.exp(-1j * phi) * b * c[n]
        else:
            raise ValueError(f"config must be 'A' or 'B', got {config!r}")
        for branch, w, pot in (("+", s * (first - second), u_plus), ("-", s * (first + second), u_minus)):
            if abs(w) ** 2 > _WEIGHT2_FLOOR:
                channels.append(Channel(n, branch, complex(w), psi0, _frozen(pot)))

    free = -b * c[0] * np.exp(-1j * params.phi_L) if config == "A" else a * c[0]
    if abs(free) ** 2 > _WEIGHT2_FLOOR:
        channels.append(Channel(0, "free", complex(free), psi0, _frozen(np.zeros_like(x))))

    return ChannelSet(tuple(channels), config, params, k_dx, grid, linearized)


def default_dt(chset: ChannelSet, epsilon: float) -> float:
    """Largest step with max|U| dt <= 0.01 and epsilon k_max^2 dt <= 0.01."""
    u_max = max((float(np.max(np.abs(ch.potential))) for ch in chset.channels), default=0.0)
    kinetic = epsilon * chset.grid.bandwidth**2
    rate = max(u_max, kinetic)
    return math.inf if rate == 0.0 else 0.01 / rate


def evolve(chset: ChannelSet, epsilon: float, t: float, dt: float | None = None) -> ChannelSet:
    """Propagate every channel for time t (negative t runs backwards).

    Symmetric split-operator stepping: half kinetic step in Fourier space,
    full potential step in position space, half kinetic step.  With
    epsilon == 0 the potential commutes with everything left and the exact
    factor exp(-i U t) is applied in one shot.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if dt is None:
        dt = default_dt(chset, epsilon)
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t == 0 or not chset.channels:
        return chset

    psi = np.stack([ch.psi for ch in chset.channels])
    pot = np.stack([ch.potential for ch in chset.channels])
    dx = chset.grid.dx
    norm0 = np.sum(np.abs(psi) ** 2, axis=1) * dx

    if epsilon == 0:
        psi = psi * np.exp(-1j * pot * t)
        steps, h = 1, t
    else:
        steps = max(1, math.ceil(abs(t) / dt - 1e-12))
        h = t / steps
        k2 = chset.grid.wavenumbers ** 2
        kin_half = np.exp(-0.5j * epsilon * k2 * h)
        kin_full = kin_half * kin_half
        pot_step = np.exp(-1j * pot * h)
        psi = np.fft.fft(psi, axis=1) * kin_half
        for i in range(steps):
            psi = np.fft.ifft(psi, axis=1)
            psi *= pot_step
            psi = np.fft.fft(psi, axis=1)
            psi *= kin_full if i < steps - 1 else kin_half
        psi = np.fft.ifft(psi, axis=1)

    norm1 = np.sum(np.abs(psi) ** 2, axis=1) * dx
    drift = float(np.max(np.abs(norm1 - norm0) / norm0))
    u_max = float(np.max(np.abs(pot)))
    diag = (f"dt={abs(h):.3e} steps={steps} max|U|*dt={u_max * abs(h):.3e} "
            f"eps*k_max^2*dt={epsilon * chset.grid.bandwidth ** 2 * abs(h):.3e} "
            f"norm drift={drift:.3e}")
    if drift > NORM_DRIFT_LIMIT:
        raise NormDriftError(f"norm drift {drift:.3e} exceeds {NORM_DRIFT_LIMIT:g}; reduce dt ({diag})")

    channels = tuple(replace(ch, psi=_frozen(row)) for ch, row in zip(chset.channels, psi))
    return replace(chset, channels=channels, time=chset.time + t, log=chset.log + (diag,))


def momentum_amplitudes(chset: ChannelSet, p: np.ndarray, block: int = 512) -> np.ndarray:
    """psi~(p) = (2 pi)^(-1/2) sum_x psi(x) exp(+i p x) dx for every channel.

    Exact trigonometric interpolation of the discrete spectrum; the sign of
    the exponent sets the axis orientation shared with ``raman_nath``.
    """
    x = chset.grid.points
    psi = np.stack([ch.psi for ch in chset.channels])
    out = np.empty((psi.shape[0], p.size), dtype=complex)
    scale = chset.grid.dx / math.sqrt(2.0 * math.pi)
    for start in range(0, p.size, block):
        chunk = p[start:start + block]
        kernel = np.exp(1j * np.outer(x, chunk))
        out[:, start:start + block] = psi @ kernel * scale
    return out


def momentum_distribution(chset: ChannelSet, grid: MomentumGrid) -> MomentumDistribution:
    p = grid.points
    limit = chset.grid.bandwidth
    if np.max(np.abs(p)) > limit:
        raise ValueError(f"momentum grid reaches |p| = {np.max(np.abs(p)):.4g}, beyond the "
                         f"spatial grid bandwidth {limit:.4g}")
    density = np.zeros(p.size)
    if chset.channels:
        amps = momentum_amplitudes(chset, p)
        weights = np.array([abs(ch.weight) ** 2 for ch in chset.channels])
        density = weights @ (np.abs(amps) ** 2)
    return MomentumDistribution(grid, density, chset.k_dx)


def position_density(chset: ChannelSet) -> np.ndarray:
    """Per-channel |psi(x)|^2, one row per channel."""
    return np.stack([np.abs(ch.psi) ** 2 for ch in chset.channels])


def analytic_distribution(config: Config, field: CavityFieldState, params: PhysicalParams,
                          k_dx: float, grid: MomentumGrid | None = None) -> MomentumDistribution:
    coeffs = params.coefficients()
    if config == "A":
        return deflect_W1(field, coeffs, interaction_alpha(params), params.phase, k_dx, grid)
    return deflect_W2(field, coeffs, interaction_beta(params), params.phase, k_dx, grid)


def comb_extent(config: Config, field: CavityFieldState, params: PhysicalParams) -> float:
    shift = interaction_alpha(params) if config == "A" else interaction_beta(params)
    return shift * math.sqrt(field.n_max + 1)


@dataclass(frozen=True, eq=False)
class OracleRun:
    oracle: MomentumDistribution
    analytic: MomentumDistribution
    tv: float
    final: ChannelSet
    dt: float


def run_oracle(config: Config, field: CavityFieldState, params: PhysicalParams, k_dx: float, *,
               epsilon: float | None = None, dt: float | None = None, linearized: bool = False,
               center_x: float = 0.0, spatial: SpatialGrid | None = None,
               momentum: MomentumGrid | None = None) -> OracleRun:
    """Propagate for params.t_int and compare with the closed-form comb."""
    eps = params.epsilon if epsilon is None else epsilon
    extent = comb_extent(config, field, params)
    if spatial is None:
        drift = 2.0 * eps * (extent + 1.0 / k_dx) * params.t_int
        spatial = SpatialGrid.for_packet(k_dx, extent, center_x=center_x, drift=drift)
    analytic = analytic_distribution(config, field, params, k_dx, momentum)
    chset = build_channels(config, field, params, k_dx, spatial, center_x=center_x,
                           linearized=linearized)
    step = default_dt(chset, eps) if dt is None else dt
    final = evolve(chset, eps, params.t_int, step)
    oracle = momentum_distribution(final, analytic.grid)
    return OracleRun(oracle, analytic, tv_distance(oracle, analytic), final, step)


def raman_nath_check(params: PhysicalParams, field: CavityFieldState, config: Config,
                     k_dx: float, epsilon_list: Sequence[float], *, linearized: bool = False,
                     dt: float | None = None, center_x: float = 0.0) -> list[dict]:
    """Distance from the Raman-Nath limit as a function of the kinetic coefficient.

    For each epsilon the row holds ``tv_analytic`` (distance to the closed
    form) and ``tv_raman_nath`` (distance to the epsilon = 0 propagation of
    the same potential).  With the linearized potential the force is uniform
    and the momentum density only translates, so both stay at round-off level
    for any epsilon; the sinusoidal potential shows the approach to the limit.
    """
    eps_values = [float(e) for e in epsilon_list]
    if any(e < 0 for e in eps_values):
        raise ValueError("epsilon values must be non-negative")
    if eps_values != sorted(eps_values):
        raise ValueError("epsilon_list must be sorted ascending")
    if not eps_values:
        return []
    extent = comb_extent(config, field, params)
    drift = 2.0 * max(eps_values) * (extent + 1.0 / k_dx) * params.t_int
    spatial = SpatialGrid.for_packet(k_dx, extent, center_x=center_x, drift=drift)
    reference = run_oracle(config, field, params, k_dx, epsilon=0.0, linearized=linearized,
                           center_x=center_x, spatial=spatial)
    rows = []
    for eps in eps_values:
        run = run_oracle(config, field, params, k_dx, epsilon=eps, dt=dt, linearized=linearized,
                         center_x=center_x, spatial=spatial, momentum=reference.analytic.grid)
        rows.append({
            "epsilon": eps,
            "tv_analytic": run.tv,
            "tv_raman_nath": tv_distance(run.oracle, reference.oracle),
            "dt": run.dt,
        })
    return rows
