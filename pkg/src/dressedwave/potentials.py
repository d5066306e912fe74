"""
Scattering potentials for the doubly-dressed channels and the interaction
parameters alpha, beta that set the momentum-comb spacing.

Positions are in units of 1/k and energies in units of hbar*g.  The photon
number n passed to the potentials is the index of the upper photon state of
the coupled pair, so the channel built on the doubly-dressed state with index
m (see ``dressed.doubly_dressed_basis``) uses n = m + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .dressed import Config, PhysicalParams, rabi_frequency
from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class ModeFunctions:
    uL0: float = 1.0
    delta_z: float = 1.0

    @classmethod
    def from_params(cls, params: PhysicalParams) -> "ModeFunctions":
        return cls(uL0=params.uL0, delta_z=params.delta_z)

    @staticmethod
    def cavity_mode(x, linearized: bool = False):
        """sin(kx), or its node expansion kx when linearized."""
        x = np.asarray(x, dtype=float)
        return x.copy() if linearized else np.sin(x)

    def drive_profile(self, x, z):
        """Gaussian in z with peak uL0, flat in x."""
        z = np.asarray(z, dtype=float)
        return np.broadcast_to(self.uL0 * np.exp(-0.5 * (z / self.delta_z) ** 2),
                               np.broadcast(np.asarray(x), z).shape).copy()


@dataclass(frozen=True, eq=False)
class PotentialCurve:
    config: Config
    branch: Literal["+", "-"]
    n: int
    x: np.ndarray
    U: np.ndarray


def _check_n(n) -> int:
    if int(n) != n:
        raise ValueError(f"photon number must be an integer, got {n!r}")
    n = int(n)
    if n == 0:
        raise ValueError("n = 0 is the free channel; it has no potential")
    if n < 0:
        raise ValueError(f"photon number must be positive, got {n}")
    return n


def _mode_and_ratio(x, params: PhysicalParams, z, linearized):
    modes = ModeFunctions.from_params(params)
    u = modes.cavity_mode(x, linearized)
    uL = modes.drive_profile(x, z)
    omega = rabi_frequency(params.delta, params.lam, uL)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(omega > 0, params.delta / np.where(omega > 0, omega, 1.0), 0.0)
    return u, np.clip(ratio, -1.0, 1.0)


def potential_A(n: int, x, params: PhysicalParams, *, z=0.0, linearized: bool = False):
    """(U_plus, U_minus) for the red-sideband configuration.

    U_plus = -(g/2) u(x) (1 - delta/Omega) sqrt(n) and U_minus = -U_plus.
    """
    n = _check_n(n)
    u, ratio = _mode_and_ratio(x, params, z, linearized)
    u_plus = -(0.5 * params.g * u * (1.0 - ratio)) * math.sqrt(n)
    return _out(u_plus), _out(-u_plus)


def potential_B(n: int, x, params: PhysicalParams, *, z=0.0, linearized: bool = False):
    """(V_plus, V_minus) for the blue-sideband configuration.

    V_plus = +(g/2) u(x) (1 + delta/Omega) sqrt(n) and V_minus = -V_plus.
    """
    n = _check_n(n)
    u, ratio = _mode_and_ratio(x, params, z, linearized)
    v_plus = (0.5 * params.g * u * (1.0 + ratio)) * math.sqrt(n)
    return _out(v_plus), _out(-v_plus)


def potential_large_detuning(n: int, x, z, params: PhysicalParams):
    """Three-photon Raman potential, lowest order in lambda^2 u_L^2 / delta^2.

    U_plus = -g (lambda/delta)^2 u(x) u_L(x, z)^2 sqrt(n), U_minus = -U_plus.
    Agrees with ``potential_A`` up to relative corrections of order d.
    """
    n = _check_n(n)
    if params.delta == 0:
        raise ValueError("large-detuning form is singular at delta = 0")
    modes = ModeFunctions.from_params(params)
    u = modes.cavity_mode(x)
    uL = modes.drive_profile(x, z)
    u_plus = -(params.g * (params.lam / params.delta) ** 2 * u * uL**2) * math.sqrt(n)
    return _out(u_plus), _out(-u_plus)


def _out(arr):
    arr = np.asarray(arr, dtype=float)
    # -0.0 from negating a zero potential is harmless but noisy in CSV output
    arr = arr + 0.0
    return float(arr) if arr.ndim == 0 else arr


def potential_curves(config: Config, n: int, x, params: PhysicalParams, *,
                     linearized: bool = False) -> tuple[PotentialCurve, PotentialCurve]:
    x = np.asarray(x, dtype=float)
    if config == "A":
        plus, minus = potential_A(n, x, params, linearized=linearized)
    elif config == "B":
        plus, minus = potential_B(n, x, params, linearized=linearized)
    else:
        raise ValueError(f"config must be 'A' or 'B', got {config!r}")
    return (PotentialCurve(config, "+", int(n), x, np.atleast_1d(plus)),
            PotentialCurve(config, "-", int(n), x, np.atleast_1d(minus)))


def interaction_alpha(params: PhysicalParams, profile: Callable[[float], float] | None = None,
                      *, z0: float = 0.0, rtol: float = 1e-10) -> float:
    """Momentum-comb spacing alpha for configuration A, in units of hbar*k.

    Without a profile the drive is taken at its peak for the whole transit,
    alpha = (g t / 2)(1 - delta/Omega(0)).  With a profile u_L(z) the transit
    integral (g/2) int_0^t (1 - delta/Omega(z0 + v_z tau)) dtau is evaluated by
    adaptive Simpson; v_z defaults to 1 when params.v_z is unset.
    """
    if params.t_int <= 0:
        raise ValueError("interaction time must be positive")
    if profile is None:
        return 0.5 * params.gt * _detuning_factors(params.delta, 2.0 * params.lam * params.uL0)[0]

    v_z = params.v_z if params.v_z is not None else 1.0
    delta, lam = params.delta, params.lam

    def integrand(tau):
        return _detuning_factors(delta, 2.0 * lam * profile(z0 + v_z * tau))[0]

    return 0.5 * params.g * adaptive_simpson(integrand, 0.0, params.t_int, rtol=rtol)


def interaction_beta(params: PhysicalParams) -> float:
    """Momentum-comb spacing beta = (g t / 2)(1 + delta/Omega(0)) for configuration B."""
    if params.t_int <= 0:
        raise ValueError("interaction time must be positive")
    return 0.5 * params.gt * _detuning_factors(params.delta, 2.0 * params.lam * params.uL0)[1]


def _detuning_factors(delta: float, drive: float) -> tuple[float, float]:
    """(1 - delta/Omega, 1 + delta/Omega) with Omega = hypot(delta, drive).

    The factor that cancels for weak drive is rewritten as
    drive^2 / (Omega (Omega + |delta|)).
    """
    omega = math.hypot(delta, drive)
    if omega == 0.0:
        return 1.0, 1.0
    small = (drive / omega) * (drive / (omega + abs(delta)))
    if delta >= 0:
        return small, 2.0 - small
    return 2.0 - small, small
