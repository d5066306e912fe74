"""
Dressed-state algebra for a two-level atom driven by a classical field.

Units: hbar = 1, frequencies in units of the cavity coupling g, lengths in
units of 1/k, momenta in units of hbar*k and times in units of 1/g.  The
atomic mass only enters through the kinetic coefficient
epsilon = hbar k^2 / (2 m g).

The dressed basis is

    |Phi_1> = a |g> + b e^{-i phi_L} |e>
    |Phi_2> = -e^{i phi_L} b |g> + a |e>

with a, b >= 0 real, a^2 = (1 + delta/Omega)/2, b^2 = (1 - delta/Omega)/2 and
Omega = sqrt(delta^2 + 4 lambda^2 u_L^2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

Config = Literal["A", "B"]

# Slack on Omega >= |delta|: sqrt(delta**2) may round one ulp below |delta|.
_OMEGA_RTOL = 1e-12


_LABELS = {"lam": "lambda"}


@dataclass(frozen=True)
class PhysicalParams:
    g: float = 1.0
    lam: float = 0.0
    delta: float = 0.0
    phi_L: float = 0.0
    phi_c: float = 0.0
    gamma: float = 0.0
    kappa: float = 0.0
    k: float = 1.0
    epsilon: float = 0.0
    uL0: float = 1.0
    t_int: float = 0.0
    # Gaussian drive width along z and longitudinal velocity; only the
    # adiabaticity diagnostics and the profile quadrature read these.
    delta_z: float = 1.0
    v_z: float | None = None

    def __post_init__(self):
        for name in ("g", "lam", "delta", "phi_L", "phi_c", "gamma", "kappa",
                     "k", "epsilon", "uL0", "t_int", "delta_z"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{_LABELS.get(name, name)} must be finite, got {value!r}")
        if self.g <= 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if self.k <= 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.delta_z <= 0:
            raise ValueError(f"delta_z must be positive, got {self.delta_z}")
        for name in ("lam", "gamma", "kappa", "epsilon", "t_int", "uL0"):
            if getattr(self, name) < 0:
                raise ValueError(f"{_LABELS.get(name, name)} must be non-negative, got {getattr(self, name)}")
        if self.v_z is not None and not (math.isfinite(self.v_z) and self.v_z > 0):
            raise ValueError(f"v_z must be positive, got {self.v_z}")

    @classmethod
    def from_d(cls, d: float, gt: float, *, delta: float = 1.0, uL0: float = 1.0,
               g: float = 1.0, **kwargs) -> "PhysicalParams":
        """Build parameters from the drive strength d = 4 lambda^2 uL0^2 / delta^2
        and the dimensionless interaction time g*t."""
        if d < 0:
            raise ValueError(f"d must be non-negative, got {d}")
        if delta == 0:
            raise ValueError("d is undefined at delta = 0; pass lam directly")
        if uL0 <= 0:
            raise ValueError("uL0 must be positive to realise a given d")
        lam = math.sqrt(d) * abs(delta) / (2.0 * uL0)
        return cls(g=g, lam=lam, delta=delta, uL0=uL0, t_int=gt / g, **kwargs)

    @property
    def omega0(self) -> float:
        """Rabi frequency at the drive peak."""
        return float(rabi_frequency(self.delta, self.lam, self.uL0))

    @property
    def gt(self) -> float:
        return self.g * self.t_int

    @property
    def d(self) -> float:
        if self.delta == 0:
            return math.inf if self.lam * self.uL0 > 0 else 0.0
        return 4.0 * self.lam**2 * self.uL0**2 / self.delta**2

    @property
    def phase(self) -> float:
        """Relative phase phi_L - phi_c entering the deflection amplitudes."""
        return self.phi_L - self.phi_c

    def coefficients(self) -> "DressedCoefficients":
        return dressed_coefficients(self.delta, self.omega0)


@dataclass(frozen=True)
class DressedCoefficients:
    omega_rabi: float
    a: float
    b: float


@dataclass(frozen=True)
class DressedState:
    coeff_g: complex
    coeff_e: complex

    def vector(self) -> np.ndarray:
        return np.array([self.coeff_g, self.coeff_e], dtype=complex)


@dataclass(frozen=True)
class DoublyDressedState:
    """Superposition over |Phi_i>|n>; entries are (i, n, amplitude) with i in {1, 2}."""

    entries: tuple[tuple[int, int, complex], ...] = field(default_factory=tuple)

    def amplitude(self, i: int, n: int) -> complex:
        return sum((c for (j, m, c) in self.entries if j == i and m == n), 0j)

    def inner(self, other: "DoublyDressedState") -> complex:
        """<self|other>."""
        keys = {(i, n) for (i, n, _) in self.entries} | {(i, n) for (i, n, _) in other.entries}
        return sum(self.amplitude(i, n).conjugate() * other.amplitude(i, n) for (i, n) in keys)


def rabi_frequency(delta, lam, uL):
    """Generalised Rabi frequency sqrt(delta^2 + 4 lambda^2 uL^2); broadcasts over arrays."""
    if np.any(np.asarray(lam) < 0):
        raise ValueError("lambda must be non-negative")
    return np.hypot(delta, 2.0 * np.multiply(lam, uL))


def dressed_coefficients(delta: float, omega: float) -> DressedCoefficients:
    if omega <= 0:
        raise ValueError("omega must be positive (no fields: dressed basis undefined)")
    if omega < abs(delta) * (1.0 - _OMEGA_RTOL):
        raise ValueError(f"omega={omega} is smaller than |delta|={abs(delta)}")
    ratio = min(1.0, max(-1.0, delta / omega))
    a = math.sqrt(0.5 * (1.0 + ratio))
    b = math.sqrt(0.5 * (1.0 - ratio))
    return DressedCoefficients(omega_rabi=float(omega), a=a, b=b)


def quasienergies(omega_g: float, omega_e: float, delta: float, omega: float) -> tuple[float, float]:
    """Quasienergies (omega_1, omega_2) of the two Floquet states."""
    if omega < abs(delta) * (1.0 - _OMEGA_RTOL):
        raise ValueError(f"omega={omega} is smaller than |delta|={abs(delta)}")
    shift = 0.5 * (delta - omega)
    return omega_g + shift, omega_e - shift


def dressed_states(coeffs: DressedCoefficients, phi_L: float) -> tuple[DressedState, DressedState]:
    a, b = coeffs.a, coeffs.b
    phi1 = DressedState(coeff_g=complex(a), coeff_e=b * cmath.exp(-1j * phi_L))
    phi2 = DressedState(coeff_g=-b * cmath.exp(1j * phi_L), coeff_e=complex(a))
    return phi1, phi2


def decompose_ground(coeffs: DressedCoefficients, phi_L: float) -> tuple[complex, complex]:
    """Amplitudes (c1, c2) with |g> = c1 |Phi_1> + c2 |Phi_2>."""
    return complex(coeffs.a), -coeffs.b * cmath.exp(-1j * phi_L)


def doubly_dressed_basis(config: Config, n: int, phi_L: float, phi_c: float,
                         delta_t_phase: float = 0.0) -> tuple[DoublyDressedState, DoublyDressedState]:
    """The (+, -) pair of doubly-dressed states built on photon number n.

    Config A (cavity on the red sideband) pairs |Phi_1>|n> with |Phi_2>|n+1>,
    config B (blue sideband) pairs |Phi_1>|n+1> with |Phi_2>|n>.
    """
    if int(n) != n or n < 0:
        raise ValueError(f"photon number must be a non-negative integer, got {n!r}")
    n = int(n)
    s = 1.0 / math.sqrt(2.0)
    if config == "A":
        ph = cmath.exp(1j * (delta_t_phase + phi_c - 2.0 * phi_L))
        first, second = (1, n), (2, n + 1)
    elif config == "B":
        ph = cmath.exp(1j * (delta_t_phase - phi_c))
        first, second = (1, n + 1), (2, n)
    else:
        raise ValueError(f"config must be 'A' or 'B', got {config!r}")
    plus = DoublyDressedState(((*first, complex(s)), (*second, s * ph)))
    minus = DoublyDressedState(((*first, complex(s)), (*second, -s * ph)))
    return plus, minus


def raman_coefficients(coeffs: DressedCoefficients, phi_L: float) -> np.ndarray:
    """Static parts of the matrix elements A_ji = <Phi_j| sigma_-(t) |Phi_i>.

    Returns the 2x2 array [[A_11, A_12], [A_21, A_22]] with the time-dependent
    factors dropped: A_11 and A_22 carry exp(-i(omega_L t + phi_L)), A_12
    carries exp(-i(omega_L + Omega) t) and A_21 carries
    exp(-i(omega_L + Omega) t - 2 i phi_L).  Only the phi_L parts are kept.
    """
    a, b = coeffs.a, coeffs.b
    e1 = cmath.exp(-1j * phi_L)
    return np.array([
        [a * b * e1, a * a],
        [-b * b * cmath.exp(-2j * phi_L), -a * b * e1],
    ], dtype=complex)
