"""Photon-number amplitude vectors for the cavity mode."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CavityFieldState:
    """Pure cavity state sum_n c_n |n>, truncated at n_max."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0:
            raise ValueError("cavity state needs at least one amplitude")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"cavity state not normalised: sum |c_n|^2 = {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    def c(self, n: int) -> complex:
        """c_n, zero outside the stored range."""
        if 0 <= n <= self.n_max:
            return complex(self.amplitudes[n])
        return 0j

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, self.amplitudes.size), dtype=complex)
        out[: self.amplitudes.size] = self.amplitudes
        return out

    def mean_photon_number(self) -> float:
        n = np.arange(self.amplitudes.size)
        return float(np.sum(n * np.abs(self.amplitudes) ** 2))

    def __repr__(self):
        return f"CavityFieldState(n_max={self.n_max}, amplitudes={self.amplitudes!r})"


def fock(n: int, n_max: int | None = None) -> CavityFieldState:
    if n_max is None:
        n_max = n
    if n < 0 or n > n_max:
        raise ValueError(f"need 0 <= n <= n_max, got n={n}, n_max={n_max}")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return CavityFieldState(amps)


def coherent(alpha_c: complex, tail_tol: float = 1e-12) -> CavityFieldState:
    """Truncated coherent state with Poissonian photon statistics.

    n_max is the smallest cutoff for which both the discarded probability and
    the discarded share of the mean photon number stay below tail_tol, i.e.
    P(n >= n_max) < tail_tol.  The kept amplitudes are renormalised.
    """
    if not 0.0 < tail_tol < 1.0:
        raise ValueError("tail_tol must lie in (0, 1)")
    alpha_c = complex(alpha_c)
    if not (math.isfinite(alpha_c.real) and math.isfinite(alpha_c.imag)):
        raise ValueError("alpha_c must be finite")
    mu = abs(alpha_c) ** 2
    if mu == 0.0:
        return fock(0)
    n_max = max(1, int(mu))
    # gammainc(N, mu) = P(n >= N) for a Poisson variable of mean mu
    while gammainc(n_max, mu) >= tail_tol:
        n_max += 1
    while n_max > 1 and gammainc(n_max - 1, mu) < tail_tol:
        n_max -= 1
    n = np.arange(n_max + 1)
    log_mag = -0.5 * mu + n * math.log(abs(alpha_c)) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    amps = np.exp(log_mag) * np.exp(1j * cmath.phase(alpha_c) * n)
    amps /= math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return CavityFieldState(amps)


def custom(amplitudes) -> CavityFieldState:
    amps = np.array(amplitudes, dtype=complex).reshape(-1)
    if amps.size == 0:
        raise ValueError("amplitude list is empty")
    norm = float(np.sum(np.abs(amps) ** 2))
    if norm == 0.0 or not math.isfinite(norm):
        raise ValueError("amplitudes must have a finite, non-zero norm")
    return CavityFieldState(amps / math.sqrt(norm))


def poisson_weights(alpha_c: complex, n_max: int) -> np.ndarray:
    """Untruncated, unnormalised |c_n|^2 for n = 0..n_max."""
    mu = abs(complex(alpha_c)) ** 2
    n = np.arange(n_max + 1)
    if mu == 0.0:
        return (n == 0).astype(float)
    return np.exp(-mu + n * math.log(mu) - np.array([math.lgamma(k + 1) for k in n]))
