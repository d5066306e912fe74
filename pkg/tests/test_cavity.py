import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dressedwave.cavity import CavityFieldState, coherent, custom, fock, poisson_weights


def test_vacuum():
    state = fock(0, 0)
    assert state.n_max == 0 and state.c(0) == 1


def test_fock_two_in_five():
    state = fock(2, 5)
    expected = np.zeros(6)
    expected[2] = 1
    assert np.array_equal(state.amplitudes, expected)


def test_fock_rejects_out_of_range():
    with pytest.raises(ValueError):
        fock(3, 2)


@given(st.integers(0, 30), st.integers(0, 30))
def test_fock_norm(n, extra):
    assert np.sum(np.abs(fock(n, n + extra).amplitudes) ** 2) == 1


def test_coherent_zero_is_vacuum():
    state = coherent(0, 1e-3)
    assert state.n_max == 0 and state.c(0) == 1


def test_coherent_vacuum_weight():
    # Poisson weight of n = 0 before renormalisation
    assert poisson_weights(1.0, 0)[0] == pytest.approx(math.exp(-1), rel=1e-15)
    state = coherent(1.0, 1e-8)
    assert abs(state.c(0)) ** 2 == pytest.approx(math.exp(-1), rel=1e-7)


def test_coherent_mean_photon_number():
    state = coherent(2.0, 1e-8)
    n = np.arange(state.n_max + 1)
    brute = sum(k * abs(c) ** 2 for k, c in zip(n, state.amplitudes))
    assert brute == pytest.approx(4.0, abs=1e-6)


def test_coherent_truncation_is_minimal():
    mu, tol = 4.0, 1e-8
    state = coherent(2.0, tol)
    w = poisson_weights(2.0, 200)
    # discarded probability mass at and beyond the cutoff, summed directly
    beyond = lambda n: math.fsum(w[n:])
    assert beyond(state.n_max) < tol
    assert beyond(state.n_max - 1) >= tol


def test_coherent_phase():
    state = coherent(1j * 1.5, 1e-10)
    assert np.angle(state.amplitudes[1]) == pytest.approx(math.pi / 2)


@given(st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False),
       st.sampled_from([1e-4, 1e-6, 1e-8, 1e-10, 1e-12]))
def test_coherent_invariants(alpha, tol):
    state = coherent(alpha, tol)
    assert abs(np.sum(np.abs(state.amplitudes) ** 2) - 1) < 1e-10
    mu = abs(alpha) ** 2
    assert abs(state.mean_photon_number() - mu) <= tol * mu + 1e-9


def test_custom_normalises():
    assert np.allclose(custom([1, 1]).amplitudes, [2 ** -0.5, 2 ** -0.5])
    assert np.allclose(custom([0, 3]).amplitudes, [0, 1])


def test_custom_round_trip():
    amps = np.array([1, 1j]) / math.sqrt(2)
    assert np.allclose(custom(amps).amplitudes, amps, atol=1e-16)


@pytest.mark.parametrize("bad", [[0, 0], []])
def test_custom_rejects_degenerate(bad):
    with pytest.raises(ValueError):
        custom(bad)


def test_state_validates_norm():
    with pytest.raises(ValueError):
        CavityFieldState(np.array([1.0, 1.0]))


def test_padding_beyond_truncation():
    state = fock(1, 1)
    assert state.c(2) == 0 and state.padded(4).tolist() == [0, 1, 0, 0]
