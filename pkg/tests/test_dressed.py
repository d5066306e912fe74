import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dressedwave.dressed import (
    DressedCoefficients,
    PhysicalParams,
    decompose_ground,
    doubly_dressed_basis,
    dressed_coefficients,
    dressed_states,
    quasienergies,
    rabi_frequency,
    raman_coefficients,
)

mpmath.mp.dps = 40

detunings = st.floats(-50, 50, allow_nan=False)
drives = st.floats(0, 50, allow_nan=False)
amplitudes = st.floats(0, 2, allow_nan=False)
phases = st.floats(-10, 10, allow_nan=False)


def coeffs_from(delta, lam, uL):
    return dressed_coefficients(delta, rabi_frequency(delta, lam, uL))


def reconstruct(c1, c2, phi1, phi2):
    return c1 * phi1.vector() + c2 * phi2.vector()


# -- rabi_frequency ---------------------------------------------------------

def test_rabi_resonant():
    assert rabi_frequency(0.0, 1.0, 1.0) == 2.0


def test_rabi_undriven():
    assert rabi_frequency(1.0, 0.0, 0.37) == 1.0


def test_rabi_d_equals_one():
    # 4 lambda^2 uL^2 / delta^2 = 1 with delta = 1
    expected = float(mpmath.sqrt(2))
    assert rabi_frequency(1.0, 0.5, 1.0) == pytest.approx(expected, rel=1e-15)


def test_rabi_rejects_negative_coupling():
    with pytest.raises(ValueError):
        rabi_frequency(1.0, -0.1, 1.0)


@given(detunings, drives, amplitudes)
def test_rabi_square_identity(delta, lam, uL):
    omega = rabi_frequency(delta, lam, uL)
    assert omega >= abs(delta)
    drive = 4 * lam**2 * uL**2
    assert omega**2 - delta**2 == pytest.approx(drive, rel=1e-12, abs=1e-12 * max(1.0, delta**2))


# -- dressed_coefficients ---------------------------------------------------

def test_coefficients_resonance():
    c = dressed_coefficients(0.0, 3.0)
    assert c.a == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert c.b == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_coefficients_undriven():
    c = dressed_coefficients(2.0, 2.0)
    assert (c.a, c.b) == (1.0, 0.0)


def test_coefficients_d_equals_one():
    ratio = 1 / mpmath.sqrt(2)
    a2 = float((1 + ratio) / 2)
    b2 = float((1 - ratio) / 2)
    c = dressed_coefficients(1.0, math.sqrt(2))
    assert c.a**2 == pytest.approx(a2, abs=1e-15)
    assert c.b**2 == pytest.approx(b2, abs=1e-15)
    assert round(a2, 6) == 0.853553 and round(b2, 6) == 0.146447


@pytest.mark.parametrize("delta, omega", [(2.0, 1.0), (-2.0, 1.9), (0.0, 0.0)])
def test_coefficients_reject_inconsistent(delta, omega):
    with pytest.raises(ValueError):
        dressed_coefficients(delta, omega)


@given(detunings, drives.filter(lambda v: v > 1e-6), amplitudes.filter(lambda v: v > 1e-3))
def test_coefficients_invariants(delta, lam, uL):
    c = coeffs_from(delta, lam, uL)
    assert abs(c.a**2 + c.b**2 - 1) < 1e-12
    assert 0 <= c.b <= 1 and 0 <= c.a <= 1
    assert (c.a >= c.b) == (delta >= 0) or math.isclose(c.a, c.b, abs_tol=1e-12)
    flipped = coeffs_from(-delta, lam, uL)
    assert flipped.a == pytest.approx(c.b, abs=1e-12)
    assert flipped.b == pytest.approx(c.a, abs=1e-12)


# -- quasienergies ----------------------------------------------------------

def test_quasienergies_undriven():
    assert quasienergies(0.0, 1.0, 1.0, 1.0) == (0.0, 1.0)


def test_quasienergies_resonant():
    assert quasienergies(0.0, 1.0, 0.0, 2.0) == (-1.0, 2.0)


def test_quasienergies_d_equals_one():
    shift = (1 - mpmath.sqrt(2)) / 2
    w1, w2 = quasienergies(0.0, 1.0, 1.0, math.sqrt(2))
    assert w1 == pytest.approx(float(shift), abs=1e-15)
    assert w2 == pytest.approx(float(1 - shift), abs=1e-15)
    assert (round(w1, 6), round(w2, 6)) == (-0.207107, 1.207107)


@given(st.floats(-5, 5), st.floats(-5, 5), detunings, drives)
def test_quasienergy_splitting(wg, we, delta, extra):
    omega = abs(delta) + extra
    w1, w2 = quasienergies(wg, we, delta, omega)
    assert (w2 - w1) == pytest.approx((we - wg) - (delta - omega), abs=1e-9)


# -- dressed states ---------------------------------------------------------

def test_dressed_states_undriven():
    phi1, phi2 = dressed_states(DressedCoefficients(1.0, 1.0, 0.0), 0.7)
    assert np.allclose(phi1.vector(), [1, 0], atol=1e-15)
    assert np.allclose(phi2.vector(), [0, 1], atol=1e-15)


def test_dressed_states_resonance():
    s = 1 / math.sqrt(2)
    phi1, phi2 = dressed_states(DressedCoefficients(2.0, s, s), 0.0)
    assert np.allclose(phi1.vector(), [s, s], atol=1e-15)
    assert np.allclose(phi2.vector(), [-s, s], atol=1e-15)


def test_dressed_states_quarter_phase():
    s = 1 / math.sqrt(2)
    phi1, _ = dressed_states(DressedCoefficients(2.0, s, s), math.pi / 2)
    assert np.allclose(phi1.vector(), [s, -1j * s], atol=1e-15)


@given(detunings, drives.filter(lambda v: v > 1e-6), amplitudes.filter(lambda v: v > 1e-3), phases)
def test_dressed_states_orthonormal(delta, lam, uL, phi_L):
    phi1, phi2 = dressed_states(coeffs_from(delta, lam, uL), phi_L)
    basis = np.stack([phi1.vector(), phi2.vector()])
    assert np.allclose(basis.conj() @ basis.T, np.eye(2), atol=1e-12)


# -- ground-state decomposition ---------------------------------------------

def test_decompose_undriven():
    assert decompose_ground(DressedCoefficients(1.0, 1.0, 0.0), 0.3) == (1, 0)


def test_decompose_resonance():
    s = 1 / math.sqrt(2)
    c1, c2 = decompose_ground(DressedCoefficients(2.0, s, s), 0.0)
    assert c1 == pytest.approx(s) and c2 == pytest.approx(-s)


def test_decompose_d_equals_one():
    c = dressed_coefficients(1.0, math.sqrt(2))
    c1, c2 = decompose_ground(c, 0.0)
    assert c1.real == pytest.approx(0.923880, abs=1e-6)
    assert c2.real == pytest.approx(-0.382683, abs=1e-6)
    phi1, phi2 = dressed_states(c, 0.0)
    assert np.allclose(reconstruct(c1, c2, phi1, phi2), [1, 0], atol=1e-12)


@given(detunings, drives.filter(lambda v: v > 1e-6), amplitudes.filter(lambda v: v > 1e-3), phases)
def test_decompose_recompose(delta, lam, uL, phi_L):
    c = coeffs_from(delta, lam, uL)
    c1, c2 = decompose_ground(c, phi_L)
    phi1, phi2 = dressed_states(c, phi_L)
    v = reconstruct(c1, c2, phi1, phi2)
    assert abs(v[0] - 1) < 1e-12 and abs(v[1]) < 1e-12


# -- doubly-dressed basis ---------------------------------------------------

def test_basis_config_A_vacuum():
    s = 1 / math.sqrt(2)
    plus, minus = doubly_dressed_basis("A", 0, 0.0, 0.0)
    assert plus.amplitude(1, 0) == pytest.approx(s) and plus.amplitude(2, 1) == pytest.approx(s)
    assert minus.amplitude(1, 0) == pytest.approx(s) and minus.amplitude(2, 1) == pytest.approx(-s)


def test_basis_config_B_vacuum():
    s = 1 / math.sqrt(2)
    plus, minus = doubly_dressed_basis("B", 0, 0.0, 0.0)
    assert plus.amplitude(1, 1) == pytest.approx(s) and plus.amplitude(2, 0) == pytest.approx(s)
    assert minus.amplitude(2, 0) == pytest.approx(-s)


def test_basis_phases():
    plus, _ = doubly_dressed_basis("A", 2, 0.4, 1.1, 0.3)
    s = 1 / math.sqrt(2)
    assert plus.amplitude(2, 3) == pytest.approx(s * cmath.exp(1j * (0.3 + 1.1 - 0.8)))
    plus, _ = doubly_dressed_basis("B", 2, 0.4, 1.1, 0.3)
    assert plus.amplitude(2, 2) == pytest.approx(s * cmath.exp(1j * (0.3 - 1.1)))


def test_basis_rejects_negative_n():
    with pytest.raises(ValueError):
        doubly_dressed_basis("A", -1, 0.0, 0.0)


@given(st.sampled_from("AB"), st.integers(0, 50), phases, phases, phases)
def test_basis_orthonormal(config, n, phi_L, phi_c, dphase):
    plus, minus = doubly_dressed_basis(config, n, phi_L, phi_c, dphase)
    assert abs(plus.inner(minus)) < 1e-12
    assert abs(plus.inner(plus) - 1) < 1e-12 and abs(minus.inner(minus) - 1) < 1e-12


# -- Raman coefficients -----------------------------------------------------

def test_raman_undriven():
    A = raman_coefficients(DressedCoefficients(1.0, 1.0, 0.0), 0.0)
    assert A[0, 0] == 0 and A[0, 1] == 1 and A[1, 0] == 0


def test_raman_resonance():
    s = 1 / math.sqrt(2)
    A = raman_coefficients(DressedCoefficients(2.0, s, s), 0.0)
    assert np.allclose(np.abs(A), 0.5, atol=1e-15)


@given(detunings, drives.filter(lambda v: v > 1e-6), amplitudes.filter(lambda v: v > 1e-3), phases)
def test_raman_structure(delta, lam, uL, phi_L):
    c = coeffs_from(delta, lam, uL)
    A = raman_coefficients(c, phi_L)
    assert abs(A[0, 0] + A[1, 1]) < 1e-15
    assert abs(A[0, 1]) == pytest.approx(c.a**2, abs=1e-15)
    assert abs(A[1, 0]) == pytest.approx(c.b**2, abs=1e-15)


def test_raman_matches_matrix_elements():
    # A_ji = <Phi_j| sigma_- |Phi_i> with sigma_- = |g><e|, static phases only
    c = coeffs_from(0.7, 0.9, 0.8)
    phi = 0.6
    states = [s.vector() for s in dressed_states(c, phi)]
    sigma_minus = np.array([[0, 1], [0, 0]], dtype=complex)
    brute = np.array([[states[j].conj() @ sigma_minus @ states[i] for i in range(2)] for j in range(2)])
    assert np.allclose(raman_coefficients(c, phi), brute, atol=1e-15)


# -- PhysicalParams ---------------------------------------------------------

def test_params_from_d():
    p = PhysicalParams.from_d(1.5, 50.0)
    assert p.d == pytest.approx(1.5, rel=1e-14)
    assert p.gt == 50.0


@pytest.mark.parametrize("field, value", [("g", 0.0), ("lam", -1.0), ("gamma", -0.1),
                                          ("epsilon", -1e-9), ("t_int", -1.0), ("uL0", -1.0)])
def test_params_reject_invalid(field, value):
    with pytest.raises(ValueError):
        PhysicalParams(**{field: value})
