import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from f1geom.analytic.arith import (chebyshev_psi, is_prime_power, mangoldt_table, phi, phi_array, prime_powers_upto,
                                   von_mangoldt)
from f1geom.analytic.constants import GLAISHER, constants, euler_gamma, zeta_prime_stencil
from f1geom.analytic.evaluators import (EM_ORDER, PoleError, digamma, hardy_z, theta, theta_asymptotic, zeta_em,
                                        zeta_em_array)

mpmath.mp.dps = 30


def _mp_zeta(s):
    return complex(mpmath.zeta(mpmath.mpc(s.real, s.imag)))


# --- zeta -------------------------------------------------------------------

@pytest.mark.parametrize("s", [2, 3, 0.5, -1, -3, 0, 1.5 + 2j, 0.5 + 14.134725j, 0.5 + 100j, -2.5 + 7j])
def test_zeta_against_mpmath(s):
    s = complex(s)
    ref = _mp_zeta(s)
    assert abs(zeta_em(s) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_zeta_special_values():
    assert zeta_em(2).real == pytest.approx(math.pi ** 2 / 6, rel=1e-13)
    assert zeta_em(-1).real == pytest.approx(-1 / 12, rel=1e-12)
    assert zeta_em(0).real == pytest.approx(-0.5, rel=1e-12)
    assert abs(zeta_em(-2)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(-4, 4), st.floats(0, 300))
def test_zeta_random_points(sigma, t):
    s = complex(sigma, t)
    if abs(s - 1) < 1e-3:
        return
    ref = _mp_zeta(s)
    assert abs(zeta_em(s) - ref) <= 1e-8 * max(1.0, abs(ref))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 0.9), st.floats(5, 200))
def test_functional_symmetry_on_conjugates(sigma, t):
    s = complex(sigma, t)
    assert zeta_em(s.conjugate()) == pytest.approx(zeta_em(s).conjugate(), abs=1e-10)


def test_zeta_pole_and_order_limits():
    with pytest.raises(PoleError):
        zeta_em(1)
    with pytest.raises(ValueError):
        zeta_em(2, m=EM_ORDER + 1)
    with pytest.raises(ValueError):
        zeta_em(-50, m=5)


def test_zeta_array_matches_scalar():
    s = np.array([2.0, 0.5 + 20j, -1.5])
    arr = zeta_em_array(s)
    # the batch shares one cutoff, so agreement is to truncation error only
    assert np.allclose(arr, [zeta_em(x) for x in s], rtol=1e-11, atol=1e-12)


# --- digamma and theta ------------------------------------------------------

@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 3.7, 10.0, 123.4])
def test_digamma_against_mpmath(x):
    assert digamma(x) == pytest.approx(float(mpmath.digamma(x)), abs=1e-13)


def test_digamma_closed_forms():
    g = constants().gamma
    assert digamma(1.0) == pytest.approx(-g, abs=1e-14)
    assert digamma(1.5) == pytest.approx(2 - g - 2 * math.log(2), abs=1e-14)
    with pytest.raises(ValueError):
        digamma(0.0)


@pytest.mark.parametrize("t", [3.0, 14.1, 50.0, 500.0, 1400.0])
def test_theta_against_mpmath(t):
    assert float(theta(t)) == pytest.approx(float(mpmath.siegeltheta(t)), abs=1e-10)


def test_theta_asymptotic_agrees_at_height():
    t = np.linspace(50, 1500, 40)
    assert np.max(np.abs(theta(t) - theta_asymptotic(t))) < 1e-10


@pytest.mark.parametrize("t", [5.0, 14.0, 17.8, 100.0, 1000.0])
def test_hardy_z_against_mpmath(t):
    assert hardy_z(t) == pytest.approx(float(mpmath.siegelz(t)), abs=1e-9)


def test_hardy_z_is_real_array_and_rejects_small_t():
    z = hardy_z(np.array([10.0, 20.0]))
    assert z.dtype == float and z.shape == (2,)
    with pytest.raises(ValueError):
        hardy_z(1.0)


# --- arithmetic -------------------------------------------------------------

def test_von_mangoldt_values():
    assert von_mangoldt(1) == 0
    assert von_mangoldt(8) == pytest.approx(math.log(2))
    assert von_mangoldt(9) == pytest.approx(math.log(3))
    assert von_mangoldt(12) == 0
    with pytest.raises(ValueError):
        von_mangoldt(0)


@given(st.integers(1, 3000))
def test_mangoldt_table_matches_trial_division(n):
    assert mangoldt_table(3001)[n] == pytest.approx(von_mangoldt(n), abs=0)


def test_mangoldt_table_is_read_only():
    with pytest.raises(ValueError):
        mangoldt_table(10)[3] = 1.0


def test_prime_powers():
    assert prime_powers_upto(16) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert not is_prime_power(1) and not is_prime_power(6)


def test_psi_and_phi_are_strict_sums():
    # the term at n = u itself is excluded
    assert chebyshev_psi(2) == 0
    assert chebyshev_psi(2.5) == pytest.approx(math.log(2))
    assert phi(2.5) == pytest.approx(2 * math.log(2))
    assert phi(10) == pytest.approx(44.55596859741424, abs=1e-12)
    assert phi(4.5) == pytest.approx(2 * math.log(2) + 3 * math.log(3) + 4 * math.log(2), abs=1e-12)
    assert phi(1.0) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(1.0, 200.0), min_size=1, max_size=20))
def test_phi_array_matches_scalar(us):
    got = phi_array(np.array(us))
    assert np.allclose(got, [phi(u) for u in us], rtol=1e-12, atol=1e-12)


# --- constants --------------------------------------------------------------

def test_euler_gamma():
    assert euler_gamma() == pytest.approx(float(mpmath.euler), abs=1e-14)


def test_zeta_prime_at_minus_one():
    ref = float(mpmath.zeta(-1, derivative=1))
    assert zeta_prime_stencil(-1.0) == pytest.approx(ref, abs=1e-8)
    assert 1 / 12 - math.log(GLAISHER) == pytest.approx(ref, abs=1e-15)


def test_derived_constants():
    c = constants()
    ratio = float(mpmath.zeta(-1, derivative=1) / mpmath.zeta(-1))
    assert c.zeta_prime_ratio == pytest.approx(ratio, abs=1e-7)
    assert c.c == pytest.approx(0.5 * (math.log(math.pi) + float(mpmath.euler)), abs=1e-13)
    assert c.c == pytest.approx(0.8609728, abs=1e-7)
    assert c.sum_inv_rho_rho1 + c.sum_inv_rho1 == pytest.approx(c.sum_inv_rho, abs=1e-15)
    assert "gamma" in c.provenance


def test_omega_at_one_equals_sum_over_rho_plus_one():
    # both closed forms of sum 1/(rho + 1) agree
    c = constants()
    assert c.omega_at_one == pytest.approx(c.sum_inv_rho1, abs=1e-12)
