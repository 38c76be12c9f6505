import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasflow import thermo
from gasflow.errors import DomainError, NoSpinodal
from gasflow.thermo import GasKind, ThermoModel

VDW = ThermoModel.van_der_waals(3.0)
IDEAL = ThermoModel.ideal(3.0, 1.0)

temps = st.floats(0.05, 50.0)
vdw_rho = st.floats(1e-3, 2.999)
ideal_rho = st.floats(1e-3, 1e3)


def test_critical_point_state():
    s = thermo.eval_state(VDW, 1.0, 1.0)
    assert s.p == pytest.approx(1.0, abs=1e-15)
    assert s.e == pytest.approx(1.0, abs=1e-15)


def test_ideal_pressure_and_energy():
    assert float(thermo.pressure(IDEAL, 2.0, 3.0)) == pytest.approx(6.0, rel=1e-15)
    assert float(thermo.eval_state(ThermoModel.ideal(5.0), 2.0, 1.0).e) == pytest.approx(5.0, rel=1e-15)


def test_vdw_pressure_value():
    # 8*0.9*0.5/2.5 - 3*0.25
    assert float(thermo.pressure(VDW, 0.9, 0.5)) == pytest.approx(0.69, rel=1e-14)


def test_kappa_examples():
    assert float(thermo.kappa(VDW, 1.0, 1.0).k_rr) == pytest.approx(0.0, abs=1e-14)
    assert float(thermo.kappa(VDW, 2.0, 1.0).k_rr) == pytest.approx(-3.0, rel=1e-14)
    k = thermo.kappa(IDEAL, 2.0, 3.0)
    assert float(k.k_TT) == pytest.approx(-3.0 / 8.0)
    assert float(k.k_rr) == pytest.approx(-1.0 / 9.0)


def test_vdw_k_rr_closed_form(rng):
    T = rng.uniform(0.1, 3.0, 200)
    r = rng.uniform(0.01, 2.99, 200)
    ref = 6 * (r**3 - 6 * r**2 - 4 * T + 9 * r) / (r**2 * T * (r - 3) ** 2)
    np.testing.assert_allclose(thermo.kappa(VDW, T, r).k_rr, ref, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(thermo.kappa(VDW, T, r).k_TT, -4 * 3.0 / (3 * T**2), rtol=1e-13)


def test_spinodal_values():
    assert float(thermo.spinodal_T(VDW, 1.0)) == pytest.approx(1.0)
    assert float(thermo.spinodal_T(VDW, 2.0)) == pytest.approx(0.5)
    with pytest.raises(NoSpinodal):
        thermo.spinodal_T(IDEAL, 1.0)


def test_spinodal_densities_are_pressure_extrema():
    for T in (0.3, 0.6, 0.9, 0.999):
        lo, hi = thermo.spinodal_densities(VDW, T)
        assert lo < 1.0 < hi
        for r in (lo, hi):
            assert float(thermo.kappa(VDW, T, r).k_rr) == pytest.approx(0.0, abs=1e-9)
    assert thermo.spinodal_densities(VDW, 1.0) == (1.0, 1.0)


@pytest.mark.parametrize("T,rho", [(1.0, 3.0), (1.0, 0.0), (1.0, 3.0 - 1e-13), (0.0, 1.0), (-1.0, 1.0), (1.0, 3.5)])
def test_vdw_domain_errors(T, rho):
    with pytest.raises(DomainError):
        thermo.eval_state(VDW, T, rho)


def test_ideal_domain_errors():
    with pytest.raises(DomainError):
        thermo.phi(IDEAL, 1.0, -1.0)
    with pytest.raises(DomainError):
        ThermoModel.ideal(n=0.0)
    with pytest.raises(DomainError):
        ThermoModel.ideal(R=-1.0)


def test_model_kind_coercion():
    assert ThermoModel("vdw").kind is GasKind.VDW
    with pytest.raises(ValueError):
        ThermoModel("steam")


def test_lagrangian_residual_examples():
    def P_vdw(T, r):
        return float(thermo.pressure(VDW, T, r))

    def E_vdw(T, r):
        return float(thermo.eval_state(VDW, T, r).e)

    def E_ideal(T, r):
        return float(thermo.eval_state(IDEAL, T, r).e)

    assert thermo.lagrangian_residual(P_vdw, E_vdw, 1.0, 1.0) <= 1e-8
    assert thermo.lagrangian_residual(P_vdw, E_ideal, 1.0, 1.0) > 0.1
    # d/dT(-1/(rho**2 T)) = 1 at T = rho = 1; the constant energy contributes nothing
    assert thermo.lagrangian_residual(lambda T, r: 1.0, lambda T, r: 1.0, 1.0, 1.0) == pytest.approx(1.0, rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(T=temps, rho=vdw_rho, n=st.sampled_from([3.0, 5.0, 6.0]))
def test_vdw_state_matches_closed_form(T, rho, n):
    s = thermo.eval_state(ThermoModel.van_der_waals(n), T, rho)
    assert float(s.p) == pytest.approx(8 * T * rho / (3 - rho) - 3 * rho**2, rel=1e-12, abs=1e-12)
    assert float(s.e) == pytest.approx(4 * n * T / 3 - 3 * rho, rel=1e-12, abs=1e-12)
    s_ref = 4 * n / 3 * math.log(T) + 8 / 3 * math.log(3 / rho - 1)
    assert float(s.s) == pytest.approx(s_ref, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(T=temps, rho=ideal_rho, R=st.floats(0.1, 10.0))
def test_ideal_state_matches_closed_form(T, rho, R):
    s = thermo.eval_state(ThermoModel.ideal(3.0, R), T, rho)
    assert float(s.p) == pytest.approx(R * rho * T, rel=1e-12)
    assert float(s.e) == pytest.approx(1.5 * R * T, rel=1e-12)
    assert float(s.s) == pytest.approx(R * math.log(T**1.5 / rho), rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(T=st.floats(1e-3, 1e3), rho=st.floats(1e-3, 1e3))
def test_ideal_kappa_negative_definite(T, rho):
    assert bool(thermo.kappa(IDEAL, T, rho).applicable)


@settings(max_examples=300, deadline=None)
@given(T=st.floats(0.05, 2.0), rho=st.floats(0.01, 2.99))
def test_k_rr_sign_follows_spinodal(T, rho):
    gap = float(thermo.spinodal_T(VDW, rho)) - T
    if abs(gap) < 1e-9:
        return
    assert np.sign(float(thermo.kappa(VDW, T, rho).k_rr)) == np.sign(gap)


@settings(max_examples=100, deadline=None)
@given(T=st.floats(0.3, 3.0), rho=st.floats(0.05, 2.9), model=st.sampled_from([VDW, IDEAL]))
def test_mixed_partials_symmetric(T, rho, model):
    hT, hr = thermo.central_step(T), thermo.central_step(rho)
    a = (thermo.phi(model, T, rho + hr).phi_T - thermo.phi(model, T, rho - hr).phi_T) / (2 * hr)
    b = (thermo.phi(model, T + hT, rho).phi_rho - thermo.phi(model, T - hT, rho).phi_rho) / (2 * hT)
    assert abs(a - b) <= 1e-6
    assert float(a) == pytest.approx(float(thermo.phi(model, T, rho).phi_Trho), abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(T=st.floats(0.5, 3.0), rho=st.floats(0.05, 2.9), model=st.sampled_from([VDW, IDEAL]))
def test_builtin_models_are_lagrangian(T, rho, model):
    def P(t, r):
        return float(thermo.pressure(model, t, r))

    def E(t, r):
        return float(thermo.eval_state(model, t, r).e)

    assert thermo.lagrangian_residual(P, E, T, rho) <= 1e-8


def test_critical_cusp_conditions():
    h = 1e-5
    dk = (thermo.kappa(VDW, 1.0, 1 + h).k_rr - thermo.kappa(VDW, 1.0, 1 - h).k_rr) / (2 * h)
    assert abs(float(thermo.kappa(VDW, 1.0, 1.0).k_rr)) <= 1e-8
    assert abs(float(dk)) <= 1e-8


def test_array_evaluation_matches_scalar(rng):
    T = rng.uniform(0.5, 2.0, 10)
    r = rng.uniform(0.1, 2.5, 10)
    arr = thermo.eval_state(VDW, T, r)
    for i in range(10):
        one = thermo.eval_state(VDW, T[i], r[i])
        assert float(one.p) == arr.p[i]
