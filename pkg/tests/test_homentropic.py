import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasflow import oracles, thermo
from gasflow.errors import DomainError, InvalidParameter
from gasflow.homentropic import (
    ConstraintConstants,
    constants_from_model,
    homentrope_p,
    homentrope_T,
    s0_from_C5,
    sound_coefficient_A,
    sound_coefficient_dA,
)
from gasflow.thermo import ThermoModel

VDW = ThermoModel.van_der_waals(3.0)
IDEAL = ThermoModel.ideal(3.0, 1.0)
S0 = 4 * math.log(6.0)


def test_homentrope_T_at_unit_log_argument():
    # 3/rho - 1 = 1 at rho = 1.5, so T = exp(s0/4)
    assert float(homentrope_T(VDW, 0.7, 1.5)) == pytest.approx(math.exp(0.7 / 4), rel=1e-15)
    assert float(homentrope_T(VDW, S0, 1.5)) == pytest.approx(6.0, rel=1e-14)


def test_homentrope_p_value():
    assert float(homentrope_p(VDW, S0, 1.5)) == pytest.approx(41.25, rel=1e-14)


def test_pressure_vanishes_at_zero_density():
    for model in (VDW, IDEAL):
        assert float(homentrope_p(model, 1.0, 1e-9)) < 1e-8


def test_homentrope_domain():
    with pytest.raises(DomainError):
        homentrope_T(VDW, 1.0, 3.0)


def test_reference_constants():
    c = ConstraintConstants.reference()
    assert (c.C1, c.C3, c.C7) == (-6.0, -1.0, 3.0)
    assert c.C6 == pytest.approx(-8.0 / 3.0, rel=1e-15)
    assert c.C5 == pytest.approx(240.0, rel=1e-13)
    assert (c.C2, c.alpha1, c.alpha2, c.alpha3) == (1.0, 1.0, 2.0, 1.0)
    assert isinstance(c.n, float)


def test_ideal_constants():
    c = constants_from_model(IDEAL, 0.0)
    assert (c.C1, c.C3, c.C7) == (0.0, 0.0, 1.0)
    assert c.C5 == pytest.approx(5.0 / 3.0, rel=1e-15)


def test_sound_coefficient_value():
    c = ConstraintConstants.reference()
    assert float(sound_coefficient_A(c, 1.5)) == pytest.approx(-6 + 240 / 3.375, rel=1e-13)
    assert float(sound_coefficient_A(c, 1.5)) == pytest.approx(
        oracles.fd_sound_coefficient(VDW, S0, 1.5), rel=1e-6)


def test_ideal_sound_coefficient_power_law():
    c = constants_from_model(IDEAL, 0.3)
    r = np.geomspace(0.01, 100, 50)
    np.testing.assert_allclose(sound_coefficient_A(c, r), c.C5 * r ** (2 / 3 - 1), rtol=1e-13)
    assert np.all(sound_coefficient_A(c, r) > 0)


def test_sound_coefficient_derivative(rng):
    c = ConstraintConstants.reference()
    for r in rng.uniform(0.05, 2.9, 20):
        fd = oracles.central_diff(lambda z: float(sound_coefficient_A(c, z)), r, 1e-6 * r)
        assert float(sound_coefficient_dA(c, r)) == pytest.approx(fd, rel=1e-6)


def test_sound_coefficient_domain():
    c = ConstraintConstants.reference()
    with pytest.raises(DomainError):
        sound_coefficient_A(c, 3.5)
    with pytest.raises(DomainError):
        sound_coefficient_A(c, -1.0)


@pytest.mark.parametrize("model,lo,hi", [(VDW, 0.05, 2.9), (IDEAL, 0.1, 10.0)])
def test_sound_coefficient_matches_isentrope(model, lo, hi):
    s0 = S0 if model.is_vdw else 0.4
    c = constants_from_model(model, s0)
    for r in np.linspace(lo, hi, 100):
        assert float(sound_coefficient_A(c, r)) == pytest.approx(
            oracles.fd_sound_coefficient(model, s0, r), rel=1e-6)


@pytest.mark.parametrize("C6", [-1.0, -2.0, -3.0])
def test_excluded_exponents(C6):
    with pytest.raises(InvalidParameter):
        ConstraintConstants(C1=0, C2=1, C3=0, C5=1, C6=C6, C7=1)


def test_alpha1_must_be_nonzero():
    with pytest.raises(InvalidParameter):
        constants_from_model(VDW, S0, alpha1=0.0)


def test_n_one_hits_excluded_exponent():
    # n = 1 gives C6 = -4; n = 2 gives C6 = -3 which is excluded
    constants_from_model(ThermoModel.van_der_waals(1.0), 0.0)
    with pytest.raises(InvalidParameter):
        constants_from_model(ThermoModel.van_der_waals(2.0), 0.0)


def test_dict_round_trip():
    c = ConstraintConstants.reference()
    assert ConstraintConstants.from_dict(c.to_dict()) == c
    with pytest.raises(InvalidParameter):
        ConstraintConstants.from_dict({**c.to_dict(), "C4": 1.0})


@settings(max_examples=100, deadline=None)
@given(s0=st.floats(-10, 20), rho=st.floats(0.01, 2.99), model=st.sampled_from([VDW, IDEAL]))
def test_entropy_round_trip(s0, rho, model):
    T = homentrope_T(model, s0, rho)
    assert float(thermo.eval_state(model, T, rho).s) == pytest.approx(s0, abs=1e-12 * max(1, abs(s0)))


@settings(max_examples=100, deadline=None)
@given(s0=st.floats(-10, 20), n=st.floats(0.5, 12), model=st.sampled_from(["vdw", "ideal"]))
def test_C5_round_trip(s0, n, model):
    m = ThermoModel.van_der_waals(n) if model == "vdw" else ThermoModel.ideal(n, 1.3)
    try:
        c = constants_from_model(m, s0)
    except InvalidParameter:
        return
    assert s0_from_C5(m, c.C5) == pytest.approx(s0, abs=1e-12 * max(1.0, abs(s0)))


@settings(max_examples=50, deadline=None)
@given(s0=st.floats(-10, 10), ds=st.floats(1e-3, 5))
def test_homentrope_monotone(s0, ds):
    r = np.linspace(0.01, 2.99, 200)
    T = homentrope_T(VDW, s0, r)
    assert np.all(np.diff(T) > 0)
    assert np.all(homentrope_T(VDW, s0 + ds, r) > T)
    assert np.all(homentrope_T(IDEAL, s0 + ds, r) > homentrope_T(IDEAL, s0, r))
