import math

import numpy as np
import pytest

from gasflow import ConstraintConstants, ThermoModel, constants_from_model

# filled by tests/test_acceptance.py, reported once at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_TITLES = {
    1: "breakdown time t*",
    2: "PDE compatibility on the solution family",
    3: "single-valued at t=0, three branches at t=30",
    4: "Gibbs binodal vs equal-area construction",
    5: "critical cusp and ideal-gas stability",
    6: "A(rho) vs finite-difference p'(rho)/rho",
    7: "shock front equalities and containment",
    8: "phase-transition curve meets the shock",
    9: "grad H vs pulled-back conservation form",
}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in ACCEPTANCE_TITLES.items():
        ok, detail = ACCEPTANCE.get(k, (False, "not run"))
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")


@pytest.fixture
def vdw():
    return ThermoModel.van_der_waals(3.0)


@pytest.fixture
def ideal():
    return ThermoModel.ideal(3.0, 1.0)


@pytest.fixture
def ref():
    return ConstraintConstants.reference()


@pytest.fixture
def ref_s0():
    return 4 * math.log(6.0)


@pytest.fixture
def ideal_consts(ideal):
    return constants_from_model(ideal, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
