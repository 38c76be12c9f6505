"""Homentropic reduction s = s0 and the constants of the exact-solution family.

At constant entropy every thermodynamic variable is a function of density
alone.  The sound coefficient A(rho) = p'(rho)/rho of the reduced Euler
system then belongs to the family

    A(rho) = C1 + C5 / rho**3 * (C3 + C7/rho)**C6

and the mapping from (model, s0) to the C's is what ties the flow solutions
back to a concrete gas.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from . import thermo
from .errors import DomainError, InvalidParameter
from .thermo import ThermoModel

# free constants of the solution family used for the reference scenario
DEFAULT_C2 = 1.0
DEFAULT_ALPHA1 = 1.0
DEFAULT_ALPHA2 = 2.0
DEFAULT_ALPHA3 = 1.0


@dataclass(frozen=True)
class ConstraintConstants:
    """Constants of one exact solution.

    C1, C3, C5, C6, C7 fix A(rho) (and hence the gas and entropy level);
    C2 enters the differential constraint; alpha1..alpha3 are integration
    constants of the implicit solution.  ``s0`` and ``n`` are informational
    and may be ``None`` when the constants were given directly.
    """

    C1: float
    C2: float
    C3: float
    C5: float
    C6: float
    C7: float
    alpha1: float = DEFAULT_ALPHA1
    alpha2: float = DEFAULT_ALPHA2
    alpha3: float = DEFAULT_ALPHA3
    s0: float | None = None
    n: float | None = None

    def __post_init__(self):
        if self.alpha1 == 0:
            raise InvalidParameter("alpha1 must be non-zero")
        for bad in (-1.0, -2.0, -3.0):
            if math.isclose(self.C6, bad, rel_tol=0, abs_tol=1e-12):
                raise InvalidParameter(f"C6 = {self.C6} is an excluded value")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidParameter(f"unknown constants: {sorted(unknown)}")
        return cls(**{k: (None if v is None else float(v)) for k, v in data.items()})

    def shifted(self, **changes):
        return replace(self, **changes)

    @classmethod
    def reference(cls):
        """van der Waals, n = 3, C5 = 240 (s0 = 4 ln 6), C2 = alpha1 = alpha3 = 1, alpha2 = 2."""
        return constants_from_model(ThermoModel.van_der_waals(3.0), 4 * math.log(6.0))


def homentrope_T(model: ThermoModel, s0: float, rho):
    """Temperature along the isentrope s = s0, in closed form."""
    thermo.check_domain(model, rho=rho)
    rho = np.asarray(rho, dtype=float)
    n = model.n
    if model.is_vdw:
        return np.exp(3.0 / (4.0 * n) * (s0 - 8.0 / 3.0 * np.log(3.0 / rho - 1.0)))
    return (rho * np.exp(s0 / model.R)) ** (2.0 / n)


def homentrope_p(model: ThermoModel, s0: float, rho):
    return thermo.pressure(model, homentrope_T(model, s0, rho), rho)


def _positive_power(base, expo):
    base = np.asarray(base, dtype=float)
    if np.any(~(base > 0)):
        raise DomainError("C3 + C7/rho must be positive")
    return np.exp(expo * np.log(base))


def sound_coefficient_A(consts: ConstraintConstants, rho):
    """A(rho) = C1 + C5/rho**3 * (C3 + C7/rho)**C6."""
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho > 0)):
        raise DomainError("density must be positive")
    c = consts
    return c.C1 + c.C5 / rho**3 * _positive_power(c.C3 + c.C7 / rho, c.C6)


def sound_coefficient_dA(consts: ConstraintConstants, rho):
    """Derivative A'(rho)."""
    rho = np.asarray(rho, dtype=float)
    c = consts
    g = c.C3 + c.C7 / rho
    gp = _positive_power(g, c.C6)
    return -3.0 * c.C5 * gp / rho**4 - c.C5 * c.C6 * c.C7 * gp / (g * rho**5)


def constants_from_model(
    model: ThermoModel,
    s0: float,
    n: float | None = None,
    C2: float = DEFAULT_C2,
    alpha1: float = DEFAULT_ALPHA1,
    alpha2: float = DEFAULT_ALPHA2,
    alpha3: float = DEFAULT_ALPHA3,
) -> ConstraintConstants:
    """Constants whose A(rho) reproduces p'(rho)/rho on the isentrope s0.

    ``n`` defaults to the model's degrees of freedom.
    """
    n = float(model.n if n is None else n)
    if not n > 0:
        raise InvalidParameter(f"n must be positive, got {n}")
    C6 = -2.0 - 2.0 / n
    if model.is_vdw:
        C1, C3, C7 = -6.0, -1.0, 3.0
        C5 = 24.0 * (1.0 + 2.0 / n) * math.exp(3.0 * s0 / (4.0 * n))
    else:
        R = model.R
        C1, C3, C7 = 0.0, 0.0, 1.0
        C5 = R * (1.0 + 2.0 / n) * math.exp(2.0 * s0 / (R * n))
    return ConstraintConstants(
        C1=C1, C2=C2, C3=C3, C5=C5, C6=C6, C7=C7,
        alpha1=alpha1, alpha2=alpha2, alpha3=alpha3, s0=s0, n=n,
    )


def s0_from_C5(model: ThermoModel, C5: float, n: float | None = None) -> float:
    """Inverse of the C5 mapping in :func:`constants_from_model`."""
    n = model.n if n is None else float(n)
    if not C5 > 0:
        raise InvalidParameter(f"C5 must be positive, got {C5}")
    if model.is_vdw:
        return 4.0 * n / 3.0 * math.log(C5 / (24.0 * (1.0 + 2.0 / n)))
    R = model.R
    return R * n / 2.0 * math.log(C5 / (R * (1.0 + 2.0 / n)))
