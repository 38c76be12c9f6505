"""Gas models defined by a Massieu-Planck potential phi(T, rho).

Two models are built in: the ideal gas and the van der Waals gas in
reduced variables (critical point at T = rho = p = 1).  Every thermodynamic
quantity follows from phi and its partial derivatives:

    p = -rho**2 * T * phi_rho,    e = T**2 * phi_T,    s = phi + T * phi_T

All functions accept scalars or numpy arrays and broadcast.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoSpinodal

# distance from rho = 0 or rho = 3 below which the vdW logarithm is refused
DOMAIN_EPS = 1e-12


class GasKind(str, enum.Enum):
    IDEAL = "ideal"
    VDW = "vdw"


@dataclass(frozen=True)
class ThermoModel:
    """A gas model.

    Parameters
    ----------
    kind : GasKind
        ``GasKind.IDEAL`` or ``GasKind.VDW``.
    n : float
        Degrees of freedom.
    R : float
        Gas constant. Only the ideal gas uses it; the van der Waals model
        works in reduced units.
    """

    kind: GasKind
    n: float = 3.0
    R: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GasKind(self.kind))
        if not self.n > 0:
            raise DomainError(f"degrees of freedom must be positive, got {self.n}")
        if not self.R > 0:
            raise DomainError(f"gas constant must be positive, got {self.R}")

    @classmethod
    def ideal(cls, n=3.0, R=1.0):
        return cls(GasKind.IDEAL, n, R)

    @classmethod
    def van_der_waals(cls, n=3.0):
        return cls(GasKind.VDW, n)

    @property
    def is_vdw(self):
        return self.kind is GasKind.VDW

    @property
    def entropy_offset(self):
        """Constant subtracted from phi + T*phi_T to get the tabulated entropy."""
        return 4.0 * self.n / 3.0 if self.is_vdw else 0.0


class PotentialDerivs(NamedTuple):
    phi: np.ndarray
    phi_T: np.ndarray
    phi_rho: np.ndarray
    phi_TT: np.ndarray
    phi_rhorho: np.ndarray
    phi_Trho: np.ndarray


class StatePoint(NamedTuple):
    T: np.ndarray
    rho: np.ndarray
    p: np.ndarray
    e: np.ndarray
    s: np.ndarray


class KappaForm(NamedTuple):
    """Coefficients of kappa restricted to the state manifold.

    kappa = k_TT dT.dT + k_rr drho.drho; the state is an applicable
    (stable) phase where both coefficients are negative.
    """

    k_TT: np.ndarray
    k_rr: np.ndarray

    @property
    def applicable(self):
        return np.logical_and(self.k_TT < 0, self.k_rr < 0)


def check_domain(model: ThermoModel, T=None, rho=None):
    if T is not None and np.any(~(np.asarray(T) > 0)):
        raise DomainError(f"temperature must be positive, got {T}")
    if rho is None:
        return
    r = np.asarray(rho)
    if model.is_vdw:
        if np.any(~((r > DOMAIN_EPS) & (r < 3.0 - DOMAIN_EPS))):
            raise DomainError(f"van der Waals density must lie in (0, 3), got {rho}")
    elif np.any(~(r > 0)):
        raise DomainError(f"density must be positive, got {rho}")


def phi(model: ThermoModel, T, rho) -> PotentialDerivs:
    """Massieu-Planck potential and its partial derivatives up to second order."""
    check_domain(model, T, rho)
    T = np.asarray(T, dtype=float)
    rho = np.asarray(rho, dtype=float)
    n = model.n
    if model.is_vdw:
        val = 4 * n / 3 * np.log(T) + 3 * rho / T + 8 / 3 * np.log(3 / rho - 1)
        phi_T = 4 * n / (3 * T) - 3 * rho / T**2
        phi_rho = 3 / T - 8 / (rho * (3 - rho))
        phi_TT = -4 * n / (3 * T**2) + 6 * rho / T**3
        phi_rhorho = 8 * (3 - 2 * rho) / (rho**2 * (3 - rho) ** 2)
        phi_Trho = -3 / T**2 + 0 * rho
    else:
        R = model.R
        # constant -n/2 makes phi + T*phi_T equal R*ln(T**(n/2)/rho) exactly
        val = R * (n / 2 * np.log(T) - np.log(rho) - n / 2)
        phi_T = R * n / (2 * T) + 0 * rho
        phi_rho = -R / rho + 0 * T
        phi_TT = -R * n / (2 * T**2) + 0 * rho
        phi_rhorho = R / rho**2 + 0 * T
        phi_Trho = 0 * T * rho
    return PotentialDerivs(val, phi_T, phi_rho, phi_TT, phi_rhorho, phi_Trho)


def eval_state(model: ThermoModel, T, rho) -> StatePoint:
    d = phi(model, T, rho)
    T = np.asarray(T, dtype=float)
    rho = np.asarray(rho, dtype=float)
    p = -(rho**2) * T * d.phi_rho
    e = T**2 * d.phi_T
    s = d.phi + T * d.phi_T - model.entropy_offset
    return StatePoint(T, rho, p, e, s)


def pressure(model: ThermoModel, T, rho):
    return eval_state(model, T, rho).p


def gibbs_reduced(model: ThermoModel, T, rho):
    """phi + rho*phi_rho, which equals -gamma/T for the specific Gibbs potential gamma."""
    d = phi(model, T, rho)
    return d.phi + np.asarray(rho) * d.phi_rho


def kappa(model: ThermoModel, T, rho) -> KappaForm:
    d = phi(model, T, rho)
    T = np.asarray(T, dtype=float)
    rho = np.asarray(rho, dtype=float)
    k_TT = -(2 * d.phi_T / T + d.phi_TT)
    k_rr = 2 * d.phi_rho / rho + d.phi_rhorho
    return KappaForm(k_TT, k_rr)


def spinodal_T(model: ThermoModel, rho):
    """Temperature at which k_rr vanishes for the given density."""
    if not model.is_vdw:
        raise NoSpinodal("the ideal gas kappa form is negative definite everywhere")
    check_domain(model, rho=rho)
    rho = np.asarray(rho, dtype=float)
    return rho * (3 - rho) ** 2 / 4


def spinodal_densities(model: ThermoModel, T):
    """The two densities (gas side, liquid side) where the isotherm T has dp/drho = 0.

    Valid for 0 < T < 1; at T = 1 both collapse to the critical density.
    """
    if not model.is_vdw:
        raise NoSpinodal("the ideal gas has no spinodal")
    if not 0 < T <= 1:
        raise DomainError(f"spinodal densities exist only for 0 < T <= 1, got {T}")
    if T == 1:
        return 1.0, 1.0

    def cubic(r):
        return r * (3 - r) ** 2 - 4 * T

    lo = brentq(cubic, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    hi = brentq(cubic, 1.0, 3.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return lo, hi


def central_step(x):
    return 1e-5 * max(1.0, abs(x))


def lagrangian_residual(
    P: Callable[[float, float], float],
    E: Callable[[float, float], float],
    T: float,
    rho: float,
) -> float:
    """Mismatch of the Lagrangian condition (-P/(rho**2 T))_T = (E/T**2)_rho.

    Derivatives are central differences, so P and E can be any callables.
    A pair generated by one Massieu-Planck potential gives a value near zero.
    """
    hT = central_step(T)
    hr = central_step(rho)

    def lhs(t):
        return -P(t, rho) / (rho**2 * t)

    def rhs(r):
        return E(T, r) / T**2

    d_lhs = (lhs(T + hT) - lhs(T - hT)) / (2 * hT)
    d_rhs = (rhs(rho + hr) - rhs(rho - hr)) / (2 * hr)
    return float(abs(d_lhs - d_rhs))
