"""Gas/liquid coexistence (binodal) for the van der Waals model.

A coexistence point at temperature T is a triple (p, rho_gas, rho_liq) with
equal pressure and equal reduced Gibbs potential phi + rho*phi_rho at both
densities.  The solver is a damped Newton iteration in (ln p, ln rho_gas,
rho_liq); the first point of a sweep is bracketed by a one-dimensional
search in p, later points are warm-started from their neighbour.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import thermo
from .errors import ConvergenceFailure, DomainError, NoPhaseTransition
from .thermo import ThermoModel

log = logging.getLogger(__name__)

# above this temperature the Newton Jacobian is nearly singular
NEAR_CRITICAL = 1.0 - 1e-4
NEWTON_TOL = 1e-12
NEWTON_MAXITER = 60


@dataclass(frozen=True)
class BinodalPoint:
    T: float
    p: float
    rho_gas: float
    rho_liq: float

    def as_tuple(self):
        return (self.T, self.p, self.rho_gas, self.rho_liq)


def _require_vdw(model: ThermoModel):
    if not model.is_vdw:
        raise NoPhaseTransition("the ideal gas has no phase transitions")


def landau_point(T: float) -> BinodalPoint:
    """Leading-order coexistence point just below the critical temperature."""
    tau = 1.0 - T
    w = 2.0 * np.sqrt(tau)
    return BinodalPoint(T, 1.0 - 4.0 * tau, 1.0 - w, 1.0 + w)


def isotherm_density(model: ThermoModel, T: float, p: float, branch: str) -> float:
    """Invert the isotherm p(T, rho) = p on one monotone branch.

    Parameters
    ----------
    branch : {"gas", "liquid"}
        Gas searches (0, rho_spinodal_gas), liquid searches
        (rho_spinodal_liq, 3).  Above the critical temperature the isotherm is
        monotone and both branches search the whole interval.
    """
    _require_vdw(model)
    if T >= 1.0:
        lo, hi = 0.0, 3.0
    elif branch == "gas":
        lo, hi = 0.0, thermo.spinodal_densities(model, T)[0]
    elif branch == "liquid":
        lo, hi = thermo.spinodal_densities(model, T)[1], 3.0
    else:
        raise ValueError(f"unknown branch {branch!r}")
    lo = max(lo, 2 * thermo.DOMAIN_EPS)
    hi = min(hi, 3.0 - 2 * thermo.DOMAIN_EPS)

    def f(r):
        return thermo.pressure(model, T, r) - p

    if f(lo) * f(hi) > 0:
        raise DomainError(f"pressure {p} not attained on the {branch} branch at T={T}")
    return brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def _residual(model, T, y):
    lnp, lnr1, r2 = y
    p = np.exp(lnp)
    r1 = np.exp(lnr1)
    d1 = thermo.phi(model, T, r1)
    d2 = thermo.phi(model, T, r2)
    p1 = -(r1**2) * T * d1.phi_rho
    p2 = -(r2**2) * T * d2.phi_rho
    g1 = d1.phi + r1 * d1.phi_rho
    g2 = d2.phi + r2 * d2.phi_rho
    F = np.array([p1 / p - 1.0, p2 / p - 1.0, g1 - g2])
    # dg/drho = 2 phi_rho + rho phi_rhorho, dp/drho = -T rho dg/drho
    dg1 = 2 * d1.phi_rho + r1 * d1.phi_rhorho
    dg2 = 2 * d2.phi_rho + r2 * d2.phi_rhorho
    J = np.array(
        [
            [-p1 / p, -T * r1**2 * dg1 / p, 0.0],
            [-p2 / p, 0.0, -T * r2 * dg2 / p],
            [0.0, r1 * dg1, -dg2],
        ]
    )
    return F, J


def _newton(model, T, p, r1, r2):
    """Damped Newton on the coexistence system; returns (p, r1, r2) or raises."""
    lo_sp, hi_sp = thermo.spinodal_densities(model, T)
    # the gas density is carried as its logarithm: it is exponentially small at low T
    y = np.array([np.log(p), np.log(r1), r2], dtype=float)

    def admissible(v):
        return v[1] < np.log(lo_sp) and hi_sp < v[2] < 3.0 - thermo.DOMAIN_EPS

    if not admissible(y):
        raise ConvergenceFailure("initial guess outside the stable branches", where=T)

    def abs_norm(v, F):
        # iterate on relative pressure mismatch, judge convergence on absolute mismatch
        p = np.exp(v[0])
        return max(abs(F[0]) * p, abs(F[1]) * p, abs(F[2]))

    F, J = _residual(model, T, y)
    norm = np.max(np.abs(F))
    for _ in range(NEWTON_MAXITER):
        if abs_norm(y, F) <= NEWTON_TOL:
            break
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        while lam > 1e-8:
            trial = y + lam * step
            if admissible(trial):
                F_t, J_t = _residual(model, T, trial)
                n_t = np.max(np.abs(F_t))
                if n_t < norm:
                    y, F, J, norm = trial, F_t, J_t, n_t
                    break
            lam *= 0.5
        else:
            break
    res = abs_norm(y, F)
    if res <= NEWTON_TOL:
        return float(np.exp(y[0])), float(np.exp(y[1])), float(y[2])
    raise ConvergenceFailure("coexistence Newton iteration stalled", residual=res, where=T)


def _bracketed_guess(model, T):
    """Coexistence pressure from a 1-D bracketed search on the Gibbs mismatch."""
    lo_sp, hi_sp = thermo.spinodal_densities(model, T)
    p_top = float(thermo.pressure(model, T, lo_sp)) * (1 - 1e-12)
    # below T = 27/32 the liquid spinodal pressure is negative
    p_bot = float(thermo.pressure(model, T, hi_sp))

    def mismatch(lnp):
        p = np.exp(lnp)
        r1 = isotherm_density(model, T, p, "gas")
        r2 = isotherm_density(model, T, p, "liquid")
        return thermo.gibbs_reduced(model, T, r1) - thermo.gibbs_reduced(model, T, r2)

    # the gas density vanishes exponentially in 1/T, so search in ln p
    hi = np.log(p_top)
    if p_bot > 0:
        lo = np.log(p_bot * (1 + 1e-12))
    else:
        lo = hi - 1.0
        while mismatch(lo) < 0:
            lo -= 2.0
            if lo < np.log(1e-250):
                raise ConvergenceFailure("cannot bracket coexistence pressure", where=T)
    lnp = brentq(mismatch, lo, hi, xtol=1e-14)
    p = float(np.exp(lnp))
    return p, isotherm_density(model, T, p, "gas"), isotherm_density(model, T, p, "liquid")


def binodal_at_T(model: ThermoModel, T: float, guess: BinodalPoint | None = None) -> BinodalPoint:
    """Coexisting gas and liquid densities and pressure at temperature T.

    Parameters
    ----------
    model : ThermoModel
        Must be the van der Waals model.
    T : float
        Reduced temperature, 0 < T <= 1.
    guess : BinodalPoint, optional
        Warm start (typically the neighbouring point of a sweep).

    Raises
    ------
    NoPhaseTransition
        For the ideal gas or T > 1.
    ConvergenceFailure
        If neither the warm start nor the bracketed search converges.
    """
    _require_vdw(model)
    T = float(T)
    if T > 1.0:
        raise NoPhaseTransition(f"T={T} is supercritical")
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if T == 1.0:
        return BinodalPoint(1.0, 1.0, 1.0, 1.0)
    if T > NEAR_CRITICAL:
        seed = landau_point(T)
        try:
            p, r1, r2 = _newton(model, T, seed.p, seed.rho_gas, seed.rho_liq)
        except ConvergenceFailure:
            log.warning("near-critical T=%r: returning Landau expansion", T)
            return seed
        return BinodalPoint(T, p, r1, r2)
    if guess is not None:
        try:
            p, r1, r2 = _newton(model, T, guess.p, guess.rho_gas, guess.rho_liq)
            return BinodalPoint(T, p, r1, r2)
        except ConvergenceFailure:
            log.debug("warm start failed at T=%r, bracketing", T)
    p, r1, r2 = _bracketed_guess(model, T)
    p, r1, r2 = _newton(model, T, p, r1, r2)
    return BinodalPoint(T, p, r1, r2)


def coexistence_residuals(model: ThermoModel, pt: BinodalPoint):
    """Absolute residuals of the three coexistence equations at a point."""
    s1 = thermo.eval_state(model, pt.T, pt.rho_gas)
    s2 = thermo.eval_state(model, pt.T, pt.rho_liq)
    g1 = thermo.gibbs_reduced(model, pt.T, pt.rho_gas)
    g2 = thermo.gibbs_reduced(model, pt.T, pt.rho_liq)
    return (float(s1.p - pt.p), float(s2.p - pt.p), float(g1 - g2))


def binodal_curve(model: ThermoModel, T_min: float, T_max: float, count: int):
    """Binodal sampled at ``count`` evenly spaced temperatures.

    Each solve is warm-started from the previous point, with a linear
    predictor once two points are available.
    """
    _require_vdw(model)
    if count < 1:
        raise ValueError("count must be positive")
    if not 0 < T_min <= T_max <= 1.0:
        raise DomainError(f"need 0 < T_min <= T_max <= 1, got [{T_min}, {T_max}]")
    temps = np.linspace(T_min, T_max, count) if count > 1 else np.array([T_min])
    out: list[BinodalPoint] = []
    for T in temps:
        guess = None
        if len(out) == 1:
            guess = out[-1]
        elif len(out) >= 2:
            a, b = out[-2], out[-1]
            w = (T - b.T) / (b.T - a.T)
            guess = BinodalPoint(
                T,
                b.p + w * (b.p - a.p),
                b.rho_gas + w * (b.rho_gas - a.rho_gas),
                b.rho_liq + w * (b.rho_liq - a.rho_liq),
            )
        try:
            out.append(binodal_at_T(model, float(T), guess))
        except ConvergenceFailure as exc:
            raise ConvergenceFailure(
                f"binodal failed at T={T}", residual=exc.residual, where=float(T)
            ) from exc
    return out
