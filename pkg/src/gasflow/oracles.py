"""Independent reference computations used to cross-check the main solvers.

None of these share code paths with the routines they check: the Maxwell
construction balances the two lobes of the isotherm p(v) instead of matching
Gibbs potentials, the breakdown time is found by golden-section search,
and the solution and mass potential are re-evaluated in extended precision
with mpmath.
"""
from __future__ import annotations

import math

import mpmath as mp
import numpy as np
from scipy.optimize import brentq

from .homentropic import ConstraintConstants, homentrope_p

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def vdw_isotherm_v(T, v):
    """Reduced van der Waals pressure as a function of specific volume v = 1/rho."""
    return 8.0 * T / (3.0 * v - 1.0) - 3.0 / v**2


def equal_area_binodal(T: float):
    """Maxwell equal-area construction on p(v).

    Returns
    -------
    (p, rho_gas, rho_liq)
    """
    if T >= 1.0:
        return 1.0, 1.0, 1.0

    def dpdv(v):
        return -24.0 * T / (3.0 * v - 1.0) ** 2 + 6.0 / v**3

    v_min = brentq(dpdv, 1.0 / 3.0 + 1e-12, 1.0)  # local minimum of p(v), liquid side
    v_max = brentq(dpdv, 1.0, 1e6)  # local maximum, gas side
    p_hi = vdw_isotherm_v(T, v_max)
    p_lo = max(vdw_isotherm_v(T, v_min), 0.0)

    def volumes(p):
        vl = brentq(lambda v: vdw_isotherm_v(T, v) - p, 1.0 / 3.0 + 1e-15, v_min, xtol=1e-15)
        vg_top = v_max * 2
        while vdw_isotherm_v(T, vg_top) > p:
            vg_top *= 2
        vg = brentq(lambda v: vdw_isotherm_v(T, v) - p, v_max, vg_top, xtol=1e-15, rtol=1e-15)
        return vl, vg

    def area(p):
        vl, vg = volumes(p)
        # closed-form integral of p(v) - p from vl to vg
        return (
            8.0 * T / 3.0 * (math.log(3.0 * vg - 1.0) - math.log(3.0 * vl - 1.0))
            + 3.0 / vg - 3.0 / vl - p * (vg - vl)
        )

    a = p_lo + 1e-14 * (p_hi - p_lo) if p_lo > 0 else p_hi * 1e-12
    b = p_hi - 1e-14 * (p_hi - p_lo)
    p = brentq(area, a, b, xtol=1e-15, rtol=1e-15)
    vl, vg = volumes(p)
    return p, 1.0 / vg, 1.0 / vl


def golden_section_min(f, a: float, b: float, tol: float = 1e-12, maxiter: int = 500):
    """Minimize a unimodal function on [a, b]; returns (x_min, f_min)."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) <= tol * max(1.0, abs(c) + abs(d)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def fold_time(consts: ConstraintConstants, rho: float) -> float:
    """Later of the two times at which the manifold folds over density rho.

    Derived from the fold condition A (1 - C3 rho)**4 = rho (C2 C3 + alpha1 (t + alpha2))**2.
    """
    c = consts
    A = c.C1 + c.C5 / rho**3 * (c.C3 + c.C7 / rho) ** c.C6
    if A < 0:
        return math.inf
    S = (1.0 - c.C3 * rho) ** 2 * math.sqrt(A / rho)
    return (S - c.C2 * c.C3) / c.alpha1 - c.alpha2


def caustic_minimum(consts: ConstraintConstants, lo=1e-4, hi=None, grid=2000):
    """Minimum over rho of the fold time: coarse scan, then golden section."""
    if hi is None:
        hi = -consts.C7 / consts.C3 * (1 - 1e-9) if consts.C3 < 0 else 1e3
    rs = np.geomspace(lo, hi, grid)
    ts = np.array([fold_time(consts, r) for r in rs])
    k = int(np.argmin(ts))
    k = min(max(k, 1), grid - 2)
    return golden_section_min(lambda r: fold_time(consts, r), rs[k - 1], rs[k + 1], tol=1e-14)


def _mp_consts(c: ConstraintConstants):
    return {k: mp.mpf(getattr(c, k)) for k in ("C1", "C2", "C3", "C5", "C6", "C7", "alpha1", "alpha2", "alpha3")}


def mp_x_on_manifold(consts: ConstraintConstants, rho, t, dps: int = 50):
    """Term-by-term evaluation of the second integral in extended precision."""
    with mp.workdps(dps):
        k = _mp_consts(consts)
        r, tt = mp.mpf(rho), mp.mpf(t)
        C1, C2, C3, C5, C6, C7 = k["C1"], k["C2"], k["C3"], k["C5"], k["C6"], k["C7"]
        u = (k["alpha1"] * r * (tt + k["alpha2"]) + C2) / (1 - C3 * r)
        poly = (
            2 * r**2 * C3**2
            - C7**2 * (C6 + 1) * (C3 * r * (C6 + 3) - C6 - 2)
            + C3 * C7 * r * (C3 * r * (C6 + 3) - 2 * C6 - 2)
        )
        w = mp.power(C3 + C7 / r, C6 + 1) * poly / ((C6 + 1) * (C6 + 2) * (C6 + 3) * C7**3 * r**2)
        inner = C1 * mp.log(r) - C1 * C3 * r + C3 * u**2 / 2 + u * (C2 - u) / r - C5 * w
        return -k["alpha3"] - inner / k["alpha1"]


def mp_mass_potential(consts: ConstraintConstants, rho, t, dps: int = 50):
    with mp.workdps(dps):
        k = _mp_consts(consts)
        r, tau = mp.mpf(rho), mp.mpf(t) + k["alpha2"]
        C1, C2, C3, C5, C6, C7, a1 = k["C1"], k["C2"], k["C3"], k["C5"], k["C6"], k["C7"], k["alpha1"]
        first = r / (2 * a1 * (C3 * r - 1) ** 2) * (
            C1 * C3**3 * r**3 - 4 * C1 * C3**2 * r**2
            + r * (C2**2 * C3**2 + (2 * C2 * tau * a1 + 5 * C1) * C3 + a1**2 * tau**2)
            - 2 * C1
        )
        second = (
            C5 * mp.power(C3 + C7 / r, C6) / ((C6 + 2) * a1 * C7**2 * (C6 + 1) * r**2)
            * (C3 * r + C7) * (C3 * (1 + (C6 + 2) * C7) * r - (C6 + 1) * C7)
        )
        return first - second


def central_diff(f, x, h=None):
    h = 1e-5 * max(1.0, abs(x)) if h is None else h
    return (f(x + h) - f(x - h)) / (2 * h)


def fd_sound_coefficient(model, s0: float, rho: float, h=None):
    """p'(rho)/rho along the isentrope by central differences."""
    h = 1e-6 * max(1.0, abs(rho)) if h is None else h
    return central_diff(lambda r: float(homentrope_p(model, s0, r)), rho, h) / rho
