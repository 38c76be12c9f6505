"""Residual and oracle checks over every library invariant.

Each check returns the worst observed value next to its tolerance.  The
suite is deterministic: random samples come from a fixed seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracles, phase, singularity, solution, thermo
from .errors import CausticPoint, NoSpinodal
from .homentropic import (
    ConstraintConstants,
    constants_from_model,
    homentrope_T,
    s0_from_C5,
    sound_coefficient_A,
)
from .thermo import ThermoModel

SEED = 20240607
VDW = ThermoModel.van_der_waals(3.0)
IDEAL = ThermoModel.ideal(3.0, 1.0)
REFERENCE_S0 = 4 * math.log(6.0)
MAXWELL_TEMPS = (0.85, 0.90, 0.95, 0.99)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<44s} max={self.value:.3e}  tol={self.tol:.1e}"


def _result(name, value, tol):
    value = float(value)
    return CheckResult(name, value, tol, bool(np.isfinite(value) and value <= tol))


def reference_constants() -> ConstraintConstants:
    return ConstraintConstants.reference()


def ideal_constants() -> ConstraintConstants:
    return constants_from_model(IDEAL, 0.0)


def _rel(a, b, floor=1e-300):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return np.abs(a - b) / np.maximum(np.abs(b), floor)


def regular_points(consts, rng, count, rho_lo, rho_hi, t_lo=0.0, t_hi=30.0, min_fold=1e-3):
    """Uniform random (rho, t) with |dx/drho| above ``min_fold``."""
    out_r, out_t = [], []
    while sum(map(len, out_r)) < count:
        r = rng.uniform(rho_lo, rho_hi, 2 * count)
        t = rng.uniform(t_lo, t_hi, 2 * count)
        ok = np.abs(solution.fold_derivative(consts, r, t)) > min_fold
        out_r.append(r[ok])
        out_t.append(t[ok])
    return np.concatenate(out_r)[:count], np.concatenate(out_t)[:count]


# -- thermodynamics ----------------------------------------------------------

def check_closed_forms(rng):
    worst = 0.0
    for n in (3.0, 5.0):
        T = rng.uniform(0.2, 3.0, 500)
        r = rng.uniform(0.01, 2.99, 500)
        st = thermo.eval_state(ThermoModel.van_der_waals(n), T, r)
        worst = max(worst, _rel(st.p, 8 * T * r / (3 - r) - 3 * r**2).max())
        worst = max(worst, _rel(st.e, 4 * n * T / 3 - 3 * r).max())
        s_ref = np.log(T ** (4 * n / 3) * (3 / r - 1) ** (8 / 3))
        worst = max(worst, (np.abs(st.s - s_ref) / np.maximum(np.abs(s_ref), 1.0)).max())
        R = 0.7
        r = rng.uniform(0.01, 10.0, 500)
        st = thermo.eval_state(ThermoModel.ideal(n, R), T, r)
        worst = max(worst, _rel(st.p, R * r * T).max(), _rel(st.e, n / 2 * R * T).max())
        s_ref = R * np.log(T ** (n / 2) / r)
        worst = max(worst, (np.abs(st.s - s_ref) / np.maximum(np.abs(s_ref), 1.0)).max())
    return _result("thermo: closed-form state equations", worst, 1e-12)


def check_maxwell_symmetry(rng):
    worst = 0.0
    for model, rmax in ((VDW, 2.9), (IDEAL, 10.0)):
        for T, r in zip(rng.uniform(0.3, 3.0, 200), rng.uniform(0.05, rmax, 200)):
            hT, hr = thermo.central_step(T), thermo.central_step(r)
            from_T = (thermo.phi(model, T, r + hr).phi_T - thermo.phi(model, T, r - hr).phi_T) / (2 * hr)
            from_r = (thermo.phi(model, T + hT, r).phi_rho - thermo.phi(model, T - hT, r).phi_rho) / (2 * hT)
            worst = max(worst, abs(from_T - from_r))
    return _result("thermo: mixed partial phi_Trho symmetry", worst, 1e-6)


def check_ideal_kappa(rng, count=10_000):
    T = rng.uniform(1e-3, 1e3, count)
    r = rng.uniform(1e-3, 1e3, count)
    k = thermo.kappa(IDEAL, T, r)
    bad = np.count_nonzero(~k.applicable)
    try:
        thermo.spinodal_T(IDEAL, 1.0)
        bad += 1
    except NoSpinodal:
        pass
    return _result("thermo: ideal kappa negative definite", bad, 0)


def check_spinodal_sign(rng, count=5000):
    T = rng.uniform(0.05, 2.0, count)
    r = rng.uniform(0.01, 2.99, count)
    k = thermo.kappa(VDW, T, r).k_rr
    gap = thermo.spinodal_T(VDW, r) - T
    sel = np.abs(gap) > 1e-9
    bad = np.count_nonzero(np.sign(k[sel]) != np.sign(gap[sel]))
    return _result("thermo: sign(k_rr) = sign(T_spinodal - T)", bad, 0)


def check_lagrangian(rng):
    worst = 0.0
    for model, rmax in ((VDW, 2.9), (IDEAL, 10.0)):
        def P(T, r, m=model):
            return float(thermo.eval_state(m, T, r).p)

        def E(T, r, m=model):
            return float(thermo.eval_state(m, T, r).e)

        # truncation error of the 1e-5 difference step grows like T**-4
        for T, r in zip(rng.uniform(0.5, 3.0, 100), rng.uniform(0.05, rmax, 100)):
            worst = max(worst, thermo.lagrangian_residual(P, E, T, r))
    return _result("thermo: Lagrangian condition", worst, 1e-8)


def critical_cusp_values():
    k = float(thermo.kappa(VDW, 1.0, 1.0).k_rr)
    h = 1e-5
    dk = (float(thermo.kappa(VDW, 1.0, 1 + h).k_rr) - float(thermo.kappa(VDW, 1.0, 1 - h).k_rr)) / (2 * h)
    p = float(thermo.pressure(VDW, 1.0, 1.0))
    return k, dk, p


def check_critical_cusp(rng=None):
    k, dk, p = critical_cusp_values()
    return _result("thermo: cusp conditions at the critical point", max(abs(k), abs(dk), abs(p - 1)), 1e-8)


# -- phase equilibrium -------------------------------------------------------

def _binodal_sample():
    return phase.binodal_curve(VDW, 0.3, 0.999, 60)


def check_coexistence(rng=None):
    worst_p = worst_g = 0.0
    for pt in _binodal_sample():
        dp1, dp2, dg = phase.coexistence_residuals(VDW, pt)
        worst_p = max(worst_p, abs(dp1), abs(dp2))
        worst_g = max(worst_g, abs(dg))
    return [
        _result("phase: pressure equality", worst_p, 1e-10),
        _result("phase: Gibbs equality", worst_g, 1e-10),
    ]


def maxwell_deviation(temps=MAXWELL_TEMPS):
    """Largest |p| and density deviations from the equal-area oracle."""
    dp = dr = 0.0
    for T in temps:
        b = phase.binodal_at_T(VDW, T)
        p, rg, rl = oracles.equal_area_binodal(T)
        dp = max(dp, abs(b.p - p))
        dr = max(dr, abs(b.rho_gas - rg), abs(b.rho_liq - rl))
    return dp, dr


def check_equal_area(rng=None):
    dp, dr = maxwell_deviation(MAXWELL_TEMPS + (0.5, 0.7))
    return [
        _result("phase: equal-area pressure", dp, 1e-8),
        _result("phase: equal-area densities", dr, 1e-7),
    ]


def check_binodal_encloses_spinodal(rng=None):
    bad = 0
    for pt in _binodal_sample():
        lo, hi = thermo.spinodal_densities(VDW, pt.T)
        bad += not (pt.rho_gas < lo <= hi < pt.rho_liq)
    return _result("phase: binodal encloses spinodal", bad, 0)


# -- homentropic reduction ---------------------------------------------------

def sound_coefficient_deviation(model, s0, lo, hi, count=100):
    c = constants_from_model(model, s0)
    rs = np.linspace(lo, hi, count)
    fd = np.array([oracles.fd_sound_coefficient(model, s0, r) for r in rs])
    return float(_rel(sound_coefficient_A(c, rs), fd).max())


def check_sound_coefficient(rng=None):
    return [
        _result("homentropic: A(rho) vs p'(rho)/rho, vdW",
                sound_coefficient_deviation(VDW, REFERENCE_S0, 0.05, 2.9), 1e-6),
        _result("homentropic: A(rho) vs p'(rho)/rho, ideal",
                sound_coefficient_deviation(IDEAL, 0.7, 0.1, 10.0), 1e-6),
    ]


def check_homentrope_monotone(rng):
    bad = 0
    r = np.linspace(0.01, 2.99, 400)
    for s0 in rng.uniform(-5, 10, 20):
        T = homentrope_T(VDW, s0, r)
        bad += np.count_nonzero(np.diff(T) <= 0)
        bad += np.count_nonzero(homentrope_T(VDW, s0 + 0.1, r) <= T)
        bad += np.count_nonzero(homentrope_T(IDEAL, s0 + 0.1, r) <= homentrope_T(IDEAL, s0, r))
    return _result("homentropic: T increasing in s0 and rho", bad, 0)


def check_entropy_roundtrip(rng):
    worst = 0.0
    for model in (VDW, IDEAL, ThermoModel.ideal(5.0, 2.0)):
        for s0 in rng.uniform(-5, 10, 20):
            c = constants_from_model(model, s0)
            worst = max(worst, abs(s0_from_C5(model, c.C5) - s0))
            r = rng.uniform(0.05, 2.9)
            worst = max(worst, abs(float(thermo.eval_state(model, homentrope_T(model, s0, r), r).s) - s0))
    return _result("homentropic: s0 round trip", worst, 1e-12)


# -- exact solution ----------------------------------------------------------

def _families():
    return (
        ("vdW", reference_constants(), 0.05, 2.9),
        ("ideal", ideal_constants(), 0.1, 10.0),
    )


def check_integrals(rng):
    worst = 0.0
    for _, c, lo, hi in _families():
        r = rng.uniform(lo, hi, 1000)
        t = rng.uniform(-5, 40, 1000)
        u = solution.velocity_on_manifold(c, r, t)
        x = solution.x_on_manifold(c, r, t)
        worst = max(worst, np.abs(solution.quad1_residual(c, r, t, u)).max())
        worst = max(worst, np.abs(solution.quad2_residual(c, r, t, u, x)).max())
    return _result("solution: first and second integrals", worst, 1e-12)


def max_pde_residual(consts, rng, count, lo, hi, method="analytic"):
    r, t = regular_points(consts, rng, count, lo, hi)
    res = solution.pde_residuals(consts, r, t, method=method)
    return float(max(np.abs(f).max() for f in res))


def check_pde(rng):
    out = []
    for name, c, lo, hi in _families():
        out.append(_result(f"solution: PDE residuals, {name}", max_pde_residual(c, rng, 1000, lo, hi), 1e-8))
    return out


def check_pde_fd(rng):
    worst = 0.0
    for _, c, lo, hi in _families():
        worst = max(worst, max_pde_residual(c, rng, 200, lo, hi, method="fd"))
    # the difference chart loses about half the digits of the analytic one
    return _result("solution: PDE residuals, difference chart", worst, 1e-5)


def check_branch_count(rng=None):
    c = reference_constants()
    t_star = singularity.breakdown_time(c)
    bad = 0
    for t in (0.0, 5.0, t_star - 0.5):
        bad += solution.density_profile(c, t).n_branches != 1
    for t in (t_star + 1.0, 20.0, 30.0):
        prof = solution.density_profile(c, t)
        bad += not any(k == 3 for _, _, k in prof.multiplicity_intervals())
    return _result("solution: branch counting around t*", bad, 0)


def check_time_shift(rng):
    worst = 0.0
    c = reference_constants()
    for delta in rng.uniform(-3, 3, 10):
        c2 = c.shifted(alpha2=c.alpha2 + delta)
        r = rng.uniform(0.05, 2.9, 100)
        t = rng.uniform(0, 30, 100)
        for f in (solution.x_on_manifold, solution.velocity_on_manifold):
            a, b = f(c2, r, t - delta), f(c, r, t)
            worst = max(worst, (np.abs(a - b) / np.maximum(1.0, np.abs(b))).max())
    return _result("solution: time-shift symmetry", worst, 1e-12)


def check_extended_precision(rng=None):
    c = reference_constants()
    worst = 0.0
    for r, t in ((1.5, 0.0), (0.3, 12.0), (2.5, 30.0), (0.05, 3.0)):
        x = float(solution.x_on_manifold(c, r, t))
        H = float(singularity.mass_potential_H(c, r, t))
        worst = max(worst, abs(x - float(oracles.mp_x_on_manifold(c, r, t))) / abs(x))
        worst = max(worst, abs(H - float(oracles.mp_mass_potential(c, r, t))) / abs(H))
    return _result("solution: x and H vs extended precision", worst, 1e-12)


# -- singularities -----------------------------------------------------------

def breakdown_agreement(consts):
    t_formula = singularity.breakdown_time(consts)
    rho_min, t_min = oracles.caustic_minimum(consts)
    return t_formula, t_min, rho_min, abs(t_formula - t_min) / abs(t_formula)


def check_breakdown(rng):
    c = reference_constants()
    worst = breakdown_agreement(c)[3]
    for _ in range(10):
        cp = c.shifted(C2=rng.uniform(-2, 3), alpha1=rng.uniform(0.2, 3), alpha2=rng.uniform(-3, 5))
        worst = max(worst, breakdown_agreement(cp)[3])
    return _result("singularity: t* formula vs minimization", worst, 1e-6)


def _fold_scale(consts, rho, t):
    """Size of the two terms of dx/drho that cancel on the caustic."""
    c = consts
    den = 1.0 - c.C3 * rho
    S = c.C2 * c.C3 + c.alpha1 * (t + c.alpha2)
    return (np.abs(sound_coefficient_A(c, rho) * den / rho) + S**2 / np.abs(den) ** 3) / abs(c.alpha1)


def check_caustic_fold(rng=None):
    worst = 0.0
    for _, c, lo, hi in _families():
        for br in singularity.caustic(c, (lo, hi), 401):
            scale = _fold_scale(c, br.rho, br.t)
            worst = max(worst, (np.abs(solution.fold_derivative(c, br.rho, br.t)) / scale).max())
            # second path: central difference of x_on_manifold itself
            h = 1e-6 * br.rho
            fd = (solution.x_on_manifold(c, br.rho + h, br.t)
                  - solution.x_on_manifold(c, br.rho - h, br.t)) / (2 * h)
            worst = max(worst, (np.abs(fd) / scale).max())
    return _result("singularity: caustic lies on the fold", worst, 1e-6)


def shock_front_report(consts, span=20.0, samples=200):
    """Worst equality residual, containment violations and the cusp offset."""
    cusp = singularity.cusp_point(consts)
    front = singularity.shock_front_curve(consts, cusp.t + span, samples, cusp=cusp)
    worst = 0.0
    outside = 0
    for p in front.points[1:]:
        worst = max(worst, *map(abs, singularity.shock_residuals(consts, p.t, p.rho1, p.rho2)))
        xa, xb = singularity.caustic_x_bounds(consts, p.t, cusp)
        outside += not (xa <= p.x_s <= xb and p.rho1 < p.rho2)
    start = front.points[0]
    start_gap = max(abs(start.t - singularity.breakdown_time(consts)), abs(start.rho1 - 1.0 / 3.0))
    return front, worst, outside, start_gap


def check_shock(rng=None):
    _, worst, outside, start_gap = shock_front_report(reference_constants())
    return [
        _result("singularity: shock equalities", worst, 1e-10),
        _result("singularity: shock inside the caustic", outside, 0),
        _result("singularity: shock starts at the cusp", start_gap, 1e-6),
    ]


def conservation_deviation(consts, rho, t):
    """Relative mismatch between grad H (central differences) and the pulled-back form."""
    hr = 1e-6 * rho
    ht = 1e-6 * np.maximum(1.0, np.abs(t))
    H = singularity.mass_potential_H
    dr = (H(consts, rho + hr, t) - H(consts, rho - hr, t)) / (2 * hr)
    dt = (H(consts, rho, t + ht) - H(consts, rho, t - ht)) / (2 * ht)
    wr, wt = singularity.conservation_form(consts, rho, t)
    return np.hypot(dr - wr, dt - wt) / np.hypot(wr, wt)


def closedness_deviation(consts, rho, t):
    """d(form_rho)/dt - d(form_t)/drho by central differences, relative."""
    hr = 1e-5 * rho
    ht = 1e-5 * np.maximum(1.0, np.abs(t))
    f = singularity.conservation_form
    a = (f(consts, rho, t + ht)[0] - f(consts, rho, t - ht)[0]) / (2 * ht)
    b = (f(consts, rho + hr, t)[1] - f(consts, rho - hr, t)[1]) / (2 * hr)
    return np.abs(a - b) / np.maximum(np.abs(a) + np.abs(b), 1.0)


def check_conservation(rng):
    c = reference_constants()
    r = rng.uniform(0.05, 2.9, 1000)
    t = rng.uniform(0, 30, 1000)
    return [
        _result("singularity: grad H = conservation form", conservation_deviation(c, r, t).max(), 1e-6),
        _result("singularity: conservation form closed", closedness_deviation(c, r, t).max(), 1e-5),
    ]


def check_phase_curve(rng=None):
    c = reference_constants()
    pts = singularity.phase_transition_curve(c, VDW, REFERENCE_S0, (0.0, 30.0), samples=5)
    worst = 0.0
    for p in pts:
        T = float(homentrope_T(VDW, REFERENCE_S0, p.rho))
        worst = max(worst, abs(float(thermo.pressure(VDW, T, p.rho)) - phase.binodal_at_T(VDW, T).p))
    hits = singularity.phase_shock_intersections(c, VDW, REFERENCE_S0, singularity.breakdown_time(c) + 20)
    gap = min((h.distance for h in hits), default=math.inf)
    return [
        _result("singularity: phase curve on the binodal", worst, 1e-8),
        _result("singularity: phase curve meets the shock", gap, 1e-3),
    ]


CHECKS: list[Callable] = [
    check_closed_forms,
    check_maxwell_symmetry,
    check_ideal_kappa,
    check_spinodal_sign,
    check_lagrangian,
    check_critical_cusp,
    check_coexistence,
    check_equal_area,
    check_binodal_encloses_spinodal,
    check_sound_coefficient,
    check_homentrope_monotone,
    check_entropy_roundtrip,
    check_integrals,
    check_pde,
    check_pde_fd,
    check_branch_count,
    check_time_shift,
    check_extended_precision,
    check_breakdown,
    check_caustic_fold,
    check_shock,
    check_conservation,
    check_phase_curve,
]


def run_all(seed: int = SEED) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for check in CHECKS:
        try:
            res = check(rng)
        except (CausticPoint, ArithmeticError, ValueError, RuntimeError) as exc:
            res = CheckResult(f"{check.__name__}: {type(exc).__name__}: {exc}", math.inf, 0.0, False)
        out.extend(res if isinstance(res, list) else [res])
    return out
