"""Caustics, breakdown time, shock front and phase-transition curve in the (t, x) plane.

The caustic is where the projection of the solution manifold to (t, x)
folds.  In the rho parametrization it reads

    t(rho) = -alpha2 - C2 C3/alpha1 +/- (C3 rho - 1)**2 / (alpha1 rho**2) * sqrt(D(rho)),
    D(rho) = C1 rho**3 + C5 (C3 + C7/rho)**C6,

and x(rho) is the manifold's x at that time.  The shock front replaces the
folded part of the solution by a jump (rho1 -> rho2) that conserves mass:
the potential H with dH = rho dx - rho u dt on the manifold takes equal
values at both sides, and both sides sit at the same x.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import solution, thermo
from .errors import (
    ConvergenceFailure,
    DomainError,
    EmptyCaustic,
    EmptyCurve,
    InvalidParameter,
    NoPhaseTransition,
    NoShock,
    SingularDensity,
)
from .homentropic import ConstraintConstants, constants_from_model, homentrope_T
from .phase import binodal_at_T
from .solution import DEFAULT_RHO_RANGE, fold_derivative, fold_derivative_partials, x_on_manifold
from .thermo import ThermoModel

log = logging.getLogger(__name__)

SHOCK_TOL = 1e-10
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1


class Side(str, enum.Enum):
    GAS_ONSET = "GasOnset"
    LIQUID_ONSET = "LiquidOnset"


def density_upper_bound(consts: ConstraintConstants):
    """Largest density with C3 + C7/rho > 0 (inf when there is none)."""
    c = consts
    if c.C3 < 0:
        return -c.C7 / c.C3
    return math.inf


def caustic_discriminant(consts: ConstraintConstants, rho):
    c = consts
    rho = np.asarray(rho, dtype=float)
    g = c.C3 + c.C7 / rho
    if np.any(~(g > 0)) or np.any(~(rho > 0)):
        raise DomainError("caustic needs rho > 0 and C3 + C7/rho > 0")
    return c.C1 * rho**3 + c.C5 * np.exp(c.C6 * np.log(g))


def _disc_roundoff(consts, rho):
    """Rounding level of D: its two terms cancel at the branch meeting points."""
    return 1e-13 * np.abs(consts.C1 * np.asarray(rho, dtype=float) ** 3) + 1e-300


def _sqrt_disc(consts, rho):
    D = caustic_discriminant(consts, rho)
    if np.any(D < -_disc_roundoff(consts, rho)):
        raise DomainError("caustic discriminant is negative")
    return np.sqrt(np.maximum(D, 0.0))


def caustic_t(consts: ConstraintConstants, rho, sign=Sign.PLUS):
    c = consts
    rho = np.asarray(rho, dtype=float)
    return (
        -c.alpha2
        - c.C2 * c.C3 / c.alpha1
        + int(sign) * (c.C3 * rho - 1) ** 2 / (c.alpha1 * rho**2) * _sqrt_disc(c, rho)
    )


def caustic_x(consts: ConstraintConstants, rho, sign=Sign.PLUS):
    """Closed-form x coordinate of the caustic."""
    c = consts
    rho = np.asarray(rho, dtype=float)
    C1, C2, C3, C5, C6, C7, a1, a3 = c.C1, c.C2, c.C3, c.C5, c.C6, c.C7, c.alpha1, c.alpha3
    sq = _sqrt_disc(c, rho)
    gpow = np.exp(C6 * np.log(C3 + C7 / rho))
    cub = C6**3 + 6 * C6**2 + 11 * C6 + 6
    poly = (
        C3**3 * (-4 + C7**3 * cub + (-2 * C6 - 6) * C7) * rho**3
        - 2 * C7 * (2 * cub * C7**2 + (-C6**2 - 3 * C6) * C7 - 2 * C6) * C3**2 * rho**2
        + C7**2 * (C6 + 1) * ((C6 + 3) * (5 * C6 + 12) * C7 - 2 * C6) * C3 * rho
        - 2 * C7**3 * (C6 + 4) * (C6 + 2) * (C6 + 1)
    )
    head = -(
        2 * C1 * np.log(rho)
        + C1 * (C3**3 * rho**3 - 4 * rho**2 * C3**2 + 3 * C3 * rho - 2)
        + C3 * C2**2
        + 2 * a1 * a3
    ) / (2 * a1)
    fold = int(sign) * C2 * (C3 * rho - 1) ** 2 / (a1 * rho**2) * sq
    tail = C5 * gpow / (2 * (C6 + 2) * (C6 + 3) * C7**3 * a1 * (C6 + 1) * rho**3) * poly
    return head + fold - tail


@dataclass
class CausticBranch:
    sign: Sign
    rho: np.ndarray
    t: np.ndarray
    x: np.ndarray
    excluded: list = field(default_factory=list)

    def points(self):
        return list(zip(self.rho.tolist(), self.t.tolist(), self.x.tolist()))


def _discriminant_roots(consts, grid):
    D = caustic_discriminant(consts, grid)
    roots = []
    for i in np.nonzero(np.sign(D[:-1]) * np.sign(D[1:]) < 0)[0]:
        roots.append(brentq(lambda r: float(caustic_discriminant(consts, r)), grid[i], grid[i + 1], xtol=1e-14))
    return roots


def caustic(consts: ConstraintConstants, rho_range=DEFAULT_RHO_RANGE, samples: int = 2001):
    """Both caustic branches sampled over ``rho_range``.

    Densities with D(rho) < 0 are dropped and reported as excluded
    intervals; sampling is refined geometrically towards the roots of D,
    where the two branches meet with square-root behaviour.

    Returns
    -------
    (CausticBranch, CausticBranch)
        The ``+`` and ``-`` branches.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    lo, hi = map(float, rho_range)
    hi = min(hi, density_upper_bound(consts) * (1 - 1e-12))
    grid = np.linspace(lo, hi, samples)
    roots = _discriminant_roots(consts, grid)
    extra = [roots]
    for r in roots:
        offs = (hi - lo) / samples * np.geomspace(1e-8, 1.0, 30)
        extra += [r - offs, r + offs]
    grid = np.unique(np.concatenate([grid] + [np.asarray(e, dtype=float) for e in extra]))
    grid = grid[(grid >= lo) & (grid <= hi)]
    D = caustic_discriminant(consts, grid)
    keep = D >= -_disc_roundoff(consts, grid)
    if not np.any(keep):
        raise EmptyCaustic("discriminant negative over the whole density range")
    excluded = []
    edges = np.concatenate([[lo], np.sort(roots), [hi]])
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        if caustic_discriminant(consts, mid) < 0:
            excluded.append((float(a), float(b)))
    r = grid[keep]
    out = []
    for s in (Sign.PLUS, Sign.MINUS):
        out.append(CausticBranch(s, r, caustic_t(consts, r, s), caustic_x(consts, r, s), excluded))
    return tuple(out)


def breakdown_time(consts: ConstraintConstants) -> float:
    """Closed-form breakdown time t* (cusp of the caustic at rho = 1/3)."""
    c = consts
    base = c.C3 + 3 * c.C7
    if not base > 0:
        raise InvalidParameter("C3 + 3*C7 must be positive")
    rad = c.C1 / 27 + c.C5 * base**c.C6
    if rad < 0:
        raise InvalidParameter(f"negative radicand {rad} in the breakdown time")
    return (-c.C2 * c.C3 - c.alpha1 * c.alpha2 + (c.C3 - 3) ** 2 * math.sqrt(rad)) / c.alpha1


@dataclass(frozen=True)
class CuspPoint:
    rho: float
    t: float
    x: float


def cusp_point(consts: ConstraintConstants, rho_range=None) -> CuspPoint:
    """Earliest point of the + caustic, found by minimizing t(rho) numerically."""
    hi_dom = density_upper_bound(consts)
    if rho_range is None:
        lo = 1e-6
        hi = hi_dom * (1 - 1e-9) if math.isfinite(hi_dom) else 1e3
    else:
        lo, hi = rho_range
    grid = np.geomspace(lo, hi, 4001)
    with np.errstate(invalid="ignore"):
        D = caustic_discriminant(consts, grid)
    tt = np.full(grid.shape, np.inf)
    ok = D >= 0
    tt[ok] = caustic_t(consts, grid[ok])
    k = int(np.argmin(tt))
    if not np.isfinite(tt[k]) or k in (0, grid.size - 1):
        raise InvalidParameter("the + caustic has no interior time minimum")
    res = minimize_scalar(
        lambda r: float(caustic_t(consts, r)),
        bounds=(grid[k - 1], grid[k + 1]),
        method="bounded",
        options={"xatol": 1e-12},
    )
    r = float(res.x)
    t = float(caustic_t(consts, r))
    return CuspPoint(r, t, float(x_on_manifold(consts, r, t)))


def fold_interval(consts: ConstraintConstants, t: float, cusp: CuspPoint | None = None):
    """Densities (rho_a, rho_b) of the two caustic points at time t > t*.

    Between them dx/drho has the sign opposite to the single-valued part,
    i.e. this is the folded part of the profile.
    """
    cusp = cusp or cusp_point(consts)
    if t <= cusp.t:
        raise NoShock(f"t={t} precedes the cusp time {cusp.t}")

    def f(r):
        return float(caustic_t(consts, r)) - t

    lo = cusp.rho
    while f(lo) < 0:
        lo *= 0.5
        if lo < 1e-300:
            raise ConvergenceFailure("cannot bracket lower fold density", where=t)
    top = density_upper_bound(consts)
    hi, k = cusp.rho, 1
    while f(hi) < 0:
        hi = top - (top - cusp.rho) * 2.0**-k if math.isfinite(top) else cusp.rho * 2.0**k
        k += 1
        if k > 1000:
            raise ConvergenceFailure("cannot bracket upper fold density", where=t)
    ra = brentq(f, lo, cusp.rho, xtol=1e-15)
    rb = brentq(f, cusp.rho, hi, xtol=1e-15)
    return ra, rb


def caustic_x_bounds(consts: ConstraintConstants, t: float, cusp: CuspPoint | None = None):
    """x-interval between the two caustic arcs at time t."""
    ra, rb = fold_interval(consts, t, cusp)
    xa = float(x_on_manifold(consts, ra, t))
    xb = float(x_on_manifold(consts, rb, t))
    return min(xa, xb), max(xa, xb)


def mass_potential_H(consts: ConstraintConstants, rho, t):
    """Potential H(rho, t) of the mass conservation form restricted to the manifold.

    Defined up to an additive constant; only differences matter.
    """
    c = consts
    rho = np.asarray(rho, dtype=float)
    if np.any(np.abs(c.C3 * rho - 1) < solution.SINGULAR_EPS):
        raise SingularDensity("C3*rho = 1")
    g = c.C3 + c.C7 / rho
    if np.any(~(g > 0)):
        raise DomainError("C3 + C7/rho must be positive")
    if c.C6 in (-1.0, -2.0):
        raise InvalidParameter(f"C6 = {c.C6} is excluded")
    C1, C2, C3, C5, C6, C7, a1 = c.C1, c.C2, c.C3, c.C5, c.C6, c.C7, c.alpha1
    tau = np.asarray(t, dtype=float) + c.alpha2
    first = rho / (2 * a1 * (C3 * rho - 1) ** 2) * (
        C1 * C3**3 * rho**3
        - 4 * C1 * C3**2 * rho**2
        + rho * (C2**2 * C3**2 + (2 * C2 * tau * a1 + 5 * C1) * C3 + a1**2 * tau**2)
        - 2 * C1
    )
    second = (
        C5 * np.exp(C6 * np.log(g))
        / ((C6 + 2) * a1 * C7**2 * (C6 + 1) * rho**2)
        * (C3 * rho + C7)
        * (C3 * (1 + (C6 + 2) * C7) * rho - (C6 + 1) * C7)
    )
    return first - second


def conservation_form(consts: ConstraintConstants, rho, t):
    """Components (d rho, d t) of rho dx - rho u dt pulled back to the (rho, t) chart."""
    j = solution.manifold_jet(consts, rho, t)
    rho = np.asarray(rho, dtype=float)
    return rho * j.x_rho, rho * j.x_t - rho * j.u


@dataclass(frozen=True)
class ShockPoint:
    t: float
    x_s: float
    rho1: float
    rho2: float


@dataclass
class ShockFront:
    points: list

    @property
    def t(self):
        return np.array([p.t for p in self.points])

    @property
    def x_s(self):
        return np.array([p.x_s for p in self.points])

    @property
    def rho1(self):
        return np.array([p.rho1 for p in self.points])

    @property
    def rho2(self):
        return np.array([p.rho2 for p in self.points])


def shock_residuals(consts: ConstraintConstants, t, rho1, rho2):
    """(H(rho2) - H(rho1), x(rho2) - x(rho1)) at time t."""
    dH = mass_potential_H(consts, rho2, t) - mass_potential_H(consts, rho1, t)
    dx = x_on_manifold(consts, rho2, t) - x_on_manifold(consts, rho1, t)
    return float(dH), float(dx)


def _divided_system(consts, t, mu, q):
    """Shock equations divided by their trivial root rho1 = rho2, in log-density.

    With s = ln rho, mu the midpoint and L = sqrt(q) the width in s:
        G1 = (1/L)    * integral of x_rho * rho ds
        G2 = (1/L**3) * integral of (rho - e**mu) * x_rho * rho ds
    Both integrals run over [mu - L/2, mu + L/2] and are evaluated by
    Gauss-Legendre quadrature, so no cancellation between large x or H
    values occurs near the cusp.
    """
    L = math.sqrt(q)
    s = mu + 0.5 * L * _GL_NODES
    rho = np.exp(s)
    w = _GL_WEIGHTS
    xr = fold_derivative(consts, rho, t)
    xrr, _ = fold_derivative_partials(consts, rho, t)
    f = xr * rho
    fp = xrr * rho + xr  # d f / d rho
    em = math.exp(mu)
    h = (rho - em) * f
    G = np.array([0.5 * np.sum(w * f), np.sum(w * h) / (2 * q)])
    ds_dq = _GL_NODES / (4 * L)
    dG1_dmu = 0.5 * np.sum(w * fp * rho)
    dG1_dq = 0.5 * np.sum(w * fp * rho * ds_dq)
    dh_dmu = (rho - em) * (f + fp * rho)
    dh_dq = (f + (rho - em) * fp) * rho * ds_dq
    dG2_dmu = np.sum(w * dh_dmu) / (2 * q)
    dG2_dq = -np.sum(w * h) / (2 * q * q) + np.sum(w * dh_dq) / (2 * q)
    J = np.array([[dG1_dmu, dG1_dq], [dG2_dmu, dG2_dq]])
    return G, J


def _raw_system(consts, t, r1, r2):
    j1 = solution.manifold_jet(consts, r1, t)
    j2 = solution.manifold_jet(consts, r2, t)
    F = np.array(shock_residuals(consts, t, r1, r2))
    J = np.array([[-r1 * j1.x_rho, r2 * j2.x_rho], [-j1.x_rho, j2.x_rho]], dtype=float)
    return F, J


def _damped_newton(system, y0, admissible, tol, maxiter=80):
    y = np.asarray(y0, dtype=float)
    F, J = system(y)
    norm = float(np.max(np.abs(F)))
    for _ in range(maxiter):
        if norm <= tol:
            break
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        while lam > 1e-10:
            trial = y + lam * step
            if admissible(trial):
                F_t, J_t = system(trial)
                n_t = float(np.max(np.abs(F_t)))
                if n_t < norm:
                    y, F, J, norm = trial, F_t, J_t, n_t
                    break
            lam *= 0.5
        else:
            break
    return y, norm


def _solve_shock(consts, t, cusp, rho1, rho2):
    ra, rb = fold_interval(consts, t, cusp)
    top = density_upper_bound(consts)
    top = top * (1 - 1e-12) if math.isfinite(top) else math.inf
    rho1 = min(rho1, ra * (1 - 1e-9))
    rho2 = max(rho2, rb * (1 + 1e-9))
    if rho2 >= top:
        rho2 = 0.5 * (rb + top)

    def adm_div(v):
        mu, q = v
        if q <= 0:
            return False
        L = math.sqrt(q)
        return math.exp(mu - L / 2) < ra and rb < math.exp(mu + L / 2) < top

    mu0 = 0.5 * (math.log(rho1) + math.log(rho2))
    q0 = (math.log(rho2) - math.log(rho1)) ** 2
    y, _ = _damped_newton(
        lambda v: _divided_system(consts, t, v[0], v[1]), [mu0, q0], adm_div, tol=1e-14
    )
    L = math.sqrt(y[1])
    r1, r2 = math.exp(y[0] - L / 2), math.exp(y[0] + L / 2)

    def adm_raw(v):
        return 0 < v[0] < ra and rb < v[1] < top

    (r1, r2), res = _damped_newton(
        lambda v: _raw_system(consts, t, v[0], v[1]), [r1, r2], adm_raw, tol=1e-12
    )
    if res > SHOCK_TOL:
        raise ConvergenceFailure(f"shock solve failed at t={t}", residual=res, where=t)
    return ShockPoint(float(t), float(x_on_manifold(consts, r1, t)), float(r1), float(r2))


def _fold_predictor(consts, t, cusp):
    ra, rb = fold_interval(consts, t, cusp)
    # cubic normal form: the jump is sqrt(3) times the fold width, same midpoint
    mu = 0.5 * (math.log(ra) + math.log(rb))
    L = math.sqrt(3.0) * (math.log(rb) - math.log(ra))
    return math.exp(mu - L / 2), math.exp(mu + L / 2)


def shock_front(consts: ConstraintConstants, t: float, guess: ShockPoint | None = None,
                cusp: CuspPoint | None = None) -> ShockPoint:
    """Shock position and the densities on both sides at time t.

    Raises
    ------
    NoShock
        If t precedes the breakdown time.
    ConvergenceFailure
        If the Newton iterations do not bring both equalities below 1e-10.
    """
    cusp = cusp or cusp_point(consts)
    t = float(t)
    if abs(t - cusp.t) <= 1e-9 * max(1.0, abs(cusp.t)):
        return ShockPoint(t, float(x_on_manifold(consts, cusp.rho, t)), cusp.rho, cusp.rho)
    if t < cusp.t:
        raise NoShock(f"t={t} precedes the breakdown time {cusp.t}")
    if guess is not None and guess.rho1 < guess.rho2:
        try:
            return _solve_shock(consts, t, cusp, guess.rho1, guess.rho2)
        except ConvergenceFailure:
            log.debug("warm start failed at t=%r", t)
    try:
        return _solve_shock(consts, t, cusp, *_fold_predictor(consts, t, cusp))
    except ConvergenceFailure:
        log.debug("fold predictor failed at t=%r, continuing from the cusp", t)
    front = shock_front_curve(consts, t, 12, cusp=cusp)
    return front.points[-1]


def shock_front_curve(consts: ConstraintConstants, t_max: float, samples: int = 200,
                      cusp: CuspPoint | None = None) -> ShockFront:
    """Shock front from the cusp to ``t_max`` by continuation in t.

    Times are evenly spaced, starting at the cusp.  Each solve is seeded by
    linear extrapolation of the previous two; failed steps are halved down to
    a floor of 1e-6.
    """
    cusp = cusp or cusp_point(consts)
    if not t_max > cusp.t:
        raise NoShock(f"t_max={t_max} does not exceed the breakdown time {cusp.t}")
    if samples < 2:
        raise ValueError("need at least two samples")
    times = np.linspace(cusp.t, t_max, samples)
    history = [ShockPoint(cusp.t, cusp.x, cusp.rho, cusp.rho)]
    keep = [history[0]]
    for target in times[1:]:
        t_prev = history[-1].t
        dt = target - t_prev
        while history[-1].t < target:
            t_next = min(target, history[-1].t + dt)
            try:
                history.append(_continue(consts, t_next, history, cusp))
            except ConvergenceFailure as exc:
                dt *= 0.5
                if dt < 1e-6:
                    raise ConvergenceFailure(
                        f"shock continuation stalled at t={t_next}", exc.residual, t_next
                    ) from exc
        keep.append(history[-1])
    return ShockFront(keep)


def _continue(consts, t, pts, cusp):
    if len(pts) < 3:
        return _solve_shock(consts, t, cusp, *_fold_predictor(consts, t, cusp))
    a, b = pts[-2], pts[-1]
    w = (t - b.t) / (b.t - a.t)
    # extrapolate in log-density midpoint and squared log-width, both smooth in t
    def mq(p):
        return 0.5 * (math.log(p.rho1) + math.log(p.rho2)), (math.log(p.rho2) - math.log(p.rho1)) ** 2

    (ma, qa), (mb, qb) = mq(a), mq(b)
    mu = mb + w * (mb - ma)
    q = max(qb + w * (qb - qa), 1e-12)
    L = math.sqrt(q)
    return _solve_shock(consts, t, cusp, math.exp(mu - L / 2), math.exp(mu + L / 2))


@dataclass(frozen=True)
class PhaseCurvePoint:
    t: float
    x: float
    rho: float
    branch_id: int
    side: Side


def _check_entropy_level(consts, model, s0):
    ref = constants_from_model(model, s0, consts.n or model.n)
    if not math.isclose(ref.C5, consts.C5, rel_tol=1e-9):
        raise InvalidParameter(f"s0={s0} gives C5={ref.C5}, constants have C5={consts.C5}")


def phase_onsets(model: ThermoModel, s0: float, rho_range=DEFAULT_RHO_RANGE, samples: int = 400):
    """Densities on the isentrope s0 where it crosses the binodal.

    Returns a list of (rho, Side).  The crossing is a sign change of
    rho - rho_binodal(T(rho)), refined by bracketing to 1e-13 in rho.
    """
    if not model.is_vdw:
        raise NoPhaseTransition("the ideal gas has no phase transitions")
    lo, hi = rho_range
    grid = np.linspace(lo, hi, samples)
    T = homentrope_T(model, s0, grid)
    sub = T < 1.0
    if not np.any(sub):
        raise EmptyCurve("the isentrope stays supercritical over the density range")
    last = {}

    def binodal(Tr):
        # warm start from the most recent solve; the sweep moves in small T steps
        pt = binodal_at_T(model, Tr, guess=last.get("pt"))
        last["pt"] = pt
        return pt

    onsets = []
    for side, attr in ((Side.GAS_ONSET, "rho_gas"), (Side.LIQUID_ONSET, "rho_liq")):
        def G(r, attr=attr):
            Tr = float(homentrope_T(model, s0, r))
            if Tr >= 1.0:
                return r - 1.0
            return r - getattr(binodal(Tr), attr)

        vals = np.array([G(r) for r in grid])
        for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
            # only crossings inside the two-phase temperature range are onsets
            if T[i] >= 1.0 and T[i + 1] >= 1.0:
                continue
            r = brentq(G, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-15)
            if float(homentrope_T(model, s0, r)) < 1.0:
                onsets.append((float(r), side))
    return sorted(onsets)


def phase_transition_curve(
    consts: ConstraintConstants,
    model: ThermoModel,
    s0: float,
    t_range,
    samples: int = 100,
    rho_range=DEFAULT_RHO_RANGE,
):
    """Image of the binodal crossings in the (t, x) plane.

    The isentrope does not depend on t, so the onset densities are fixed
    and each one traces x(rho_onset, t).  ``branch_id`` is the profile
    branch that contains the onset density at that time.
    """
    _check_entropy_level(consts, model, s0)
    onsets = phase_onsets(model, s0, rho_range)
    t0, t1 = t_range
    times = np.linspace(t0, t1, samples) if samples > 1 else np.array([t0])
    out = []
    for t in times:
        prof = solution.density_profile(consts, float(t), rho_range, samples=801)
        for r, side in onsets:
            bid = int(np.searchsorted(prof.fold_rho, r, side="left"))
            out.append(PhaseCurvePoint(float(t), float(x_on_manifold(consts, r, t)), r, bid, side))
    return out


@dataclass(frozen=True)
class Intersection:
    t: float
    x: float
    rho: float
    side: Side
    shock_side: int  # 1 if rho1 hits the onset density, 2 for rho2
    distance: float


def phase_shock_intersections(
    consts: ConstraintConstants,
    model: ThermoModel,
    s0: float,
    t_max: float,
    samples: int = 200,
    rho_range=DEFAULT_RHO_RANGE,
):
    """Points where the phase-transition curve meets the shock front.

    A crossing happens when one of the shock densities equals an onset
    density; it is located on the sampled front and refined by bracketing
    in t.  ``distance`` is the remaining (t, x) gap between the curve
    point and the front point at the refined time.
    """
    _check_entropy_level(consts, model, s0)
    onsets = phase_onsets(model, s0, rho_range)
    cusp = cusp_point(consts)
    front = shock_front_curve(consts, t_max, samples, cusp=cusp)
    pts = front.points
    found = []
    for r_on, side in onsets:
        for which in (1, 2):
            vals = np.array([getattr(p, f"rho{which}") - r_on for p in pts])
            for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
                a, b = pts[i], pts[i + 1]
                cache = {}

                def g(tt, a=a, which=which, r_on=r_on, cache=cache):
                    sp = shock_front(consts, tt, guess=cache.get("last", b), cusp=cusp)
                    cache["last"] = sp
                    return getattr(sp, f"rho{which}") - r_on

                tc = brentq(g, a.t, b.t, xtol=1e-13)
                sp = shock_front(consts, tc, guess=cache.get("last", b), cusp=cusp)
                xc = float(x_on_manifold(consts, r_on, tc))
                found.append(Intersection(tc, xc, r_on, side, which, abs(xc - sp.x_s)))
    return found
