"""Implicit exact solutions of the homentropic Euler system.

The solution is a 2-manifold N in (t, x, u, rho) space.  We parametrize it by
(rho, t): the first integral is solved for the velocity,

    u = (alpha1 * rho * (t + alpha2) + C2) / (1 - C3 * rho),

and the second integral then gives x explicitly.  Multivaluedness of rho(t, x)
shows up as sign changes of dx/drho at fixed t, so profiles are obtained by
sweeping rho and cutting the sweep at folds; no root search in x is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import CausticPoint, DomainError, InvalidParameter, SingularDensity
from .homentropic import ConstraintConstants, sound_coefficient_A, sound_coefficient_dA

DEFAULT_RHO_RANGE = (0.01, 2.95)
SINGULAR_EPS = 1e-14
FD_STEP = 1e-6


def _check(c: ConstraintConstants, rho):
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho > 0)):
        raise DomainError("density must be positive")
    if np.any(np.abs(1.0 - c.C3 * rho) < SINGULAR_EPS):
        raise SingularDensity("1 - C3*rho vanishes")
    if np.any(~(c.C3 + c.C7 / rho > 0)):
        raise DomainError("C3 + C7/rho must be positive")
    if c.C7 == 0:
        raise InvalidParameter("C7 must be non-zero")
    return rho


def velocity_on_manifold(consts: ConstraintConstants, rho, t):
    c = consts
    rho = np.asarray(rho, dtype=float)
    if np.any(np.abs(1.0 - c.C3 * rho) < SINGULAR_EPS):
        raise SingularDensity("1 - C3*rho vanishes")
    return (c.alpha1 * rho * (np.asarray(t) + c.alpha2) + c.C2) / (1.0 - c.C3 * rho)


def _w_term(c: ConstraintConstants, rho):
    """The C5 part of the second integral, W(rho), and its derivative W'(rho)."""
    C3, C6, C7 = c.C3, c.C6, c.C7
    K = (C6 + 1) * (C6 + 2) * (C6 + 3)
    g = C3 + C7 / rho
    gp = np.exp((C6 + 1) * np.log(g))
    Q = (
        2 * rho**2 * C3**2
        - C7**2 * (C6 + 1) * (C3 * rho * (C6 + 3) - C6 - 2)
        + C3 * C7 * rho * (C3 * rho * (C6 + 3) - 2 * C6 - 2)
    )
    dQ = 4 * rho * C3**2 - C7**2 * (C6 + 1) * C3 * (C6 + 3) + C3 * C7 * (
        2 * C3 * rho * (C6 + 3) - 2 * C6 - 2
    )
    denom = K * C7**3 * rho**2
    W = gp * Q / denom
    dg = -C7 / rho**2
    dW = ((C6 + 1) * gp / g * dg * Q + gp * dQ) / denom - 2 * W / rho
    return W, dW


def _bracket(c: ConstraintConstants, rho, u):
    """Bracketed expression of the second integral and its partials in rho and u."""
    W, dW = _w_term(c, rho)
    B = (
        c.C1 * np.log(rho)
        - c.C1 * c.C3 * rho
        + c.C3 * u**2 / 2
        + u * (c.C2 - u) / rho
        - c.C5 * W
    )
    B_rho = c.C1 / rho - c.C1 * c.C3 - u * (c.C2 - u) / rho**2 - c.C5 * dW
    B_u = c.C3 * u + (c.C2 - 2 * u) / rho
    return B, B_rho, B_u


def x_on_manifold(consts: ConstraintConstants, rho, t):
    """Position x of the manifold point with density rho at time t."""
    c = consts
    rho = _check(c, rho)
    u = velocity_on_manifold(c, rho, t)
    B, _, _ = _bracket(c, rho, u)
    return -c.alpha3 - B / c.alpha1


def quad1_residual(consts: ConstraintConstants, rho, t, u):
    c = consts
    return t + c.alpha2 + (c.C2 - u) / (c.alpha1 * rho) + c.C3 * u / c.alpha1


def quad2_residual(consts: ConstraintConstants, rho, t, u, x):
    c = consts
    B, _, _ = _bracket(c, np.asarray(rho, dtype=float), u)
    return x + c.alpha3 + B / c.alpha1


class ManifoldJet(NamedTuple):
    """Values and first partials of u and x in the (rho, t) chart."""

    u: np.ndarray
    x: np.ndarray
    u_rho: np.ndarray
    u_t: np.ndarray
    x_rho: np.ndarray
    x_t: np.ndarray


def manifold_jet(consts: ConstraintConstants, rho, t) -> ManifoldJet:
    """Analytic first derivatives from differentiating the two integrals."""
    c = consts
    rho = _check(c, rho)
    t = np.asarray(t, dtype=float)
    den = 1.0 - c.C3 * rho
    u = velocity_on_manifold(c, rho, t)
    u_rho = (c.alpha1 * (t + c.alpha2) + c.C2 * c.C3) / den**2
    u_t = c.alpha1 * rho / den
    B, B_rho, B_u = _bracket(c, rho, u)
    x = -c.alpha3 - B / c.alpha1
    x_rho = -(B_rho + B_u * u_rho) / c.alpha1
    x_t = -B_u * u_t / c.alpha1
    return ManifoldJet(u, x, u_rho, u_t, x_rho, x_t)


def manifold_jet_fd(consts: ConstraintConstants, rho, t, h=FD_STEP) -> ManifoldJet:
    """Central-difference counterpart of :func:`manifold_jet`."""
    rho = np.asarray(rho, dtype=float)
    t = np.asarray(t, dtype=float)
    hr = h * np.maximum(1.0, np.abs(rho))
    ht = h * np.maximum(1.0, np.abs(t))

    def X(r, s):
        return x_on_manifold(consts, r, s)

    def U(r, s):
        return velocity_on_manifold(consts, r, s)

    return ManifoldJet(
        U(rho, t),
        X(rho, t),
        (U(rho + hr, t) - U(rho - hr, t)) / (2 * hr),
        (U(rho, t + ht) - U(rho, t - ht)) / (2 * ht),
        (X(rho + hr, t) - X(rho - hr, t)) / (2 * hr),
        (X(rho, t + ht) - X(rho, t - ht)) / (2 * ht),
    )


def fold_derivative(consts: ConstraintConstants, rho, t):
    """dx/drho at fixed t in reduced form.

    Equal to ``manifold_jet(...).x_rho`` but written through A(rho), which
    makes the fold condition A (1 - C3 rho)**4 = rho (C2 C3 + alpha1 (t + alpha2))**2
    explicit and gives cheap second derivatives.
    """
    c = consts
    rho = _check(c, rho)
    den = 1.0 - c.C3 * rho
    S = c.C2 * c.C3 + c.alpha1 * (np.asarray(t) + c.alpha2)
    A = sound_coefficient_A(c, rho)
    return -(A * den / rho - S**2 / den**3) / c.alpha1


def fold_derivative_partials(consts: ConstraintConstants, rho, t):
    """(d/drho, d/dt) of :func:`fold_derivative`."""
    c = consts
    rho = _check(c, rho)
    den = 1.0 - c.C3 * rho
    S = c.C2 * c.C3 + c.alpha1 * (np.asarray(t) + c.alpha2)
    A = sound_coefficient_A(c, rho)
    dA = sound_coefficient_dA(c, rho)
    d_rho = -(dA * den / rho - A / rho**2 - 3 * c.C3 * S**2 / den**4) / c.alpha1
    d_t = 2 * S / den**3
    return d_rho, d_t


def pde_residuals(consts: ConstraintConstants, rho, t, method="analytic", min_fold=1e-8):
    """Residuals (F1, F2, F3) of the Euler system plus constraint at a manifold point.

    F1 = u_t + u u_x + A rho_x, F2 = rho_t + (rho u)_x,
    F3 = u_x - rho_x (alpha u + beta).

    Derivatives in (t, x) come from implicit differentiation of the (rho, t)
    chart; ``method="fd"`` uses central differences of the chart instead.

    Raises
    ------
    CausticPoint
        If |dx/drho| < ``min_fold`` anywhere (the chart is not a graph over (t, x)).
    """
    c = consts
    rho = np.asarray(rho, dtype=float)
    if method == "analytic":
        j = manifold_jet(c, rho, t)
    elif method == "fd":
        j = manifold_jet_fd(c, rho, t)
    else:
        raise ValueError(f"unknown method {method!r}")
    if np.any(np.abs(j.x_rho) < min_fold):
        raise CausticPoint("dx/drho vanishes: point lies on the caustic")
    rho_x = 1.0 / j.x_rho
    rho_t = -j.x_t / j.x_rho
    u_x = j.u_rho / j.x_rho
    u_t = j.u_t - j.u_rho * j.x_t / j.x_rho
    A = sound_coefficient_A(c, rho)
    k = rho * (c.C3 * rho - 1.0)
    alpha = -1.0 / k
    beta = c.C2 / k
    r1 = u_t + j.u * u_x + A * rho_x
    r2 = rho_t + rho * u_x + j.u * rho_x
    r3 = u_x - rho_x * (alpha * j.u + beta)
    return r1, r2, r3


@dataclass(frozen=True)
class ProfileBranchPoint:
    x: float
    rho: float
    u: float
    branch_id: int


@dataclass
class DensityProfile:
    """Density and velocity along one time slice, cut into x-monotone branches.

    Arrays are ordered by rho.  Fold densities appear twice, once as the end
    of one branch and once as the start of the next.
    """

    t: float
    rho: np.ndarray
    x: np.ndarray
    u: np.ndarray
    branch_id: np.ndarray
    fold_rho: np.ndarray
    excluded: list = field(default_factory=list)

    @property
    def n_branches(self):
        return int(self.branch_id.max()) + 1 if self.branch_id.size else 0

    def points(self):
        return [
            ProfileBranchPoint(float(x), float(r), float(u), int(b))
            for x, r, u, b in zip(self.x, self.rho, self.u, self.branch_id)
        ]

    def branch_ranges(self):
        """Closed x-interval covered by each branch."""
        out = []
        for b in range(self.n_branches):
            xb = self.x[self.branch_id == b]
            out.append((float(xb.min()), float(xb.max())))
        return out

    def branch_count_at(self, x):
        return sum(lo <= x <= hi for lo, hi in self.branch_ranges())

    def multiplicity_intervals(self):
        """Partition of the covered x-range into (x_lo, x_hi, branch_count) pieces."""
        ranges = self.branch_ranges()
        edges = np.unique([e for r in ranges for e in r])
        out = []
        for a, b in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (a + b)
            out.append((float(a), float(b), sum(lo < mid < hi for lo, hi in ranges)))
        return out

    def multivalued_width(self, min_count=3):
        return sum(b - a for a, b, k in self.multiplicity_intervals() if k >= min_count)


def density_profile(
    consts: ConstraintConstants,
    t: float,
    rho_range=DEFAULT_RHO_RANGE,
    samples: int = 2001,
) -> DensityProfile:
    """Sweep rho over ``rho_range`` at fixed t and split the curve at folds.

    Folds (sign changes of dx/drho between neighbouring samples) are refined
    to 1e-10 in rho.  Densities where the formulas are singular are skipped
    and listed in ``excluded`` with the reason.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    lo, hi = map(float, rho_range)
    if not 0 < lo < hi:
        raise DomainError(f"bad density range {rho_range}")
    c = consts
    grid = np.linspace(lo, hi, samples)
    good = np.ones(samples, dtype=bool)
    excluded = []
    for i, r in enumerate(grid):
        try:
            _check(c, r)
        except (DomainError, SingularDensity, InvalidParameter) as exc:
            good[i] = False
            excluded.append((float(r), type(exc).__name__))
    r = grid[good]
    if r.size == 0:
        return DensityProfile(float(t), r, r, r, r.astype(int), r, excluded)
    jet = manifold_jet(c, r, t)
    sgn = np.sign(jet.x_rho)

    folds = []
    for i in range(r.size - 1):
        a, b = r[i], r[i + 1]
        if sgn[i] == 0:
            folds.append(a)
        elif sgn[i] * sgn[i + 1] < 0 and not np.any(
            (grid > a) & (grid < b) & ~good
        ):
            folds.append(
                brentq(lambda z: float(manifold_jet(c, z, t).x_rho), a, b, xtol=1e-10)
            )
    folds = np.array(sorted(set(folds)))

    rho_all = [r]
    bid_all = [np.searchsorted(folds, r, side="left")]
    if folds.size:
        idx = np.arange(folds.size)
        rho_all += [folds, folds]
        bid_all += [idx, idx + 1]
    rho_all = np.concatenate(rho_all)
    bid_all = np.concatenate(bid_all)
    order = np.lexsort((bid_all, rho_all))
    rho_all, bid_all = rho_all[order], bid_all[order]
    return DensityProfile(
        t=float(t),
        rho=rho_all,
        x=np.asarray(x_on_manifold(c, rho_all, t), dtype=float),
        u=np.asarray(velocity_on_manifold(c, rho_all, t), dtype=float),
        branch_id=bid_all.astype(int),
        fold_rho=folds,
        excluded=excluded,
    )


@dataclass(frozen=True)
class SolutionManifold:
    """Convenience wrapper binding one set of constants to the solution maps."""

    consts: ConstraintConstants

    def u(self, rho, t):
        return velocity_on_manifold(self.consts, rho, t)

    def x(self, rho, t):
        return x_on_manifold(self.consts, rho, t)

    def jet(self, rho, t):
        return manifold_jet(self.consts, rho, t)

    def residuals(self, rho, t, **kw):
        return pde_residuals(self.consts, rho, t, **kw)

    def profile(self, t, rho_range=DEFAULT_RHO_RANGE, samples=2001):
        return density_profile(self.consts, t, rho_range, samples)
