import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasflow import oracles, solution
from gasflow.errors import CausticPoint, SingularDensity
from gasflow.homentropic import ConstraintConstants, sound_coefficient_A
from gasflow.singularity import breakdown_time, caustic_discriminant
from gasflow.verify import regular_points

REF = ConstraintConstants.reference()
T_STAR = breakdown_time(REF)


def test_velocity_examples(ref):
    assert float(solution.velocity_on_manifold(ref, 1.0, 0.0)) == pytest.approx(1.5, rel=1e-15)
    r = np.linspace(0.1, 2.9, 7)
    np.testing.assert_allclose(solution.velocity_on_manifold(ref, r, -ref.alpha2), ref.C2 / (1 - ref.C3 * r))


def test_singular_density():
    c = ConstraintConstants(C1=0, C2=1, C3=2.0, C5=1, C6=-2.5, C7=1)
    with pytest.raises(SingularDensity):
        solution.velocity_on_manifold(c, 0.5, 0.0)


def test_x_against_extended_precision(ref):
    x = float(solution.x_on_manifold(ref, 1.5, 0.0))
    assert x == pytest.approx(-48.980542684684383, rel=1e-12)
    for r, t in ((0.05, 1.0), (0.3, T_STAR), (2.9, 30.0)):
        assert float(solution.x_on_manifold(ref, r, t)) == pytest.approx(
            float(oracles.mp_x_on_manifold(ref, r, t)), rel=1e-12)


@pytest.mark.parametrize("which", ["vdw", "ideal"])
def test_integrals_hold_identically(which, ref, ideal_consts, rng):
    c, hi = (ref, 2.9) if which == "vdw" else (ideal_consts, 10.0)
    r = rng.uniform(0.05, hi, 1000)
    t = rng.uniform(-5, 40, 1000)
    u = solution.velocity_on_manifold(c, r, t)
    x = solution.x_on_manifold(c, r, t)
    assert np.abs(solution.quad1_residual(c, r, t, u)).max() <= 1e-12
    assert np.abs(solution.quad2_residual(c, r, t, u, x)).max() <= 1e-12


def test_analytic_jet_matches_differences(ref, rng):
    r = rng.uniform(0.1, 2.8, 50)
    t = rng.uniform(0, 30, 50)
    a = solution.manifold_jet(ref, r, t)
    f = solution.manifold_jet_fd(ref, r, t)
    for name in ("u_rho", "u_t", "x_rho", "x_t"):
        np.testing.assert_allclose(getattr(a, name), getattr(f, name), rtol=1e-5, atol=1e-6)
    np.testing.assert_allclose(solution.fold_derivative(ref, r, t), a.x_rho, rtol=1e-10, atol=1e-10)


def test_fold_partials(ref, rng):
    for r, t in zip(rng.uniform(0.1, 2.8, 10), rng.uniform(0, 30, 10)):
        d_rho, d_t = solution.fold_derivative_partials(ref, r, t)
        fr = oracles.central_diff(lambda z: float(solution.fold_derivative(ref, z, t)), r, 1e-6 * r)
        ft = oracles.central_diff(lambda z: float(solution.fold_derivative(ref, r, z)), t, 1e-6)
        assert float(d_rho) == pytest.approx(fr, rel=1e-6, abs=1e-6)
        assert float(d_t) == pytest.approx(ft, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("which", ["vdw", "ideal"])
def test_pde_residuals_vanish(which, ref, ideal_consts, rng):
    c, lo, hi = (ref, 0.05, 2.9) if which == "vdw" else (ideal_consts, 0.1, 10.0)
    r, t = regular_points(c, rng, 1000, lo, hi)
    for f in solution.pde_residuals(c, r, t):
        assert np.abs(f).max() <= 1e-8
    for f in solution.pde_residuals(c, r[:100], t[:100], method="fd"):
        assert np.abs(f).max() <= 1e-5


def test_pde_residuals_detect_wrong_sound_speed(ref, rng):
    r, t = regular_points(ref, rng, 200, 0.05, 2.9)
    j = solution.manifold_jet(ref, r, t)
    wrong = ref.shifted(C5=ref.C5 * 1.01)
    r1 = j.u_t - j.u_rho * j.x_t / j.x_rho + j.u * j.u_rho / j.x_rho + sound_coefficient_A(wrong, r) / j.x_rho
    assert np.median(np.abs(r1)) > 1e-4


def test_constraint_residual_tight(ref, rng):
    r, t = regular_points(ref, rng, 500, 0.05, 2.9)
    assert np.abs(solution.pde_residuals(ref, r, t)[2]).max() <= 1e-10


def test_pde_residuals_refuse_caustic(ref):
    r = 0.5
    # time at which dx/drho vanishes at this density (later fold)
    t = oracles.fold_time(ref, r)
    with pytest.raises(CausticPoint):
        solution.pde_residuals(ref, r, t, min_fold=1e-6)
    with pytest.raises(ValueError):
        solution.pde_residuals(ref, 1.0, 0.0, method="spectral")


def test_fold_sign_change_matches_caustic_condition(ref):
    # dx/drho changes sign in t exactly where the fold time formula says
    for r in (0.1, 1 / 3, 0.8, 2.0):
        t = oracles.fold_time(ref, r)
        if caustic_discriminant(ref, r) < 0:
            continue
        a = float(solution.x_on_manifold(ref, r * (1 + 1e-6), t - 1e-3) - solution.x_on_manifold(ref, r * (1 - 1e-6), t - 1e-3))
        b = float(solution.x_on_manifold(ref, r * (1 + 1e-6), t + 1e-3) - solution.x_on_manifold(ref, r * (1 - 1e-6), t + 1e-3))
        assert a * b < 0


def test_profile_single_valued_at_t0(ref):
    prof = solution.density_profile(ref, 0.0)
    assert prof.n_branches == 1
    assert prof.fold_rho.size == 0
    xs = np.linspace(prof.x.min(), prof.x.max(), 50)
    assert all(prof.branch_count_at(x) == 1 for x in xs)


def test_profile_three_branches_at_t30(ref):
    prof = solution.density_profile(ref, 30.0)
    assert prof.n_branches == 3
    triple = [(a, b) for a, b, k in prof.multiplicity_intervals() if k == 3]
    assert triple
    a, b = triple[0]
    assert prof.branch_count_at(0.5 * (a + b)) == 3
    # folds are refined to 1e-10 and lie on the caustic
    for r in prof.fold_rho:
        assert abs(float(solution.fold_derivative(ref, r, 30.0))) < 1e-6


def test_branches_are_monotone_in_x(ref):
    prof = solution.density_profile(ref, 25.0)
    for b in range(prof.n_branches):
        dx = np.diff(prof.x[prof.branch_id == b])
        assert np.all(dx <= 0) or np.all(dx >= 0)


def test_profile_branch_count_around_breakdown(ref):
    assert solution.density_profile(ref, T_STAR - 0.5).n_branches == 1
    assert any(k == 3 for *_, k in solution.density_profile(ref, T_STAR + 0.5).multiplicity_intervals())


def test_multivalued_region_opens_from_zero(ref):
    eps = 1e-3
    w1 = solution.density_profile(ref, T_STAR + eps).multivalued_width()
    w10 = solution.density_profile(ref, T_STAR + 10 * eps).multivalued_width()
    assert 0 < w1 < w10


def test_profile_records_excluded_points():
    c = ConstraintConstants(C1=0, C2=1, C3=2.0, C5=1, C6=-2.5, C7=1)
    prof = solution.density_profile(c, 0.0, (0.1, 0.9), samples=9)
    assert (0.5, "SingularDensity") in prof.excluded
    assert 0.5 not in prof.rho


def test_profile_points_and_wrapper(ref):
    prof = solution.density_profile(ref, 30.0, samples=101)
    pts = prof.points()
    assert len(pts) == prof.rho.size
    m = solution.SolutionManifold(ref)
    assert pts[0].x == pytest.approx(float(m.x(pts[0].rho, 30.0)))
    assert pts[0].u == pytest.approx(float(m.u(pts[0].rho, 30.0)))


@settings(max_examples=100, deadline=None)
@given(delta=st.floats(-5, 5), rho=st.floats(0.05, 2.9), t=st.floats(0, 30))
def test_time_shift_symmetry(delta, rho, t):
    shifted = REF.shifted(alpha2=REF.alpha2 + delta)
    for f in (solution.x_on_manifold, solution.velocity_on_manifold):
        a, b = float(f(shifted, rho, t - delta)), float(f(REF, rho, t))
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12 * max(1.0, abs(b)))
