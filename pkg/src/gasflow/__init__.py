"""Exact multivalued solutions of one-dimensional homentropic gas flows.

Ideal and van der Waals gases, their phase structure, caustics, breakdown
time, shock fronts, and the image of the gas/liquid transition in the
(t, x) plane.
"""
from .errors import (
    CausticPoint,
    ConfigError,
    ConvergenceFailure,
    DomainError,
    EmptyCaustic,
    EmptyCurve,
    GasflowError,
    InvalidParameter,
    NoPhaseTransition,
    NoShock,
    NoSpinodal,
    SingularDensity,
)
from .homentropic import (
    ConstraintConstants,
    constants_from_model,
    homentrope_p,
    homentrope_T,
    s0_from_C5,
    sound_coefficient_A,
)
from .phase import BinodalPoint, binodal_at_T, binodal_curve
from .singularity import (
    CausticBranch,
    ShockFront,
    ShockPoint,
    Side,
    Sign,
    breakdown_time,
    caustic,
    cusp_point,
    mass_potential_H,
    phase_shock_intersections,
    phase_transition_curve,
    shock_front,
    shock_front_curve,
)
from .solution import (
    DensityProfile,
    SolutionManifold,
    density_profile,
    pde_residuals,
    velocity_on_manifold,
    x_on_manifold,
)
from .thermo import (
    GasKind,
    KappaForm,
    StatePoint,
    ThermoModel,
    eval_state,
    kappa,
    lagrangian_residual,
    phi,
    spinodal_T,
)

__version__ = "0.1.0"
