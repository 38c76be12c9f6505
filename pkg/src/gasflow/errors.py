"""Exception hierarchy shared by every gasflow module."""


class GasflowError(Exception):
    """Base class for all gasflow errors."""


class DomainError(GasflowError, ValueError):
    """A state or density lies outside the model's validity domain."""


class InvalidParameter(GasflowError, ValueError):
    """A constant or parameter falls on an excluded value."""


class NoSpinodal(GasflowError):
    """The model has no spinodal (its kappa form never degenerates)."""


class NoPhaseTransition(GasflowError):
    """No gas/liquid coexistence exists at the requested temperature."""


class ConvergenceFailure(GasflowError, RuntimeError):
    """An iterative solver did not reach its tolerance.

    Attributes
    ----------
    residual : float
        Best residual norm reached before giving up.
    where : float or None
        The temperature or time at which the failure happened.
    """

    def __init__(self, message, residual=float("nan"), where=None):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual
        self.where = where


class SingularDensity(GasflowError, ValueError):
    """Density hits a pole of the solution formulas (1 - C3*rho = 0)."""


class CausticPoint(GasflowError, ValueError):
    """The solution manifold folds here, so derivatives in (t, x) are undefined."""


class EmptyCaustic(GasflowError):
    """The caustic discriminant is negative over the whole density range."""


class NoShock(GasflowError):
    """No shock front exists at the requested time (t < t*)."""


class EmptyCurve(GasflowError):
    """The homentrope never enters the two-phase region."""


class ConfigError(GasflowError, ValueError):
    """Invalid scenario configuration."""
