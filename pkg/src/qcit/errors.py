"""Exception hierarchy for qcit.

Every numerical failure mode raised by the library derives from QcitError, so
callers (and the CLI) can distinguish invalid input (ValueError / ConfigError)
from a numerical breakdown with a meaningful stage tag.
"""


class QcitError(Exception):
    """Base class for numerical failures in qcit."""


class ConfigError(ValueError):
    """Invalid configuration or malformed input file."""


# -- conductivity / field algebra ------------------------------------------

class NonSPD(QcitError):
    """A conductivity cell violates symmetric positive definiteness."""


class DegenerateMetric(QcitError):
    """Metric coefficients with EG - F^2 <= 0 or E <= 0."""


class NonInvertible(QcitError):
    """Inverse-map evaluation failed (point outside range or Newton stall)."""


# -- forward solver / DtN ---------------------------------------------------

class SolverDivergence(QcitError):
    """Interior Dirichlet solve failed to reach the requested residual."""


class NonMonotone(QcitError):
    """Boundary reparameterization is not strictly increasing."""


class SingularGlue(QcitError):
    """The gluing pivot block is numerically singular."""


# -- singular integral transforms / Beltrami --------------------------------

class AliasError(QcitError):
    """Density support violates the spectral-grid margin invariant."""


class NoContraction(QcitError):
    """Picard iteration for the Beltrami equation failed to contract."""


# -- CGO machinery ----------------------------------------------------------

class EvalSingular(QcitError):
    """Kernel evaluated at its singular point."""


class NearExceptional(QcitError):
    """Spectral parameter flagged by the conditioning proxy."""


class SolveFailure(QcitError):
    """Dense boundary-integral solve failed."""


class BranchAmbiguity(QcitError):
    """Logarithm branch unwinding is inconsistent around the boundary."""


class NoConvergence(QcitError):
    """Ladder estimates failed to settle within the declared tolerance."""


# -- curve reconstruction ---------------------------------------------------

class OnProjection(QcitError):
    """Query point too close to the projected boundary curve."""


class NonInteger(QcitError):
    """Winding quadrature did not return a near-integer (undersampled curve)."""


class IllConditioned(QcitError):
    """Root recovery residual exceeds tolerance (near a branch point)."""


class InconsistentSheetCount(QcitError):
    """Sheet counts disagree within one component of the projection complement."""


# -- sigma recovery ---------------------------------------------------------

class ConventionMismatch(QcitError):
    """Operands carry different DtN flux conventions."""


class Stagnation(QcitError):
    """Output least squares stalled above the misfit tolerance."""


class NonPositive(QcitError):
    """Line search could not keep the conductivity above its floor."""
