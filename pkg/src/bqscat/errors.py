"""Exception hierarchy shared by all bqscat modules."""


class BqscatError(Exception):
    """Base class for every error raised by the package."""


class InvalidInput(BqscatError):
    """Input data or configuration that cannot be used (CLI exit code 2)."""


class SingularMatrix(BqscatError):
    """A 3x3 matrix whose determinant is below the singular threshold."""


class OverflowRisk(BqscatError):
    """An exponential factor would exceed the configured exponent cap."""


class ZeroArgument(BqscatError):
    """The spectral parameter k = 0 was supplied."""


class NearSingularPoint(BqscatError):
    """k lies too close to a sixth root of unity or to the origin."""


class OnBoundary(BqscatError):
    """k lies on a region boundary within the ordering tolerance."""


class EmptyPiece(BqscatError):
    """Exclusion disks consume an entire contour piece."""


class NonDecayingInput(InvalidInput):
    """Sampled data fail the decay proxy at the right end of the grid."""


class DomainViolation(BqscatError):
    """An eigenfunction column was requested outside its boundedness domain."""


class StepFailure(BqscatError):
    """The ODE integrator could not reach the requested accuracy."""


class NonConvergence(BqscatError):
    """Picard iteration failed to stagnate within the iteration budget."""


class AssumptionViolation(BqscatError):
    """A spectral denominator vanishes, signalling solitons or non-generic data."""


class CoefficientUnavailable(BqscatError):
    """A reflection coefficient is not defined at the requested argument."""


class BandViolation(InvalidInput):
    """Wavepacket band is not strictly inside (0, 1)."""


class FitUnstable(BqscatError):
    """An asymptotic least-squares fit is ill conditioned or inconsistent."""
