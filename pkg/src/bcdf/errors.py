"""
Exceptions raised by bcdf.

Two families: ``DomainError`` for inputs outside the domain of an operation (a ``ValueError``), and
``NumericalError`` for computations that could not deliver the requested accuracy or have no answer
(a ``RuntimeError``). The command line maps the first to exit code 2 and the second to exit code 1.

MIT License
"""


class BcdfError(Exception):
    """Base class for all bcdf errors."""


class DomainError(BcdfError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateKernelError(DomainError):
    """A boundary kernel normaliser is not strictly positive."""


class UnsupportedOrderError(DomainError):
    """A moment of an order outside {0, 1, 2} was requested."""


class OutOfFamilyError(DomainError):
    """Requested derivative targets cannot be met inside the beta-mixture test family."""


class SampleOutOfSupportError(DomainError):
    """A sample value lies outside the support [a, b] of the estimator."""


class NumericalError(BcdfError, RuntimeError):
    """A numerical procedure failed."""


class QuadratureError(NumericalError):
    """
    Adaptive quadrature did not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        Best estimate of the integral when the subdivision budget ran out.
    error_bound : float
        Estimated absolute error of ``estimate``.
    subdivisions : int
        Number of panel bisections performed.
    """

    def __init__(self, estimate: float, error_bound: float, subdivisions: int) -> None:
        self.estimate = estimate
        self.error_bound = error_bound
        self.subdivisions = subdivisions
        super().__init__(
            f'quadrature did not converge after {subdivisions} subdivisions: '
            f'estimate={estimate!r}, error bound={error_bound!r}'
        )


class RootFindingError(NumericalError):
    """A bracketing root search had no sign change or did not converge."""


class NoOptimalBandwidthError(NumericalError):
    """The MISE leading terms have no minimiser (F is uniform, so its roughness vanishes)."""
