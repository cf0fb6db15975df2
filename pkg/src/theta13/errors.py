"""Exception types raised across the package."""


class Theta13Error(Exception):
    """Base class for all errors raised by theta13."""


class NotPositiveDefinite(Theta13Error, ValueError):
    pass


class NotHalfInteger(Theta13Error, ValueError):
    pass


class NotLatticeVector(Theta13Error, ValueError):
    pass


class EpsTooSmall(Theta13Error):
    """The requested accuracy needs a truncation radius beyond the hard cap."""


class EtaNotInKernel(Theta13Error, ValueError):
    pass


class RankAmbiguous(Theta13Error):
    """A singular value fell inside the guard band, so the rank is not trusted."""


class SeparationFailure(Theta13Error):
    """On/off classification of 2-torsion points is not reliable for this modulus.

    The raw census is attached as ``census`` so callers can still report it.
    """

    def __init__(self, message, census=None):
        super().__init__(message)
        self.census = census


class ComponentResidualTooLarge(Theta13Error):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BoundaryZero(Theta13Error):
    pass


class QuadratureStall(Theta13Error):
    pass


class NewtonDivergence(Theta13Error):
    def __init__(self, message, rectangle=None):
        super().__init__(message)
        self.rectangle = rectangle


class SamplingExhausted(Theta13Error):
    pass
