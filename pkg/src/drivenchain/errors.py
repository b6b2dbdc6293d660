"""Exception types shared across the package."""


class DrivenChainError(Exception):
    """Base class for all domain errors raised by this package."""


class NoUniqueSteadyStateError(DrivenChainError):
    """The dissipative dynamics does not admit a unique asymptotic state.

    Raised when the damping matrix has an eigenvalue with non-positive
    real part (covariance path) or when the Liouvillian kernel is
    degenerate (brute-force path).
    """


class FloquetResonanceError(DrivenChainError):
    """The one-period map has a resonant eigenvalue pair, so the Floquet
    fixed point is not unique."""


class ConvergenceError(DrivenChainError):
    """An iterative solver did not reach its tolerance within the
    configured iteration budget."""


class SingularDispersionError(DrivenChainError):
    """Quasi-particle energy vanishes at the requested momentum, so the
    quasi-energy band formula is singular."""


class UnresolvedBandStructureError(DrivenChainError):
    """Stationary-point count failed to stabilize under grid refinement."""

    def __init__(self, message, counts):
        super().__init__(message)
        self.counts = tuple(counts)


class ConfigError(DrivenChainError):
    """Sweep configuration rejected; carries the full list of problems."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
