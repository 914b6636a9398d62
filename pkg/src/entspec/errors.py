"""Exception types shared across the package."""


class EntspecError(Exception):
    """Base class for library-specific failures."""


class DomainError(EntspecError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CriticalInputError(EntspecError):
    """The point sits on (or numerically too close to) a critical line.

    The closed-form spectrum degenerates there: the elliptic modulus hits
    0 or 1, the nome approaches 1 and series representations stop
    converging at fixed precision.
    """


class ConvergenceError(EntspecError):
    """A numerical procedure could not certify its result."""


class ResourceLimitError(EntspecError):
    """A configured size or iteration cap would be exceeded."""


class PairingError(EntspecError):
    """Eigenvalues of a Majorana correlation matrix failed to pair up."""
