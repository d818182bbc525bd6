"""Exception hierarchy for bosonpair."""


class BosonPairError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(BosonPairError, ValueError):
    """A physical or numerical parameter is outside its allowed range."""


class InvalidGridError(InvalidParameterError):
    """Grid specification is not an odd, centred mesh with positive spacing."""


class SingularityError(BosonPairError, ArithmeticError):
    """The confinement-induced resonance makes the 1D coupling diverge."""


class ConvergenceError(BosonPairError, RuntimeError):
    """An eigensolver failed to converge.

    Parameters
    ----------
    message : str
    iterations : int or None
        Number of iterations performed before giving up, when known.
    """

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class ClassificationError(BosonPairError, RuntimeError):
    """A state could not be assigned a definite exchange or parity label."""


class PreconditionError(BosonPairError, ValueError):
    """Inputs violate the precondition of an operation."""


class UndefinedGroundError(BosonPairError, ValueError):
    """The Bose-Hubbard dimer ground state is not unique (J = U = 0)."""


class ConfigError(BosonPairError, ValueError):
    """Malformed or invalid sweep configuration.

    Parameters
    ----------
    message : str
    lineno : int or None
        1-based line number in the configuration text, when applicable.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
