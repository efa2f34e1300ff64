"""Exception types shared across the package."""


class WhaError(Exception):
    """Base class for all package errors."""


class NoSolution(WhaError):
    """An affine linear system is inconsistent."""


class SingularMatrix(WhaError):
    pass


class NotPositive(WhaError):
    """A Hermitian matrix has an eigenvalue below the negative tolerance."""


class SplitFailed(WhaError):
    pass


class NotWHA(WhaError):
    """The input does not satisfy the weak Hopf algebra axioms."""


class NoIntegral(WhaError):
    pass


class NoDualPair(WhaError):
    pass


class Degenerate(WhaError):
    """A functional or integral that must be non-degenerate is not."""


class NotCStar(WhaError):
    pass


class ConsistencyError(WhaError):
    """Two routes that must agree by theory gave different answers."""


class FactoryError(WhaError):
    pass


class ParseError(WhaError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
