"""Exception types raised by the bound computations."""


class ParameterRangeError(ValueError):
    """A numeric parameter lies outside the range where a formula is valid."""


class RationalInputError(ValueError):
    """The exact rational backend received a value it cannot represent exactly."""


class BracketNotFoundError(RuntimeError):
    """A verified sign-change bracket for a polynomial zero could not be found."""


class BesselRangeError(ValueError):
    """The Bessel power series was asked for an argument outside its envelope."""


class ConvergenceError(RuntimeError):
    """An iterative method did not converge within its iteration budget."""


class DegreeTooSmallError(ValueError):
    """The Delsarte linear program is infeasible at the requested degree."""


class ConfigError(ValueError):
    """A configuration file or environment override holds an invalid value."""
