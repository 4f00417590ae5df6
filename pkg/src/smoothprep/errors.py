"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems exit 2 (argparse),
domain errors exit 3, I/O errors exit 4.
"""


class SmoothprepError(Exception):
    """Base class for package errors."""


class VectorFormatError(SmoothprepError, ValueError):
    """Malformed vector file content or generator spec."""


class ZeroVectorError(SmoothprepError, ValueError):
    """An operation that needs a nonzero vector got the zero vector."""


class DivergentMeanError(SmoothprepError, ValueError):
    """Requested estimate has a divergent expectation (inverse-square runtime at D <= 2)."""


class QueryBudgetError(SmoothprepError, RuntimeError):
    """A sampling loop hit its query cutoff; input pathological or bound miscalibrated."""


class AmplitudeBoundError(SmoothprepError, RuntimeError):
    """Fixed-point amplification ended below its guarantee: the supplied
    lower bound on the success probability was not valid."""
