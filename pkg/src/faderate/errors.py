"""Exception types shared across the package.

Numerical failures (quadrature that cannot meet its tolerance, indefinite
covariance matrices, divergent integrals) derive from :class:`NumericError`
so callers, in particular the command line tool, can distinguish them from
plain usage mistakes, which raise :class:`ValueError` subclasses.
"""


class NumericError(RuntimeError):
    """Base class for failures of a numerical routine."""


class NonConvergenceError(NumericError):
    """Adaptive quadrature or a solver exhausted its budget."""


class DivergentTailError(NumericError):
    """A half-line integrand does not decay fast enough to integrate."""


class DivergentIntegralError(NumericError):
    """A spectral integral diverges (e.g. the square integral of a
    band-edge-singular density)."""


class AliasTruncationError(NumericError):
    """The aliasing sum of a sampled spectrum cannot be truncated within
    the requested residual bound."""


class NotPositiveDefiniteError(NumericError):
    """A covariance matrix handed to a Toeplitz solve is not positive
    definite."""


class EmbeddingFailureError(NumericError):
    """Circulant embedding of an autocovariance produced eigenvalues that
    are negative beyond tolerance."""


class InvalidIntervalError(ValueError):
    """Integration interval is empty or reversed."""


class OutOfDomainError(ValueError):
    """A frequency lies outside the domain of a spectral density."""


class NotRegularError(ValueError):
    """Operation requires a regular fading process (noiseless one-step
    prediction error strictly positive)."""
