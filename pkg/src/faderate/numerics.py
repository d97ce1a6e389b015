"""Shared numerical kernels.

Adaptive quadrature on finite and half-line domains, Hermitian-Toeplitz
linear solves via the Levinson recursion, and expectations against the
unit-mean exponential law (the distribution of a squared Rayleigh gain).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, linalg

from .errors import (
    DivergentTailError,
    InvalidIntervalError,
    NonConvergenceError,
    NotPositiveDefiniteError,
)

__all__ = [
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    "integrate_finite",
    "integrate_halfline",
    "expect_exponential",
    "ToeplitzSystem",
    "toeplitz_solve",
    "levinson_prediction",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance budget for the adaptive integrators."""

    relative_tolerance: float = 1e-9
    absolute_tolerance: float = 1e-12
    max_subdivisions: int = 1 << 16

    def __post_init__(self):
        if self.relative_tolerance <= 0 or self.absolute_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad(f, a, b, spec, points=None):
    """scipy.integrate.quad with failure reporting mapped to exceptions."""
    result = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.absolute_tolerance,
        epsrel=spec.relative_tolerance,
        limit=spec.max_subdivisions,
        points=points,
        full_output=1,
    )
    if len(result) > 3:
        # quadpack attached an explanation: the tolerance was not met.
        raise NonConvergenceError(
            f"quadrature on [{a}, {b}] did not converge: {result[3].strip()}"
        )
    return result[0]


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    breakpoints: Sequence[float] | None = None,
) -> float:
    """Integral of ``f`` over the finite interval [a, b].

    ``breakpoints`` marks interior abscissae where the integrand is known
    to be rough (kinks, narrow peaks); the subdivision starts there.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise InvalidIntervalError("bounds must be finite")
    if not a < b:
        raise InvalidIntervalError(f"empty or reversed interval [{a}, {b}]")
    points = None
    if breakpoints is not None:
        points = sorted(p for p in breakpoints if a < p < b)
        if not points:
            points = None
    return _quad(f, a, b, spec, points=points)


# Abscissae used by the heuristic decay probe in integrate_halfline.
_TAIL_PROBE = (1e3, 1e6, 1e9)


def integrate_halfline(
    f: Callable[[float], float],
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    check_tail: bool = True,
) -> float:
    """Integral of ``f`` over [0, inf).

    The substitution w = tan(theta) maps the half line onto [0, pi/2); the
    transformed integrand f(tan(theta)) / cos^2(theta) stays bounded
    whenever f decays at least as fast as w^-2, which the caller must
    guarantee.  A cheap probe of w^2 f(w) at a few large abscissae guards
    against integrands that decay slower than that.
    """
    if check_tail:
        probe = [abs(f(w)) * w * w for w in _TAIL_PROBE]
        for lo, hi in zip(probe, probe[1:]):
            if hi > 10.0 * lo + spec.absolute_tolerance:
                raise DivergentTailError(
                    "integrand does not appear to be O(w^-2) at infinity"
                )

    def transformed(theta):
        w = np.tan(theta)
        c = np.cos(theta)
        return f(w) / (c * c)

    return _quad(transformed, 0.0, np.pi / 2.0, spec)


def expect_exponential(
    f: Callable[[float], float],
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """E[f(G)] for G exponential with unit mean, i.e. |CN(0,1)|^2.

    Evaluates the integral of f(g) exp(-g) on [0, inf) with the half-line
    integrator; the exponential weight makes the tail probe unnecessary.
    """
    return integrate_halfline(lambda g: f(g) * np.exp(-g), spec, check_tail=False)


# ---------------------------------------------------------------------------
# Hermitian-Toeplitz linear algebra
# ---------------------------------------------------------------------------

# A reflection coefficient this close to the unit circle makes the Levinson
# recursion lose all accuracy; fall back to a dense factorization instead.
_REFLECTION_LIMIT = 1.0 - 1e-10

_RESIDUAL_LIMIT = 1e-10


@dataclass(frozen=True)
class ToeplitzSystem:
    """A Hermitian-Toeplitz system T x = b given by the first column of T.

    ``first_column[0]`` must be real and positive; entry k holds T[k, 0],
    and the upper triangle follows by conjugate symmetry.
    """

    first_column: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.first_column)
        b = np.asarray(self.rhs)
        if c.ndim != 1 or b.ndim != 1 or c.shape != b.shape:
            raise ValueError("first_column and rhs must be 1-d of equal length")
        if c.shape[0] == 0:
            raise ValueError("empty system")
        if abs(np.imag(c[0])) > 1e-14 * max(1.0, abs(c[0])) or np.real(c[0]) <= 0:
            raise NotPositiveDefiniteError("diagonal entry must be real positive")
        object.__setattr__(self, "first_column", c)
        object.__setattr__(self, "rhs", b)


def _levinson(c, b):
    """Levinson recursion for Hermitian-Toeplitz T x = b.

    Returns None when a reflection coefficient hits the stability limit,
    signalling the caller to use the dense path.
    """
    n = c.shape[0]
    x = np.zeros(n, dtype=np.complex128)
    a = np.array([1.0 + 0.0j])  # forward prediction-error filter, T a = eps e0
    eps = float(np.real(c[0]))
    x[0] = b[0] / eps
    for m in range(1, n):
        rev = c[m:0:-1]  # (c[m], c[m-1], ..., c[1])
        delta = np.dot(rev, a)
        gamma = -delta / eps
        if abs(gamma) >= _REFLECTION_LIMIT:
            return None
        a_ext = np.append(a, 0.0)
        a = a_ext + gamma * np.conj(a_ext[::-1])
        eps *= 1.0 - abs(gamma) ** 2
        if eps <= 0.0:
            return None
        theta = b[m] - np.dot(rev, x[:m])
        x[: m + 1] += (theta / eps) * np.conj(a[::-1])
    return x


def _dense_toeplitz(c):
    return linalg.toeplitz(c)


def toeplitz_solve(system: ToeplitzSystem) -> np.ndarray:
    """Solve the Hermitian-Toeplitz system by Levinson recursion.

    Near-singular systems (reflection coefficient within 1e-10 of the unit
    circle) are re-solved with a dense Cholesky factorization.  The result
    is checked against a residual bound of 1e-10 times the norm of the
    right-hand side.
    """
    c = np.asarray(system.first_column, dtype=np.complex128)
    b = np.asarray(system.rhs, dtype=np.complex128)
    x = _levinson(c, b)
    dense = None
    if x is None:
        dense = _dense_toeplitz(c)
        try:
            factor = linalg.cho_factor(dense)
        except linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError(str(exc)) from exc
        x = linalg.cho_solve(factor, b)
    residual = linalg.matmul_toeplitz(
        (c, np.conj(c)), x, check_finite=False
    ) - b
    bnorm = np.linalg.norm(b)
    if np.linalg.norm(residual) > _RESIDUAL_LIMIT * max(bnorm, 1e-300):
        if dense is None:
            # Levinson met the stability test but the residual is poor;
            # retry densely before giving up.
            dense = _dense_toeplitz(c)
            try:
                factor = linalg.cho_factor(dense)
            except linalg.LinAlgError as exc:
                raise NotPositiveDefiniteError(str(exc)) from exc
            x = linalg.cho_solve(factor, b)
            residual = dense @ x - b
            if np.linalg.norm(residual) <= _RESIDUAL_LIMIT * max(bnorm, 1e-300):
                return x
        raise NonConvergenceError("Toeplitz solve residual exceeds tolerance")
    return x


def levinson_prediction(autocov: np.ndarray, max_order: int):
    """One-step linear prediction of a stationary sequence, all orders at once.

    ``autocov`` holds the autocovariance r[0..max_order] of the observed
    process.  Returns ``(errors, weights)`` where ``errors[l-1]`` is the
    mean-square error of the order-l one-step predictor and ``weights[l-1]``
    is its coefficient vector w, predicting x[m] as
    sum_j w[j-1] x[m-j] for j = 1..l.

    This is the Durbin recursion; it also powers the transient prediction
    error sequence, where the order grows with the sample index.
    """
    r = np.asarray(autocov, dtype=np.complex128)
    if r.ndim != 1 or r.shape[0] < max_order + 1:
        raise ValueError("autocov must provide lags 0..max_order")
    eps = float(np.real(r[0]))
    if eps <= 0.0:
        raise NotPositiveDefiniteError("zero-lag autocovariance must be positive")
    a = np.array([1.0 + 0.0j])
    errors = np.empty(max_order)
    weights = []
    for m in range(1, max_order + 1):
        delta = np.dot(r[m:0:-1], a)
        gamma = -delta / eps
        if abs(gamma) >= 1.0:
            raise NotPositiveDefiniteError(
                f"reflection coefficient magnitude {abs(gamma):.3g} >= 1 at order {m}"
            )
        a_ext = np.append(a, 0.0)
        a = a_ext + gamma * np.conj(a_ext[::-1])
        eps *= 1.0 - abs(gamma) ** 2
        if eps <= 0.0:
            raise NotPositiveDefiniteError(f"prediction error hit zero at order {m}")
        errors[m - 1] = eps
        weights.append(-a[1:].copy())
    return errors, weights
