"""MMSE prediction of the fading gain from noisy phase-compensated
observations.

Each observation contributes an SNR-rho measurement of the unit-variance
fading sequence.  The one-step prediction error with an unbounded past
follows from the log-spectral integral; with a finite past it follows from
a growing-order Toeplitz recursion.  The effective SNR of a subchannel
whose gain is known only through its prediction combines the estimation
loss in the signal term with the extra noise contributed by the residual
error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, levinson_prediction
from .spectra import (
    SpectrumModel,
    autocorrelation_sequence,
    log_spectral_integral,
)

__all__ = [
    "steady_state_error",
    "gm_steady_state_error",
    "effective_snr",
    "transient_error_sequence",
    "prediction_filter_bank",
    "QUADRATIC",
    "LINEAR",
    "SATURATION",
    "RegimeInfo",
    "classify_regime",
]


def steady_state_error(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Steady-state one-step prediction error at observation SNR ``rho``.

    Equals (1/rho) * (exp(g(rho)) - 1) with g the log-spectral integral
    (1/2pi) integral of log(1 + rho S).  Clipped to [0, 1]: the error of a
    unit-variance sequence can never exceed the no-observation value 1.
    """
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return 1.0
    g = log_spectral_integral(model, rho, spec)
    return float(np.clip(math.expm1(g) / rho, 0.0, 1.0))


def gm_steady_state_error(eps: float, rho: float) -> float:
    """Closed-form steady-state prediction error of the Gauss-Markov family.

    Solves the quadratic fixed point of the scalar Riccati recursion:
    [(rho - 1) eps + sqrt((rho - 1)^2 eps^2 + 4 rho eps)] / (2 rho).
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return 1.0
    t = (rho - 1.0) * eps
    disc = math.sqrt(t * t + 4.0 * rho * eps)
    return float(np.clip((t + disc) / (2.0 * rho), 0.0, 1.0))


def effective_snr(sigma2: float, rho: float) -> float:
    """SNR of a subchannel whose gain is known through an MMSE estimate
    with error variance ``sigma2``: the estimate carries (1 - sigma2) of
    the gain power while the residual adds sigma2 * rho to the noise."""
    if not 0.0 <= sigma2 <= 1.0:
        raise ValueError("sigma2 must lie in [0, 1]")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    return (1.0 - sigma2) * rho / (sigma2 * rho + 1.0)


def _observation_autocov(model, rho, count, spec):
    """Autocovariance of the phase-compensated observation stream
    sqrt(rho) h + noise at lags 0..count-1."""
    r = rho * autocorrelation_sequence(model, count, spec)
    r[0] += 1.0
    return r


def transient_error_sequence(
    model: SpectrumModel,
    rho: float,
    length: int,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> np.ndarray:
    """Prediction error sigma^2[l] with exactly l past observations, l = 1..length.

    Entry l-1 equals 1 - rho c_l^H (rho R_l + I)^{-1} c_l with R_l the
    order-l autocorrelation matrix and c_l the correlation of the target
    sample with its l predecessors.  Computed in one growing-order pass:
    the one-step innovation variance E_l of the observation stream obeys
    E_l = rho sigma^2[l] + 1.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return np.ones(length)
    r = _observation_autocov(model, rho, length + 1, spec)
    errors, _ = levinson_prediction(r, length)
    return np.clip((errors - 1.0) / rho, 0.0, 1.0)


def prediction_filter_bank(
    model: SpectrumModel,
    rho: float,
    length: int,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
):
    """Per-order one-step prediction filters for the observation stream.

    Returns ``(sigma2, weights)``: ``sigma2[l]`` is the prediction error of
    the fading gain with l past observations (sigma2[0] = 1), and
    ``weights`` is a lower-triangular (length x length) matrix whose row l
    predicts observation l from observations 0..l-1.  Row 0 is zero: the
    first sample is predicted by its mean.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    r = _observation_autocov(model, rho, length, spec)
    sigma2 = np.ones(length)
    matrix = np.zeros((length, length))
    if length > 1:
        errors, weights = levinson_prediction(r, length - 1)
        sigma2[1:] = np.clip((errors - 1.0) / rho, 0.0, 1.0)
        for l in range(1, length):
            w = weights[l - 1]
            if np.max(np.abs(w.imag)) > 1e-12:
                raise ValueError("real spectra must yield real prediction weights")
            matrix[l, :l] = w.real[::-1]
    return sigma2, matrix


# ---------------------------------------------------------------------------
# SNR regimes of the Gauss-Markov family
# ---------------------------------------------------------------------------

QUADRATIC = "quadratic"
LINEAR = "linear"
SATURATION = "saturation"


@dataclass(frozen=True)
class RegimeInfo:
    """Regime label plus the closed-form approximations valid inside it."""

    regime: str
    sigma2_approx: float
    rho_eff_approx: float


def classify_regime(eps: float, rho: float) -> RegimeInfo:
    """Place an operating point of the Gauss-Markov family into one of
    three SNR regimes split at rho = eps and rho = 1/eps (ties go to the
    middle regime).

    Below eps the effective SNR grows quadratically, between the
    thresholds it tracks rho, and above 1/eps it saturates at 1/eps.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho < eps:
        return RegimeInfo(QUADRATIC, 1.0 - rho / eps, rho * rho / eps)
    if rho > 1.0 / eps:
        return RegimeInfo(SATURATION, eps, 1.0 / eps)
    return RegimeInfo(LINEAR, math.sqrt(eps / rho), rho)
