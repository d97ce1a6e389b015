"""Rate expressions for PSK over correlated Rayleigh fading without CSI.

Low-SNR expansions and capacity bounds for discrete-time channels, high-SNR
laws split by whether the fading is regular (positive noiseless prediction
error) or deterministic (density with a zero set), and wideband limits for
continuous-time channels under peak-limited signalling.  All rates are in
nats.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NotRegularError
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec
from .spectra import (
    CONTINUOUS,
    DISCRETE,
    GaussMarkovContinuous,
    SpectrumModel,
    excess_log_integral,
    noiseless_pred_error,
    square_integral,
    zero_set_measure,
)

__all__ = [
    "EULER_GAMMA",
    "low_snr_rate",
    "capacity_upper_bound",
    "capacity_per_unit_energy_dt",
    "high_snr_capacity_regular",
    "high_snr_prelog_deterministic",
    "capacity_per_unit_energy_ct",
    "wideband_rate",
    "wideband_rate_gm",
    "wideband_rate_clarke",
    "clarke_small_p_asymptote",
    "ct_small_p_coefficient",
]

EULER_GAMMA = float(np.euler_gamma)


def _require_base(model: SpectrumModel, base: str, what: str):
    if model.time_base != base:
        raise ValueError(f"{what} requires a {base}-time model")


def low_snr_rate(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Second-order achievable rate of recursively trained PSK at low SNR:
    (1/2) (square integral - 1) rho^2 nats per symbol."""
    _require_base(model, DISCRETE, "low-SNR rate")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    return 0.5 * (square_integral(model, spec) - 1.0) * rho * rho


def capacity_upper_bound(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Low-SNR capacity upper bound under a unit peak constraint:
    (1/2) (square integral) rho^2.  Exceeds the achievable PSK rate by
    exactly rho^2 / 2, the price of forgoing amplitude modulation."""
    _require_base(model, DISCRETE, "capacity upper bound")
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    return 0.5 * square_integral(model, spec) * rho * rho


def capacity_per_unit_energy_dt(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Capacity per unit energy at peak SNR rho: 1 - g(rho)/rho with g the
    log-spectral integral.  Evaluated through the nonnegative integrand
    (rho S - log(1 + rho S))/rho, which is exact for rho -> 0."""
    _require_base(model, DISCRETE, "capacity per unit energy")
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    return excess_log_integral(model, rho, spec) / rho


def high_snr_capacity_regular(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """High-SNR capacity law of a regular fading channel:
    loglog(rho) - 1 - EULER_GAMMA + log(1 / pred_error).

    Only meaningful once loglog is increasing, so rho must exceed e.
    Raises :class:`NotRegularError` when the noiseless prediction error
    vanishes (density with a zero set): capacity then grows like
    log(rho) instead and this expression does not apply.
    """
    _require_base(model, DISCRETE, "high-SNR capacity")
    if rho <= math.e:
        raise ValueError("the high-SNR law needs rho > e")
    err = noiseless_pred_error(model, spec)
    if err <= 0.0:
        raise NotRegularError(
            "noiseless prediction error is zero; use the deterministic pre-log"
        )
    return math.log(math.log(rho)) - 1.0 - EULER_GAMMA - math.log(err)


def high_snr_prelog_deterministic(model: SpectrumModel) -> float:
    """Pre-log of the high-SNR capacity of a deterministic (perfectly
    predictable) fading channel: the normalized measure of the density's
    zero set."""
    _require_base(model, DISCRETE, "deterministic pre-log")
    return zero_set_measure(model)


# ---------------------------------------------------------------------------
# Continuous time: wideband limits
# ---------------------------------------------------------------------------


def capacity_per_unit_energy_ct(
    model: SpectrumModel, power: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Capacity per unit energy of the continuous-time channel at peak
    power ``power``: 1 - (1/(2 pi power)) integral of log(1 + power S)."""
    _require_base(model, CONTINUOUS, "capacity per unit energy")
    if power <= 0.0:
        raise ValueError("power must be positive")
    return excess_log_integral(model, power, spec) / power


def wideband_rate(
    model: SpectrumModel, power: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Achievable rate per unit time of recursively trained PSK in the
    wideband limit.  Coincides with the capacity per unit energy times the
    power (and with the peak-limited capacity upper bound), so it is
    computed as exactly that product."""
    return capacity_per_unit_energy_ct(model, power, spec) * power


def wideband_rate_gm(eps_c: float, power: float) -> float:
    """Closed-form wideband rate for the continuous-time Gauss-Markov
    family: power - (lam/2) (sqrt(1 + 4 power/lam) - 1) with lam the
    correlation decay rate.  Rearranged so small powers lose no digits."""
    model = GaussMarkovContinuous(eps_c)
    if power <= 0.0:
        raise ValueError("power must be positive")
    lam = model.decay_rate
    x = 4.0 * power / lam
    q = math.sqrt(1.0 + x)
    # power - (lam/2)(q - 1) == power * x / (1 + q)^2 exactly
    return power * x / ((1.0 + q) * (1.0 + q))


def wideband_rate_clarke(omega_m: float, power: float) -> float:
    """Closed-form wideband rate for the Clarke density.

    Two branches meet at power = omega_m / 2.  The low-power branch is
    rewritten so the near-total cancellation of its two logarithms happens
    analytically instead of in floating point.
    """
    if omega_m <= 0.0:
        raise ValueError("omega_m must be positive")
    if power <= 0.0:
        raise ValueError("power must be positive")
    x = 2.0 * power / omega_m
    if x <= 1.0:
        q = math.sqrt(1.0 - x * x)
        d = x * x / (1.0 + q)  # == 1 - q, stably
        bracket = d * math.log(2.0 / x) - q * math.log1p(-0.5 * d)
        return omega_m / math.pi * bracket
    s = math.sqrt(x * x - 1.0)
    return omega_m / math.pi * (math.log(2.0 / x) + s * math.atan(s))


def clarke_small_p_asymptote(omega_m: float, power: float) -> float:
    """Leading small-power behavior of the Clarke wideband rate:
    (2 / (pi omega_m)) log(1/power) power^2."""
    if omega_m <= 0.0:
        raise ValueError("omega_m must be positive")
    if power <= 0.0:
        raise ValueError("power must be positive")
    return 2.0 / (math.pi * omega_m) * math.log(1.0 / power) * power * power


def ct_small_p_coefficient(
    model: SpectrumModel, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Coefficient of power^2 in the wideband rate as power -> 0:
    (1/2) (1/2pi) integral of S^2.

    Raises :class:`~faderate.errors.DivergentIntegralError` when the square
    integral diverges, as it does for the Clarke density whose band-edge
    singularities are square-integrable in no neighborhood of the edge.
    """
    _require_base(model, CONTINUOUS, "small-power coefficient")
    return 0.5 * square_integral(model, spec)
