"""Mutual information of PSK constellations.

Over the AWGN channel the input-output mutual information of equiprobable
PSK is a two-dimensional Gaussian integral, evaluated by Gauss-Hermite
quadrature with 64 nodes per real dimension.  Over a Rayleigh subchannel
with estimated receive CSI the gain is exponentially distributed in power,
and the rate is the expectation of the AWGN expression over that gain.

A seeded Monte Carlo estimator of the AWGN integral doubles as an
independent cross-check of the quadrature path.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, expect_exponential
from .prediction import effective_snr, steady_state_error
from .spectra import SpectrumModel

__all__ = [
    "PskConstellation",
    "QPSK",
    "psk_awgn_mi",
    "psk_awgn_mi_mc",
    "psk_fading_mi",
    "coherent_gaussian_capacity",
    "induced_channel_rate",
]

_GH_ORDER = 64


@dataclass(frozen=True)
class PskConstellation:
    """Equiprobable phase-shift keying with ``order`` unit-modulus points.

    Orders below 3 are rejected: the rate expansions used throughout assume
    a proper-complex input, and binary PSK is not proper.
    """

    order: int = 4

    def __post_init__(self):
        if self.order < 3:
            raise ValueError("PSK order must be at least 3 (binary is not proper-complex)")

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * math.pi * np.arange(self.order) / self.order)


QPSK = PskConstellation(4)


@functools.lru_cache(maxsize=1)
def _gh_grid():
    """Flattened 2-d Gauss-Hermite rule for E over z ~ CN(0, 1)."""
    nodes, weights = np.polynomial.hermite.hermgauss(_GH_ORDER)
    z = (nodes[:, None] + 1j * nodes[None, :]).ravel()
    w = (weights[:, None] * weights[None, :]).ravel() / math.pi
    return z, w


def _mi_exponents(points, snr, z):
    """log-domain likelihood ratios against the zeroth symbol.

    Entry (i, m) is |z_i|^2 - |sqrt(snr)(s_0 - s_m) + z_i|^2; averaging its
    logsumexp over the noise gives log(order) minus the mutual information.
    Symmetry of the constellation makes conditioning on s_0 lossless.
    """
    d = math.sqrt(snr) * (points[0] - points)
    return -np.abs(d)[None, :] ** 2 - 2.0 * np.real(np.conj(d)[None, :] * z[:, None])


def psk_awgn_mi(constellation: PskConstellation, snr: float) -> float:
    """Mutual information (nats) of PSK over complex AWGN at the given SNR."""
    if snr < 0.0:
        raise ValueError("snr must be nonnegative")
    if snr == 0.0:
        return 0.0
    z, w = _gh_grid()
    lse = logsumexp(_mi_exponents(constellation.points, snr, z), axis=1)
    return float(math.log(constellation.order) - np.dot(w, lse))


def psk_awgn_mi_mc(
    constellation: PskConstellation,
    snr: float,
    samples: int = 200_000,
    seed: int = 0,
):
    """Monte Carlo estimate of :func:`psk_awgn_mi`.

    Returns ``(estimate, stderr)``.  Serves as the independent check of the
    quadrature path; the estimator shares only the integrand with it.
    """
    if snr < 0.0:
        raise ValueError("snr must be nonnegative")
    if samples < 2:
        raise ValueError("need at least two samples")
    gen = np.random.Generator(np.random.Philox(seed))
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        chunk = min(samples - done, 1 << 16)
        z = (gen.standard_normal(chunk) + 1j * gen.standard_normal(chunk)) / math.sqrt(2.0)
        lse = logsumexp(_mi_exponents(constellation.points, snr, z), axis=1)
        vals = math.log(constellation.order) - lse
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals * vals))
        done += chunk
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


def psk_fading_mi(
    constellation: PskConstellation,
    rho_eff: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Rate of PSK over a Rayleigh subchannel with estimated receive CSI.

    The effective gain power is exponential with unit mean, so this is
    E[psk_awgn_mi(rho_eff * G)].
    """
    if rho_eff < 0.0:
        raise ValueError("rho_eff must be nonnegative")
    if rho_eff == 0.0:
        return 0.0
    return expect_exponential(lambda g: psk_awgn_mi(constellation, rho_eff * g), spec)


def coherent_gaussian_capacity(
    rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """E[log(1 + rho G)] with G unit-mean exponential: the capacity of the
    Rayleigh channel with perfect receive CSI and Gaussian inputs."""
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return 0.0
    return expect_exponential(lambda g: math.log1p(rho * g), spec)


def induced_channel_rate(
    model: SpectrumModel,
    rho: float,
    constellation: PskConstellation = QPSK,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """End-to-end achievable rate of the recursive training scheme.

    Chains steady-state prediction error -> effective SNR -> PSK rate over
    the estimated-CSI subchannel.
    """
    sigma2 = steady_state_error(model, rho, spec)
    rho_eff = effective_snr(sigma2, rho)
    return psk_fading_mi(constellation, rho_eff, spec)
