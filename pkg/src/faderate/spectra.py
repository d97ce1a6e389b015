"""Fading spectral-density families and derived functionals.

A fading process is described by its power spectral density, normalized to
unit power: (1/2pi) integral of S equals 1.  Discrete-time densities live on
[-pi, pi]; continuous-time ones on the real line.  All built-in families are
even in frequency.

The functionals exposed here (square integral, log-spectral integral,
noiseless prediction error, zero-set measure, autocorrelation) are computed
by adaptive quadrature for the parametric families and by exact closed-form
segment sums for tabulated densities, which are interpolated linearly.
"""
from __future__ import annotations

import abc
import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate as _scipy_integrate

from .errors import (
    AliasTruncationError,
    DivergentIntegralError,
    NonConvergenceError,
    OutOfDomainError,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    integrate_finite,
    integrate_halfline,
)

__all__ = [
    "DISCRETE",
    "CONTINUOUS",
    "SpectrumModel",
    "Memoryless",
    "GaussMarkov",
    "Notched",
    "Peaked",
    "GaussMarkovContinuous",
    "Clarke",
    "TabulatedSpectrum",
    "DiscretizedChannel",
    "eval_spectrum",
    "autocorrelation",
    "autocorrelation_sequence",
    "power_integral",
    "square_integral",
    "log_spectral_integral",
    "excess_log_integral",
    "noiseless_pred_error",
    "zero_set_measure",
    "discretize",
    "load_tabulated_csv",
]

DISCRETE = "discrete"
CONTINUOUS = "continuous"

# Densities below this value count as zero when measuring the zero set.
ZERO_DENSITY_THRESHOLD = 1e-12

# Escalating truncation declares a square integral divergent when partial
# integrals exceed this value without settling.
_DIVERGENCE_CEILING = 1e6


class SpectrumModel(abc.ABC):
    """Base class for unit-power spectral densities."""

    time_base: str = DISCRETE

    @abc.abstractmethod
    def evaluate(self, freq):
        """Density at ``freq`` (scalar or ndarray), without domain checks."""

    def quad_breakpoints(self) -> tuple:
        """Interior abscissae in (0, pi) or (0, inf) where the density is
        rough; forwarded to the adaptive integrator."""
        return ()

    def support_radius(self) -> float:
        """Half-width of the density's support (inf if unbounded)."""
        return math.inf

    def tail_envelope(self) -> float | None:
        """Coefficient c with S(w) <= c / w^2 for large w, if known."""
        return None

    def characteristic_frequency(self) -> float:
        """Rough scale of the density's fastest feature, used to build
        discretization grids."""
        return 1.0


# ---------------------------------------------------------------------------
# Discrete-time families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Memoryless(SpectrumModel):
    """Flat density: uncorrelated fading from sample to sample."""

    time_base = DISCRETE

    def evaluate(self, freq):
        return np.ones_like(np.asarray(freq, dtype=float))


@dataclass(frozen=True)
class GaussMarkov(SpectrumModel):
    """First-order autoregressive fading.

    ``eps`` is the per-step innovation variance; the lag-k correlation is
    (1 - eps)^(k/2).  Small eps means slow fading: the density concentrates
    in a peak of half-width about eps/2 around zero.
    """

    eps: float
    time_base = DISCRETE

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ValueError("eps must lie in (0, 1]")

    def evaluate(self, freq):
        w = np.asarray(freq, dtype=float)
        denom = (2.0 - self.eps) - 2.0 * math.sqrt(1.0 - self.eps) * np.cos(w)
        return self.eps / denom

    def quad_breakpoints(self):
        pts = []
        w = self.eps / 4.0
        while w < math.pi:
            pts.append(w)
            w *= 4.0
        return tuple(pts)

    def characteristic_frequency(self):
        return self.eps / 2.0


@dataclass(frozen=True)
class Notched(SpectrumModel):
    """Flat density with a zero notch of width 2*pi/n at the band edge.

    The density is n/(n-1) on |w| <= pi - pi/n and zero beyond, so the
    zero set has relative measure 1/n.
    """

    n: int
    time_base = DISCRETE

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")

    @property
    def edge(self) -> float:
        return math.pi - math.pi / self.n

    def evaluate(self, freq):
        w = np.abs(np.asarray(freq, dtype=float))
        level = self.n / (self.n - 1.0)
        return np.where(w <= self.edge, level, 0.0)

    def quad_breakpoints(self):
        return (self.edge,)


@dataclass(frozen=True)
class Peaked(SpectrumModel):
    """Tall narrow peak over a low pedestal.

    Height n on |w| <= pi * n^(-3/2); pedestal level
    (sqrt(n) - 1) / (sqrt(n) - 1/n) elsewhere.  As n grows the density
    becomes nearly flat in measure yet keeps a growing square integral.
    """

    n: int
    time_base = DISCRETE

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")

    @property
    def peak_edge(self) -> float:
        return math.pi * self.n ** -1.5

    @property
    def pedestal(self) -> float:
        rt = math.sqrt(self.n)
        return (rt - 1.0) / (rt - 1.0 / self.n)

    def evaluate(self, freq):
        w = np.abs(np.asarray(freq, dtype=float))
        return np.where(w <= self.peak_edge, float(self.n), self.pedestal)

    def quad_breakpoints(self):
        return (self.peak_edge,)

    def characteristic_frequency(self):
        return self.peak_edge


# ---------------------------------------------------------------------------
# Continuous-time families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussMarkovContinuous(SpectrumModel):
    """Ornstein-Uhlenbeck fading with Lorentzian density.

    ``eps_c`` in (0, 1) fixes the correlation decay: the autocorrelation is
    (1 - eps_c)^(|tau|/2), i.e. exp(-decay_rate |tau| / 2) with
    decay_rate = |log(1 - eps_c)|.
    """

    eps_c: float
    time_base = CONTINUOUS

    def __post_init__(self):
        if not 0.0 < self.eps_c < 1.0:
            raise ValueError("eps_c must lie in (0, 1)")

    @property
    def decay_rate(self) -> float:
        return abs(math.log1p(-self.eps_c))

    def evaluate(self, freq):
        w = np.asarray(freq, dtype=float)
        lam = self.decay_rate
        return lam / (w * w + 0.25 * lam * lam)

    def tail_envelope(self):
        return self.decay_rate

    def characteristic_frequency(self):
        return self.decay_rate / 2.0


@dataclass(frozen=True)
class Clarke(SpectrumModel):
    """Classic isotropic-scattering density, band-limited to |w| <= omega_m.

    Inverse-square-root singularities sit at the band edges; integrals
    against this density substitute w = omega_m * sin(theta) to remove
    them.
    """

    omega_m: float
    time_base = CONTINUOUS

    def __post_init__(self):
        if not self.omega_m > 0.0:
            raise ValueError("omega_m must be positive")

    def evaluate(self, freq):
        w = np.abs(np.asarray(freq, dtype=float))
        inside = w < self.omega_m
        with np.errstate(divide="ignore"):
            vals = np.where(
                inside,
                (2.0 / self.omega_m)
                / np.sqrt(np.maximum(1.0 - (w / self.omega_m) ** 2, 0.0)),
                0.0,
            )
        return vals

    def support_radius(self):
        return self.omega_m

    def characteristic_frequency(self):
        return self.omega_m


# ---------------------------------------------------------------------------
# Tabulated densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TabulatedSpectrum(SpectrumModel):
    """Even density stored on a half grid [0, fmax] with linear interpolation.

    Discrete-time tables must span [0, pi].  Continuous-time tables are
    treated as zero beyond the last grid point.  All derived functionals
    are exact for the interpolated density: each grid segment contributes
    a closed-form integral.
    """

    freqs: np.ndarray
    values: np.ndarray
    base: str = DISCRETE

    def __post_init__(self):
        f = np.asarray(self.freqs, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if f.ndim != 1 or v.ndim != 1 or f.shape != v.shape or f.shape[0] < 2:
            raise ValueError("freqs and values must be 1-d of equal length >= 2")
        if f[0] != 0.0 or np.any(np.diff(f) <= 0.0):
            raise ValueError("freqs must ascend strictly from 0")
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise ValueError("values must be finite and nonnegative")
        if self.base not in (DISCRETE, CONTINUOUS):
            raise ValueError("base must be 'discrete' or 'continuous'")
        if self.base == DISCRETE and abs(f[-1] - math.pi) > 1e-9:
            raise ValueError("discrete tables must span [0, pi]")
        if self.base == DISCRETE:
            f = f.copy()
            f[-1] = math.pi
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "time_base", self.base)
        power = self._power_half() / math.pi
        if abs(power - 1.0) > 1e-8:
            raise ValueError(
                f"table power {power:.3e} is not 1; renormalize the density first"
            )

    def evaluate(self, freq):
        w = np.abs(np.asarray(freq, dtype=float))
        return np.interp(w, self.freqs, self.values, left=self.values[0], right=0.0)

    def support_radius(self):
        return float(self.freqs[-1])

    def characteristic_frequency(self):
        return float(self.freqs[1])

    # -- exact segment sums over the half grid ------------------------------

    def _segments(self):
        return (
            self.freqs[:-1],
            self.freqs[1:],
            self.values[:-1],
            self.values[1:],
        )

    def _power_half(self) -> float:
        x0, x1, v0, v1 = self._segments()
        return float(np.sum((x1 - x0) * (v0 + v1)) / 2.0)

    def _square_half(self) -> float:
        x0, x1, v0, v1 = self._segments()
        return float(np.sum((x1 - x0) * (v0 * v0 + v0 * v1 + v1 * v1)) / 3.0)

    def _log_affine_half(self, scale: float, offset: float) -> float:
        """Integral of log(offset + scale * S) over the half grid.

        Exact for the piecewise-linear density: on each segment the argument
        is affine, and the mean of its log has a closed form.
        """
        x0, x1, v0, v1 = self._segments()
        u0 = offset + scale * v0
        u1 = offset + scale * v1
        return float(np.sum((x1 - x0) * _mean_log(u0, u1)))

    def _cos_half(self, t: float) -> float:
        """Integral of S(w) cos(t w) over the half grid, exact per segment."""
        if t == 0.0:
            return self._power_half()
        x0, x1, v0, v1 = self._segments()
        slope = (v1 - v0) / (x1 - x0)
        first = (v1 * np.sin(t * x1) - v0 * np.sin(t * x0)) / t
        second = slope * (np.cos(t * x1) - np.cos(t * x0)) / (t * t)
        return float(np.sum(first + second))

    def _zero_half(self, threshold: float) -> float:
        """Length of the subset of the half grid where S < threshold."""
        x0, x1, v0, v1 = self._segments()
        h = x1 - x0
        below0 = v0 < threshold
        below1 = v1 < threshold
        frac = np.zeros_like(h)
        both = below0 & below1
        frac[both] = 1.0
        # crossing segments: the linear density passes through the threshold
        cross = below0 ^ below1
        if np.any(cross):
            denom = np.abs(v1 - v0)
            t = np.where(denom > 0.0, np.abs(threshold - np.where(below0, v0, v1)) / np.where(denom > 0.0, denom, 1.0), 0.0)
            frac[cross] = t[cross]
        return float(np.sum(h * frac))


def _mean_log(u0, u1):
    """Mean of log over a segment whose argument moves linearly u0 -> u1.

    Exact value (u1 log u1 - u0 log u0)/(u1 - u0) - 1, with a series branch
    when the endpoints nearly coincide and the convention 0 log 0 = 0, which
    keeps segments that touch zero integrable.
    """
    u0 = np.asarray(u0, dtype=float)
    u1 = np.asarray(u1, dtype=float)
    mid = 0.5 * (u0 + u1)
    d = u1 - u0
    with np.errstate(divide="ignore", invalid="ignore"):
        l0 = np.where(u0 > 0.0, u0 * np.log(np.where(u0 > 0.0, u0, 1.0)), 0.0)
        l1 = np.where(u1 > 0.0, u1 * np.log(np.where(u1 > 0.0, u1, 1.0)), 0.0)
        exact = (l1 - l0) / np.where(d == 0.0, 1.0, d) - 1.0
        series = np.where(mid > 0.0, np.log(np.where(mid > 0.0, mid, 1.0)), -np.inf) - np.where(
            mid > 0.0, d * d / (24.0 * mid * mid), 0.0
        )
    use_series = np.abs(d) <= 1e-7 * mid
    out = np.where(use_series, series, exact)
    # a segment that is identically zero contributes -inf (log 0)
    return out


@dataclass(frozen=True)
class DiscretizedChannel:
    """Result of sampling a continuous-time channel with integrate-and-dump
    reception over intervals of length ``sample_interval``.

    ``spectrum`` is the unit-power discrete-time density of the sampled
    fading and ``rho`` the per-sample SNR produced by transmit power
    ``power``.
    """

    spectrum: TabulatedSpectrum
    rho: float
    sample_interval: float
    power: float


# ---------------------------------------------------------------------------
# Functionals
# ---------------------------------------------------------------------------


def _require_discrete(model: SpectrumModel, what: str):
    if model.time_base != DISCRETE:
        raise OutOfDomainError(f"{what} requires a discrete-time model")


def eval_spectrum(model: SpectrumModel, freq: float) -> float:
    """Density of ``model`` at a single frequency, with domain checks."""
    if model.time_base == DISCRETE and abs(freq) > math.pi + 1e-12:
        raise OutOfDomainError(f"|{freq}| exceeds pi for a discrete-time model")
    return float(model.evaluate(freq))


def _half_integral(model, f, spec):
    """Integral over [0, pi] of f(w, S(w)) for a discrete model."""
    return integrate_finite(
        lambda w: f(w, float(model.evaluate(w))),
        0.0,
        math.pi,
        spec,
        breakpoints=model.quad_breakpoints(),
    )


def power_integral(model: SpectrumModel, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """(1/2pi) integral of S, which is 1 for every valid model."""
    if isinstance(model, TabulatedSpectrum):
        return model._power_half() / math.pi
    if model.time_base == DISCRETE:
        return _half_integral(model, lambda w, s: s, spec) / math.pi
    return _ct_halfline(model, lambda s: s, spec) / math.pi


def square_integral(model: SpectrumModel, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """(1/2pi) integral of S^2.

    Finite for every discrete-time model with bounded density.  For
    continuous-time models the integral may diverge (band-edge
    singularities); divergence is detected by escalating truncation and
    reported as :class:`DivergentIntegralError`.
    """
    if isinstance(model, TabulatedSpectrum):
        return model._square_half() / math.pi
    if model.time_base == DISCRETE:
        return _half_integral(model, lambda w, s: s * s, spec) / math.pi
    return _ct_square_integral(model, spec)


def log_spectral_integral(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """(1/2pi) integral of log(1 + rho * S) over the model's band.

    For discrete-time models this is the Shannon integral of a bank of
    parallel subchannels at SNR rho; for continuous-time models ``rho``
    plays the role of the power level.
    """
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return 0.0
    if isinstance(model, TabulatedSpectrum):
        return model._log_affine_half(rho, 1.0) / math.pi
    if model.time_base == DISCRETE:
        return _half_integral(model, lambda w, s: math.log1p(rho * s), spec) / math.pi
    return _ct_halfline(model, lambda s: math.log1p(rho * s), spec) / math.pi


def _excess(x):
    """x - log(1 + x) without cancellation for small x."""
    if x < 1e-3:
        return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.25 - 0.2 * x)))
    return x - math.log1p(x)


def excess_log_integral(
    model: SpectrumModel, rho: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """(1/2pi) integral of [rho S - log(1 + rho S)] over the model's band.

    Because the density has unit power this equals rho minus the
    log-spectral integral, but the nonnegative integrand avoids the
    cancellation that form suffers when rho is small.
    """
    if rho < 0.0:
        raise ValueError("rho must be nonnegative")
    if rho == 0.0:
        return 0.0
    if isinstance(model, TabulatedSpectrum):
        return (rho * model._power_half() - model._log_affine_half(rho, 1.0)) / math.pi
    if model.time_base == DISCRETE:
        return _half_integral(model, lambda w, s: _excess(rho * s), spec) / math.pi
    return _ct_halfline(model, lambda s: _excess(rho * s), spec) / math.pi


def noiseless_pred_error(
    model: SpectrumModel, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """One-step prediction error of the noiseless fading sequence.

    Equals exp((1/2pi) integral of log S).  Exactly zero when the density
    vanishes on a set of positive measure, since the log integral then
    diverges to -inf.
    """
    _require_discrete(model, "noiseless prediction error")
    if zero_set_measure(model) > 0.0:
        return 0.0
    if isinstance(model, TabulatedSpectrum):
        val = model._log_affine_half(1.0, 0.0) / math.pi
        return math.exp(val) if np.isfinite(val) else 0.0
    val = _half_integral(model, lambda w, s: math.log(s), spec) / math.pi
    return float(np.clip(math.exp(val), 0.0, 1.0))


def zero_set_measure(model: SpectrumModel) -> float:
    """Normalized measure of {w : S(w) = 0} within the band.

    Uses the threshold ``ZERO_DENSITY_THRESHOLD`` for tabulated densities.
    """
    _require_discrete(model, "zero-set measure")
    if isinstance(model, Notched):
        return 1.0 / model.n
    if isinstance(model, TabulatedSpectrum):
        return model._zero_half(ZERO_DENSITY_THRESHOLD) / math.pi
    # the remaining built-ins are strictly positive
    return 0.0


def autocorrelation(
    model: SpectrumModel, lag, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Autocorrelation at the given lag (integer for discrete-time models,
    real time offset for continuous-time ones)."""
    if model.time_base == DISCRETE:
        k = int(round(float(lag)))
        if abs(k - float(lag)) > 1e-9:
            raise ValueError("discrete-time lags must be integers")
        k = abs(k)
        if isinstance(model, Memoryless):
            return 1.0 if k == 0 else 0.0
        if isinstance(model, GaussMarkov):
            return (1.0 - model.eps) ** (k / 2.0)
        if isinstance(model, TabulatedSpectrum):
            return model._cos_half(float(k)) / math.pi
        return _cos_quad(model, float(k), 0.0, math.pi, spec) / math.pi
    tau = abs(float(lag))
    if isinstance(model, GaussMarkovContinuous):
        return math.exp(-model.decay_rate * tau / 2.0)
    if isinstance(model, Clarke):
        # w = omega_m sin(theta) removes the band-edge singularity
        return (
            integrate_finite(
                lambda th: math.cos(model.omega_m * tau * math.sin(th)), 0.0, math.pi / 2.0, spec
            )
            * 2.0
            / math.pi
        )
    if isinstance(model, TabulatedSpectrum):
        return model._cos_half(tau) / math.pi
    raise OutOfDomainError("no autocorrelation rule for this model")


def autocorrelation_sequence(
    model: SpectrumModel, count: int, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> np.ndarray:
    """Autocorrelation at integer lags 0..count-1 of a discrete-time model."""
    _require_discrete(model, "autocorrelation sequence")
    if count < 1:
        raise ValueError("count must be positive")
    if isinstance(model, Memoryless):
        out = np.zeros(count)
        out[0] = 1.0
        return out
    if isinstance(model, GaussMarkov):
        return (1.0 - model.eps) ** (np.arange(count) / 2.0)
    return np.array([autocorrelation(model, k, spec) for k in range(count)])


def _cos_quad(model, t, a, b, spec):
    """Integral of S(w) cos(t w) over [a, b] for a parametric model."""
    pieces = [a] + [p for p in model.quad_breakpoints() if a < p < b] + [b]
    total = 0.0
    for lo, hi in zip(pieces, pieces[1:]):
        if t == 0.0:
            total += integrate_finite(lambda w: float(model.evaluate(w)), lo, hi, spec)
        else:
            val, err = _scipy_integrate.quad(
                lambda w: float(model.evaluate(w)),
                lo,
                hi,
                weight="cos",
                wvar=t,
                epsabs=spec.absolute_tolerance,
                epsrel=spec.relative_tolerance,
                limit=spec.max_subdivisions,
            )
            total += val
    return total


def _ct_halfline(model, f, spec):
    """Integral over [0, inf) of f(S(w)) for a continuous-time model,
    choosing a substitution suited to the family."""
    if isinstance(model, Clarke):
        wm = model.omega_m

        def through_edge(theta):
            s = (2.0 / wm) / math.cos(theta)
            return f(s) * wm * math.cos(theta)

        return integrate_finite(through_edge, 0.0, math.pi / 2.0, spec)
    if isinstance(model, TabulatedSpectrum):
        raise OutOfDomainError("tabulated integrals use exact segment sums")
    return integrate_halfline(
        lambda w: f(float(model.evaluate(w))), spec, check_tail=False
    )


def _ct_square_integral(model, spec):
    """(1/2pi) integral of S^2 for continuous time, with divergence
    detection by escalating truncation toward the singular point."""
    if isinstance(model, TabulatedSpectrum):
        return model._square_half() / math.pi

    def f(w):
        return float(model.evaluate(w)) ** 2

    support = model.support_radius()
    prev = None
    ladder = []
    if math.isfinite(support):
        cuts = [support * (1.0 - 2.0 ** (-j)) for j in range(4, 44, 4)]
    else:
        scale = max(model.characteristic_frequency(), 1.0)
        cuts = [scale * 4.0**j for j in range(1, 11)]
    for cut in cuts:
        try:
            val = integrate_finite(f, 0.0, cut, spec, breakpoints=ladder) / math.pi
        except NonConvergenceError:
            # growing partial sums that finally defeat the quadrature are
            # how a logarithmic divergence toward the band edge presents
            if prev is not None:
                raise DivergentIntegralError(
                    "square integral keeps growing toward the band edge"
                ) from None
            raise
        ladder.append(cut)
        if val > _DIVERGENCE_CEILING:
            raise DivergentIntegralError("square integral exceeds ceiling")
        if prev is not None and abs(val - prev) <= max(
            1e-8 * abs(val), spec.absolute_tolerance
        ):
            if not math.isfinite(support):
                env = model.tail_envelope()
                if env is not None:
                    val += env * env / (3.0 * cut**3) / math.pi
            return val
        prev = val
    raise DivergentIntegralError(
        "partial square integrals do not settle; the density is too singular"
    )


# ---------------------------------------------------------------------------
# Sampling a continuous-time channel
# ---------------------------------------------------------------------------


def _covariance_mass(model, T, spec):
    """Double integral of the autocorrelation over [0, T]^2.

    Reduces to 2 * integral of (T - tau) K(tau) over [0, T] because the
    autocorrelation of a real spectrum is real and even.
    """
    if isinstance(model, GaussMarkovContinuous):
        a = model.decay_rate / 2.0
        return 2.0 * (a * T + math.expm1(-a * T)) / (a * a)
    return 2.0 * integrate_finite(
        lambda t: (T - t) * autocorrelation(model, t, spec), 0.0, T, spec
    )


def _alias_terms(model, T):
    """Number of spectral replicas needed for a residual below 1e-10 * T
    (the unnormalized power of the sampled density scales like T)."""
    support = model.support_radius()
    if math.isfinite(support):
        return int(math.ceil((support * T + math.pi) / (2.0 * math.pi)))
    env = model.tail_envelope()
    if env is None:
        raise AliasTruncationError(
            "cannot bound the aliasing tail: unknown decay of the density"
        )
    # terms beyond K total at most 2 c T^2 / (6 pi^4 (2K-1)^3)
    target = 1e-10 * T
    needed = (2.0 * env * T * T / (6.0 * math.pi**4 * target)) ** (1.0 / 3.0)
    kmax = max(4, int(math.ceil((needed + 1.0) / 2.0)))
    if kmax > 1_000_000:
        raise AliasTruncationError("aliasing sum would need too many terms")
    return kmax


def _discretize_grid(model, T, uniform_points):
    """Half grid on [0, pi] resolving the sampled density's features:
    uniform coverage, logarithmic refinement toward the peak at zero, and
    clustered points at aliased band edges."""
    support = model.support_radius()
    parts = [np.linspace(0.0, math.pi, uniform_points + 1)]
    scale = model.characteristic_frequency() * T
    lo = max(scale * 1e-8, 1e-14)
    if lo < math.pi:
        parts.append(np.geomspace(lo, math.pi, 1800))
    if math.isfinite(support):
        half_width = support * T
        kmax = int(math.ceil((half_width + math.pi) / (2.0 * math.pi)))
        edges = []
        for k in range(kmax + 1):
            edges.extend((2.0 * math.pi * k - half_width, 2.0 * math.pi * k + half_width))
        offsets = half_width * 10.0 ** -np.arange(2.0, 13.0)
        for e in edges:
            if -half_width < e < math.pi + half_width:
                cluster = np.concatenate((e - offsets, e + offsets))
                parts.append(cluster[(cluster > 0.0) & (cluster < math.pi)])
    grid = np.unique(np.concatenate(parts))
    grid = grid[(grid >= 0.0) & (grid <= math.pi)]
    if grid[0] != 0.0:
        grid = np.concatenate(([0.0], grid))
    if grid[-1] != math.pi:
        grid = np.concatenate((grid, [math.pi]))
    return grid


def _alias_sum(model, T, grid):
    """Sampled-density values: sum over replicas k of
    S((w - 2 pi k)/T) * sinc^2(w - 2 pi k), with sinc(x) = sin(x)/x."""
    kmax = _alias_terms(model, T)
    support = model.support_radius()
    total = np.zeros_like(grid)
    for k in range(-kmax, kmax + 1):
        x = grid - 2.0 * math.pi * k
        if math.isfinite(support) and np.min(np.abs(x)) / T > support:
            continue
        total += model.evaluate(x / T) * np.sinc(x / math.pi) ** 2
    return total


def discretize(
    model: SpectrumModel,
    sample_interval: float,
    power: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    uniform_points: int = 2048,
) -> DiscretizedChannel:
    """Sample a continuous-time channel by integrate-and-dump reception.

    Produces the unit-power discrete-time density of the sampled fading
    (tabulated on an adaptive grid) together with the per-sample SNR
    rho = (power / T) * double integral of K over [0, T]^2.  The aliasing
    sum is truncated with a residual below 1e-10 relative to the sampled
    power, and the tabulated density is renormalized so that unit power
    holds exactly for the interpolated table.
    """
    if model.time_base != CONTINUOUS:
        raise OutOfDomainError("discretize expects a continuous-time model")
    if sample_interval <= 0.0 or power <= 0.0:
        raise ValueError("sample_interval and power must be positive")
    T = float(sample_interval)
    mass = _covariance_mass(model, T, spec)
    rho = power / T * mass
    grid = _discretize_grid(model, T, uniform_points)
    raw = _alias_sum(model, T, grid)
    # the 1/sqrt(mass) prefactor of the sampled density is absorbed by the
    # exact renormalization below
    raw = np.maximum(raw, 0.0)
    half_power = np.sum((grid[1:] - grid[:-1]) * (raw[1:] + raw[:-1])) / 2.0
    if half_power <= 0.0:
        raise AliasTruncationError("sampled density has no mass on the grid")
    values = raw * (math.pi / half_power)
    spectrum = TabulatedSpectrum(freqs=grid, values=values, base=DISCRETE)
    return DiscretizedChannel(
        spectrum=spectrum, rho=float(rho), sample_interval=T, power=float(power)
    )


# ---------------------------------------------------------------------------
# CSV input
# ---------------------------------------------------------------------------


def load_tabulated_csv(path, base: str, normalize: bool = False) -> TabulatedSpectrum:
    """Load a two-column CSV table (frequency, density) as a spectrum.

    A header row is required; frequencies may cover the full symmetric band
    or just the nonnegative half (mirrored values are averaged).  With
    ``normalize`` the density is rescaled to unit power, otherwise a table
    that is off by more than 1e-8 is rejected.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty table") from None
        try:
            float(header[0])
        except (ValueError, IndexError):
            pass
        else:
            raise ValueError("header row required in spectral tables")
        for line, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"line {line}: expected two columns")
            rows.append((float(row[0]), float(row[1])))
    if len(rows) < 2:
        raise ValueError("table needs at least two rows")
    freq = np.array([abs(r[0]) for r in rows])
    dens = np.array([r[1] for r in rows])
    if np.any(dens < 0.0):
        raise ValueError("densities must be nonnegative")
    # fold onto the half axis, averaging mirrored duplicates
    order = np.argsort(freq, kind="stable")
    freq, dens = freq[order], dens[order]
    uniq, inverse, counts = np.unique(freq, return_inverse=True, return_counts=True)
    summed = np.zeros_like(uniq)
    np.add.at(summed, inverse, dens)
    dens = summed / counts
    freq = uniq
    if freq[0] > 0.0:
        freq = np.concatenate(([0.0], freq))
        dens = np.concatenate(([dens[0]], dens))
    if base == DISCRETE:
        if abs(freq[-1] - math.pi) > 1e-6:
            raise ValueError("discrete tables must reach |w| = pi")
        freq[-1] = math.pi
    if normalize:
        half = np.sum((freq[1:] - freq[:-1]) * (dens[1:] + dens[:-1])) / 2.0
        if half <= 0.0:
            raise ValueError("table has no mass")
        dens = dens * (math.pi / half)
    return TabulatedSpectrum(freqs=freq, values=dens, base=base)
