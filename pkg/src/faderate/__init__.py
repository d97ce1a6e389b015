"""Achievable rates of PSK over temporally correlated Rayleigh fading
channels estimated by recursive training, with no a priori CSI.

The package splits into spectral models (`spectra`), one-step MMSE
prediction of the fading from noisy phase-compensated observations
(`prediction`), rate and capacity functionals built on the effective SNR
(`rates`, `mutual_info`), a Monte Carlo check of the training recursion
(`mc_sim`), and a deterministic CSV command line (`cli`).
"""

from .errors import (
    AliasTruncationError,
    DivergentIntegralError,
    DivergentTailError,
    EmbeddingFailureError,
    InvalidIntervalError,
    NonConvergenceError,
    NotPositiveDefiniteError,
    NotRegularError,
    NumericError,
    OutOfDomainError,
)
from .mc_sim import SimConfig, SimResult, run_recursive_training, synthesize_fading
from .mutual_info import (
    QPSK,
    PskConstellation,
    coherent_gaussian_capacity,
    induced_channel_rate,
    psk_awgn_mi,
    psk_awgn_mi_mc,
    psk_fading_mi,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    ToeplitzSystem,
    expect_exponential,
    integrate_finite,
    integrate_halfline,
    levinson_prediction,
    toeplitz_solve,
)
from .prediction import (
    LINEAR,
    QUADRATIC,
    SATURATION,
    RegimeInfo,
    classify_regime,
    effective_snr,
    gm_steady_state_error,
    prediction_filter_bank,
    steady_state_error,
    transient_error_sequence,
)
from .rates import (
    capacity_per_unit_energy_ct,
    capacity_per_unit_energy_dt,
    capacity_upper_bound,
    clarke_small_p_asymptote,
    ct_small_p_coefficient,
    high_snr_capacity_regular,
    high_snr_prelog_deterministic,
    low_snr_rate,
    wideband_rate,
    wideband_rate_clarke,
    wideband_rate_gm,
)
from .spectra import (
    CONTINUOUS,
    DISCRETE,
    Clarke,
    DiscretizedChannel,
    GaussMarkov,
    GaussMarkovContinuous,
    Memoryless,
    Notched,
    Peaked,
    SpectrumModel,
    TabulatedSpectrum,
    autocorrelation,
    autocorrelation_sequence,
    discretize,
    eval_spectrum,
    excess_log_integral,
    load_tabulated_csv,
    log_spectral_integral,
    noiseless_pred_error,
    power_integral,
    square_integral,
    zero_set_measure,
)

__version__ = "0.1.0"

__all__ = [
    "AliasTruncationError",
    "DivergentIntegralError",
    "DivergentTailError",
    "EmbeddingFailureError",
    "InvalidIntervalError",
    "NonConvergenceError",
    "NotPositiveDefiniteError",
    "NotRegularError",
    "NumericError",
    "OutOfDomainError",
    "SimConfig",
    "SimResult",
    "run_recursive_training",
    "synthesize_fading",
    "QPSK",
    "PskConstellation",
    "coherent_gaussian_capacity",
    "induced_channel_rate",
    "psk_awgn_mi",
    "psk_awgn_mi_mc",
    "psk_fading_mi",
    "DEFAULT_QUADRATURE",
    "QuadratureSpec",
    "ToeplitzSystem",
    "expect_exponential",
    "integrate_finite",
    "integrate_halfline",
    "levinson_prediction",
    "toeplitz_solve",
    "LINEAR",
    "QUADRATIC",
    "SATURATION",
    "RegimeInfo",
    "classify_regime",
    "effective_snr",
    "gm_steady_state_error",
    "prediction_filter_bank",
    "steady_state_error",
    "transient_error_sequence",
    "capacity_per_unit_energy_ct",
    "capacity_per_unit_energy_dt",
    "capacity_upper_bound",
    "clarke_small_p_asymptote",
    "ct_small_p_coefficient",
    "high_snr_capacity_regular",
    "high_snr_prelog_deterministic",
    "low_snr_rate",
    "wideband_rate",
    "wideband_rate_clarke",
    "wideband_rate_gm",
    "CONTINUOUS",
    "DISCRETE",
    "Clarke",
    "DiscretizedChannel",
    "GaussMarkov",
    "GaussMarkovContinuous",
    "Memoryless",
    "Notched",
    "Peaked",
    "SpectrumModel",
    "TabulatedSpectrum",
    "autocorrelation",
    "autocorrelation_sequence",
    "discretize",
    "eval_spectrum",
    "excess_log_integral",
    "load_tabulated_csv",
    "log_spectral_integral",
    "noiseless_pred_error",
    "power_integral",
    "square_integral",
    "zero_set_measure",
]
