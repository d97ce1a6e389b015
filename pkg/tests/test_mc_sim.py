"""Simulator checks: fading synthesis statistics, reproducibility across
thread counts, and agreement between empirical and analytic prediction error."""
import dataclasses

import numpy as np
import pytest

import faderate as fr
from faderate.spectra import SpectrumModel


def test_synthesize_shapes_and_dtype():
    x = fr.synthesize_fading(fr.GaussMarkov(0.1), length=64, seed=3, trials=5)
    assert x.shape == (5, 64)
    assert x.dtype == np.complex128


def test_synthesize_deterministic_per_seed():
    m = fr.Notched(4)
    a = fr.synthesize_fading(m, length=128, seed=9, trials=4)
    b = fr.synthesize_fading(m, length=128, seed=9, trials=4)
    assert np.array_equal(a, b)
    c = fr.synthesize_fading(m, length=128, seed=10, trials=4)
    assert not np.array_equal(a, c)


def test_synthesize_trials_are_prefix_stable():
    # trial k must not depend on how many trials were requested
    m = fr.GaussMarkov(0.3)
    a = fr.synthesize_fading(m, length=32, seed=7, trials=2)
    b = fr.synthesize_fading(m, length=32, seed=7, trials=6)
    assert np.array_equal(a, b[:2])


def test_ar1_sample_statistics():
    eps = 0.2
    x = fr.synthesize_fading(fr.GaussMarkov(eps), length=4096, seed=0, trials=64)
    power = np.mean(np.abs(x) ** 2)
    assert power == pytest.approx(1.0, abs=0.02)
    lag1 = np.mean(x[:, 1:] * np.conj(x[:, :-1]))
    assert lag1.real == pytest.approx(np.sqrt(1.0 - eps), abs=0.02)
    assert abs(lag1.imag) < 0.02
    # proper complex: pseudo-covariance vanishes
    pseudo = np.mean(x * x)
    assert abs(pseudo) < 0.02


def test_memoryless_sample_statistics():
    x = fr.synthesize_fading(fr.Memoryless(), length=2048, seed=1, trials=32)
    assert np.mean(np.abs(x) ** 2) == pytest.approx(1.0, abs=0.02)
    lag1 = np.mean(x[:, 1:] * np.conj(x[:, :-1]))
    assert abs(lag1) < 0.02


def test_spectral_synthesis_matches_autocorrelation():
    # bandlimited model goes through the circulant path; check several lags
    m = fr.Notched(4)
    x = fr.synthesize_fading(m, length=2048, seed=2, trials=96)
    want = fr.autocorrelation_sequence(m, 6)
    for k in range(6):
        got = np.mean(x[:, k:] * np.conj(x[:, : x.shape[1] - k]))
        assert got.real == pytest.approx(want[k], abs=0.03)
        assert abs(got.imag) < 0.03


class _NegativeDensity(SpectrumModel):
    """Deliberately invalid: dips below zero, so no circulant root exists."""

    def evaluate(self, freq):
        return 1.0 + 1.5 * np.cos(2.0 * np.asarray(freq))


def test_embedding_rejects_negative_density():
    with pytest.raises(fr.EmbeddingFailureError):
        fr.synthesize_fading(_NegativeDensity(), length=64, seed=0, trials=1)


def test_sim_config_validation():
    m = fr.GaussMarkov(0.1)
    with pytest.raises(ValueError):
        fr.SimConfig(model=fr.GaussMarkovContinuous(0.1), rho=1.0, length=8, trials=4)
    with pytest.raises(ValueError):
        fr.SimConfig(model=m, rho=0.0, length=8, trials=4)
    with pytest.raises(ValueError):
        fr.SimConfig(model=m, rho=1.0, length=0, trials=4)
    with pytest.raises(ValueError):
        fr.SimConfig(model=m, rho=1.0, length=8, trials=0)
    with pytest.raises(ValueError):
        fr.SimConfig(model=m, rho=1.0, length=8, trials=4, batch_size=0)


def test_run_rejects_bad_threads():
    cfg = fr.SimConfig(model=fr.GaussMarkov(0.1), rho=1.0, length=8, trials=4)
    with pytest.raises(ValueError):
        fr.run_recursive_training(cfg, threads=0)


def test_result_matches_analytic_gauss_markov():
    cfg = fr.SimConfig(
        model=fr.GaussMarkov(1e-2), rho=1.0, length=64, trials=4000, seed=42
    )
    res = fr.run_recursive_training(cfg)
    assert res.empirical_sigma2.shape == (64,)
    assert np.all(res.stderr > 0)
    z = np.abs(res.empirical_sigma2 - res.analytic_sigma2) / res.stderr
    assert np.max(z) < 4.5


def test_result_matches_analytic_notched():
    cfg = fr.SimConfig(model=fr.Notched(4), rho=2.0, length=48, trials=4000, seed=7)
    res = fr.run_recursive_training(cfg)
    z = np.abs(res.empirical_sigma2 - res.analytic_sigma2) / res.stderr
    assert np.max(z) < 4.5
    # dense-solver oracles bracket the tail: sigma2[8] above, steady state below
    assert 0.824870948766943 < res.analytic_sigma2[-1] < 0.837442822482121


def test_thread_count_does_not_change_bits():
    cfg = fr.SimConfig(
        model=fr.GaussMarkov(0.05), rho=2.0, length=32, trials=3000, seed=3,
        batch_size=512,
    )
    one = fr.run_recursive_training(cfg, threads=1)
    four = fr.run_recursive_training(cfg, threads=4)
    assert np.array_equal(one.empirical_sigma2, four.empirical_sigma2)
    assert np.array_equal(one.stderr, four.stderr)


def test_seed_changes_bits():
    base = fr.SimConfig(model=fr.GaussMarkov(0.05), rho=2.0, length=16, trials=500)
    other = dataclasses.replace(base, seed=1)
    a = fr.run_recursive_training(base)
    b = fr.run_recursive_training(other)
    assert not np.array_equal(a.empirical_sigma2, b.empirical_sigma2)


def test_pilot_only_equivalent_to_modulated():
    # phase compensation makes the data symbols drop out of the error stats
    cfg = fr.SimConfig(
        model=fr.GaussMarkov(0.1), rho=1.0, length=32, trials=3000, seed=13
    )
    pilot = fr.run_recursive_training(dataclasses.replace(cfg, pilot_only=True))
    data = fr.run_recursive_training(cfg)
    spread = np.hypot(pilot.stderr, data.stderr)
    z = np.abs(pilot.empirical_sigma2 - data.empirical_sigma2) / spread
    assert np.max(z) < 4.0


def test_effective_snr_fields_consistent():
    cfg = fr.SimConfig(model=fr.GaussMarkov(0.1), rho=1.0, length=16, trials=800)
    res = fr.run_recursive_training(cfg)
    want = fr.effective_snr(float(res.analytic_sigma2[-1]), 1.0)
    assert res.analytic_rho_eff == pytest.approx(want, rel=1e-12)
    assert res.empirical_rho_eff >= 0.0
    assert res.trials == 800
    assert res.seed == cfg.seed
