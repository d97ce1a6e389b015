"""Prediction error checks: steady state, transient, filter bank, and
operating regimes, validated against dense oracles and closed forms."""
import math

import numpy as np
import pytest
from scipy.linalg import toeplitz

import faderate as fr


def test_gm_steady_state_quarter():
    # at eps=1/4 and rho=1 the closed form gives exactly 1/2
    assert fr.gm_steady_state_error(0.25, 1.0) == pytest.approx(0.5, abs=1e-12)
    assert fr.steady_state_error(fr.GaussMarkov(0.25), 1.0) == pytest.approx(0.5, rel=1e-9)


@pytest.mark.parametrize("eps", [0.5, 0.1, 1e-2, 1e-4])
@pytest.mark.parametrize("rho", [1e-4, 1e-1, 1.0, 1e2, 1e4])
def test_gm_steady_state_quadrature_vs_closed(eps, rho):
    quad_route = fr.steady_state_error(fr.GaussMarkov(eps), rho)
    closed = fr.gm_steady_state_error(eps, rho)
    assert quad_route == pytest.approx(closed, rel=1e-6)


def test_steady_state_zero_snr():
    assert fr.steady_state_error(fr.GaussMarkov(0.5), 0.0) == 1.0


def test_steady_state_memoryless_is_one():
    for rho in (0.1, 1.0, 100.0):
        assert fr.steady_state_error(fr.Memoryless(), rho) == pytest.approx(1.0, abs=1e-10)


def test_steady_state_notched_pinned():
    # sigma2 = (exp(g)-1)/rho with g = (1-1/n) log(1 + rho n/(n-1))
    assert fr.steady_state_error(fr.Notched(4), 2.0) == pytest.approx(
        0.824870948766943, rel=1e-9
    )


def test_low_snr_steady_state_expansion():
    # (1 - sigma2)/rho approaches (J-1)/2 as rho -> 0
    m = fr.GaussMarkov(0.5)
    target = (fr.square_integral(m) - 1.0) / 2.0
    for rho in (1e-3, 1e-5):
        slope = (1.0 - fr.steady_state_error(m, rho)) / rho
        assert slope == pytest.approx(target, rel=20.0 * rho)


def test_effective_snr_formula():
    assert fr.effective_snr(0.5, 1.0) == pytest.approx(1.0 / 3.0)
    assert fr.effective_snr(0.0, 2.0) == pytest.approx(2.0)
    assert fr.effective_snr(1.0, 5.0) == 0.0
    with pytest.raises(ValueError):
        fr.effective_snr(1.5, 1.0)
    with pytest.raises(ValueError):
        fr.effective_snr(0.5, -1.0)


def test_transient_first_step_closed_form():
    # sigma2[1] = 1 - rho(1-eps)/(1+rho)
    eps, rho = 0.1, 1.0
    seq = fr.transient_error_sequence(fr.GaussMarkov(eps), rho, 1)
    assert seq[0] == pytest.approx(1.0 - rho * (1.0 - eps) / (1.0 + rho), abs=1e-12)


def test_transient_matches_dense_oracle():
    # dense route: sigma2[l] = 1 - rho c^T (rho R + I)^{-1} c
    eps, rho = 0.1, 1.0
    pinned = [
        0.550000000000000,
        0.419354838709677,
        0.365909090909091,
        0.341098169717138,
        0.328908188585608,
        0.322752310708617,
    ]
    seq = fr.transient_error_sequence(fr.GaussMarkov(eps), rho, 6)
    assert np.allclose(seq, pinned, rtol=1e-12)
    r = (1.0 - eps) ** (np.arange(0, 7) / 2.0)
    for l in range(1, 7):
        R = toeplitz(r[:l])
        c = r[1 : l + 1]
        dense = 1.0 - rho * np.dot(c, np.linalg.solve(rho * R + np.eye(l), c))
        assert seq[l - 1] == pytest.approx(dense, rel=1e-12)


def test_transient_dense_oracle_notched():
    rho = 2.0
    m = fr.Notched(4)
    seq = fr.transient_error_sequence(m, rho, 8)
    r = np.array([fr.autocorrelation(m, k) for k in range(9)])
    for l in (1, 4, 8):
        R = toeplitz(r[:l])
        c = r[1 : l + 1]
        dense = 1.0 - rho * np.dot(c, np.linalg.solve(rho * R + np.eye(l), c))
        assert seq[l - 1] == pytest.approx(dense, rel=1e-10)


def test_transient_monotone_and_converges_to_steady_state():
    m = fr.GaussMarkov(0.1)
    seq = fr.transient_error_sequence(m, 1.0, 512)
    assert np.all(np.diff(seq) <= 1e-12)
    steady = fr.steady_state_error(m, 1.0)
    assert seq[-1] == pytest.approx(steady, rel=1e-4)
    assert np.all(seq >= steady - 1e-9)


def test_transient_memoryless_all_ones():
    seq = fr.transient_error_sequence(fr.Memoryless(), 3.0, 16)
    assert np.allclose(seq, 1.0, atol=1e-12)


def test_transient_zero_snr():
    seq = fr.transient_error_sequence(fr.GaussMarkov(0.5), 0.0, 5)
    assert np.allclose(seq, 1.0)


def test_filter_bank_shapes_and_first_row():
    sigma2, weights = fr.prediction_filter_bank(fr.GaussMarkov(0.2), 1.5, 6)
    assert sigma2.shape == (6,)
    assert weights.shape == (6, 6)
    assert sigma2[0] == 1.0
    assert np.allclose(weights[0], 0.0)
    # strictly lower triangular
    assert np.allclose(weights, np.tril(weights, -1))


def test_filter_bank_weights_solve_observation_normal_equations():
    # row l reversed solves toeplitz(rx[0..l-1]) w = rx[1..l] with
    # rx = rho r + delta, the phase-compensated observation autocovariance
    eps, rho = 0.1, 1.0
    sigma2, weights = fr.prediction_filter_bank(fr.GaussMarkov(eps), rho, 4)
    r = (1.0 - eps) ** (np.arange(0, 4) / 2.0)
    rx = rho * r
    rx[0] += 1.0
    w3 = np.linalg.solve(toeplitz(rx[:3]), rx[1:4])
    assert np.allclose(weights[3, :3][::-1], w3, rtol=1e-10)
    # pinned from the dense oracle
    assert np.allclose(w3, [0.28029279, 0.225, 0.19404886], atol=1e-7)


def test_filter_bank_sigma2_matches_transient():
    m = fr.Peaked(4)
    sigma2, _ = fr.prediction_filter_bank(m, 2.0, 8)
    seq = fr.transient_error_sequence(m, 2.0, 7)
    assert np.allclose(sigma2[1:], seq, rtol=1e-10)


def test_regime_classification_boundaries():
    eps = 1e-2
    assert fr.classify_regime(eps, eps / 2.0).regime == fr.QUADRATIC
    assert fr.classify_regime(eps, eps).regime == fr.LINEAR  # tie goes linear
    assert fr.classify_regime(eps, 1.0).regime == fr.LINEAR
    assert fr.classify_regime(eps, 1.0 / eps).regime == fr.LINEAR
    assert fr.classify_regime(eps, 2.0 / eps).regime == fr.SATURATION


def test_regime_approximations():
    eps = 1e-4
    low = fr.classify_regime(eps, eps / 10.0)
    assert low.sigma2_approx == pytest.approx(1.0 - (eps / 10.0) / eps)
    assert low.rho_eff_approx == pytest.approx((eps / 10.0) ** 2 / eps)
    mid = fr.classify_regime(eps, 1.0)
    assert mid.sigma2_approx == pytest.approx(math.sqrt(eps))
    assert mid.rho_eff_approx == pytest.approx(1.0)
    high = fr.classify_regime(eps, 10.0 / eps)
    assert high.sigma2_approx == pytest.approx(eps)
    assert high.rho_eff_approx == pytest.approx(1.0 / eps)


def test_regime_approximations_track_exact_values():
    # each regime's approximation stays within a factor-level band of the
    # exact effective SNR deep inside that regime
    eps = 1e-6
    for rho, rel in ((eps * 1e-2, 0.05), (1.0, 0.01), (1e2 / eps, 0.05)):
        info = fr.classify_regime(eps, rho)
        sigma2 = fr.gm_steady_state_error(eps, rho)
        exact = fr.effective_snr(sigma2, rho)
        assert info.rho_eff_approx == pytest.approx(exact, rel=rel)
