"""Acceptance gate: eleven end-to-end checks, one per numbered requirement.

Each test prints a single ``ACCEPTANCE <k> <label>: PASS/FAIL`` line; run
``pytest -s tests/test_acceptance.py`` to see all lines (failures also show
the line in the captured-output section of a plain run).  Stated runtime
budgets are asserted alongside the numeric targets.
"""
import functools
import math
import time

import numpy as np
import pytest

import faderate as fr

_GRID_RHO = np.logspace(-4.0, 4.0, 9)
_GRID_EPS = (1e-1, 1e-2, 1e-4)


def _criterion(number, label, limit_s=None):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if limit_s is not None and elapsed >= limit_s:
                    raise AssertionError(
                        f"runtime {elapsed:.1f}s exceeded the {limit_s:.0f}s budget"
                    )
            except BaseException as exc:
                reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                print(f"ACCEPTANCE {number:>2} {label}: FAIL  [{reason}]")
                raise
            print(f"ACCEPTANCE {number:>2} {label}: PASS  ({elapsed:.2f}s)")

        return wrapper

    return deco


@_criterion(1, "ar1-square-integral", limit_s=1.0)
def test_ar1_square_integral_closed_form():
    for eps in (1e-1, 1e-2, 1e-3):
        want = 2.0 / eps - 1.0
        got = fr.square_integral(fr.GaussMarkov(eps))
        assert abs(got - want) / want <= 1e-6, (eps, got, want)


@_criterion(2, "steady-state-oracle", limit_s=10.0)
def test_steady_state_quadrature_matches_closed_form():
    for eps in _GRID_EPS:
        model = fr.GaussMarkov(eps)
        for rho in _GRID_RHO:
            quad = fr.steady_state_error(model, float(rho))
            closed = fr.gm_steady_state_error(eps, float(rho))
            assert abs(quad - closed) / closed <= 1e-6, (eps, rho, quad, closed)


@_criterion(3, "effective-snr-regimes", limit_s=5.0)
def test_effective_snr_exhibits_three_slope_regimes():
    eps = 1e-4

    def slope(lo_db, hi_db):
        db = np.arange(lo_db, hi_db + 0.5, 1.0)
        rho = 10.0 ** (db / 10.0)
        eff = np.array(
            [fr.effective_snr(fr.gm_steady_state_error(eps, r), r) for r in rho]
        )
        return float(np.polyfit(np.log10(rho), np.log10(eff), 1)[0])

    quadratic = slope(-80.0, -50.0)
    linear = slope(-30.0, 30.0)
    saturated = slope(50.0, 80.0)
    assert abs(quadratic - 2.0) <= 0.1, quadratic
    assert abs(linear - 1.0) <= 0.05, linear
    assert -1e-9 <= saturated <= 0.1, saturated


@_criterion(4, "qpsk-rate-peak", limit_s=300.0)
def test_normalized_qpsk_rate_peaks_in_expected_band():
    model = fr.GaussMarkov(1e-4)
    db = np.arange(-40.0, 0.0 + 0.25, 0.5)
    ratios = []
    for d in db:
        rho = 10.0 ** (d / 10.0)
        ratios.append(fr.induced_channel_rate(model, rho) / rho)
    best = int(np.argmax(ratios))
    assert 0.87 <= ratios[best] <= 0.95, ratios[best]
    assert -18.0 <= db[best] <= -12.0, db[best]


@_criterion(5, "wideband-coincidence")
def test_wideband_rate_equals_per_unit_energy_times_power():
    models = (
        fr.GaussMarkovContinuous(0.9),
        fr.GaussMarkovContinuous(0.5),
        fr.Clarke(100.0),
        fr.Clarke(1.0),
    )
    for model in models:
        for power in (1e-3, 1e-1, 1.0, 10.0, 1e3):
            rate = fr.wideband_rate(model, power)
            bound = fr.capacity_per_unit_energy_ct(model, power) * power
            assert rate == bound, (model, power, rate, bound)


@_criterion(6, "psk-quadratic-gap")
def test_upper_bound_exceeds_low_snr_rate_by_half_rho_squared():
    models = (
        fr.Memoryless(),
        fr.GaussMarkov(0.3),
        fr.GaussMarkov(1e-2),
        fr.Notched(2),
        fr.Notched(4),
        fr.Peaked(4),
        fr.Peaked(16),
    )
    for model in models:
        for rho in (0.01, 0.1, 1.0, 10.0):
            gap = fr.capacity_upper_bound(model, rho) - fr.low_snr_rate(model, rho)
            want = rho * rho / 2.0
            assert abs(gap - want) <= 1e-12 * want, (model, rho, gap, want)


@_criterion(7, "ar1-ct-wideband", limit_s=5.0)
def test_continuous_ar1_closed_form_matches_quadrature():
    eps_c = 0.9
    model = fr.GaussMarkovContinuous(eps_c)
    for power in (1e-3, 1e-1, 1.0, 10.0, 1e3):
        closed = fr.wideband_rate_gm(eps_c, power)
        quad = fr.wideband_rate(model, power)
        assert abs(closed - quad) / quad <= 1e-6, (power, closed, quad)
    assert abs(fr.wideband_rate_gm(eps_c, 1.0) - 0.24655) <= 5e-6


@_criterion(8, "clarke-wideband", limit_s=10.0)
def test_clarke_wideband_branches_spots_and_divergence():
    omega_m = 100.0
    split = omega_m / 2.0
    left = fr.wideband_rate_clarke(omega_m, split * (1.0 - 1e-12))
    right = fr.wideband_rate_clarke(omega_m, split * (1.0 + 1e-12))
    assert abs(left - right) / right <= 1e-9, (left, right)
    spot = fr.wideband_rate_clarke(omega_m, 1e-3)
    assert abs(spot - 7.648e-8) / 7.648e-8 <= 1e-4, spot
    big = fr.wideband_rate_clarke(omega_m, 1e6)
    assert abs(big / 1e6 - 1.0) <= 0.02, big
    with pytest.raises(fr.DivergentIntegralError):
        fr.ct_small_p_coefficient(fr.Clarke(omega_m))


@_criterion(9, "mc-transient", limit_s=120.0)
def test_monte_carlo_transient_tracks_analytic_curve():
    eps = 1e-2
    cfg = fr.SimConfig(
        model=fr.GaussMarkov(eps), rho=1.0, length=200, trials=100_000, seed=42
    )
    res = fr.run_recursive_training(cfg, threads=4)
    target = math.sqrt(eps)
    final_z = abs(res.empirical_sigma2[-1] - target) / res.stderr[-1]
    assert final_z <= 4.0, final_z
    z = np.abs(res.empirical_sigma2 - res.analytic_sigma2) / res.stderr
    assert float(z.max()) <= 4.0, (float(z.max()), int(z.argmax()))


@_criterion(10, "example-families")
def test_notched_and_peaked_family_properties():
    for n in (2, 3, 4, 8, 64):
        model = fr.Notched(n)
        want = n / (n - 1.0)
        assert abs(fr.square_integral(model) - want) / want <= 1e-8
        assert fr.noiseless_pred_error(model) == 0.0

    ns = (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)
    pred = []
    for n in ns:
        model = fr.Peaked(n)
        frac = n ** -1.5
        ped = (math.sqrt(n) - 1.0) / (math.sqrt(n) - 1.0 / n)
        want_sq = math.sqrt(n) + (1.0 - frac) * ped * ped
        got_sq = fr.square_integral(model)
        assert abs(got_sq - want_sq) / want_sq <= 1e-6, (n, got_sq, want_sq)
        pred.append(fr.noiseless_pred_error(model))
    assert pred[-1] > 0.95, pred[-1]
    breaks = [
        (a, b, x, y) for (a, x), (b, y) in zip(zip(ns, pred), zip(ns[1:], pred[1:]))
        if y <= x
    ]
    assert not breaks, (
        "noiseless prediction error is not monotone over n in {2,...,1024}: "
        + ", ".join(f"f({a})={x:.5f} >= f({b})={y:.5f}" for a, b, x, y in breaks)
    )


@_criterion(11, "memoryless-zero-rate")
def test_memoryless_fading_supports_no_psk_rate():
    for rho in (0.01, 0.1, 1.0):
        assert fr.induced_channel_rate(fr.Memoryless(), rho) <= 1e-6
