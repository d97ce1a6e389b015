"""Deterministic CSV front end.

Every subcommand writes one delimited table with a header row.  Given the
same flags (and seed, where one applies) the bytes are identical across
runs; `--out` redirects the same bytes to a file and `--plot` additionally
renders a figure.  Exit codes: 0 on success, 2 on usage errors, 1 when a
numeric routine fails to converge.
"""
from __future__ import annotations

import functools
import math
import sys

import click
import numpy as np

from . import mc_sim, prediction, rates, spectra
from .errors import NonConvergenceError, NumericError
from .mutual_info import PskConstellation, coherent_gaussian_capacity, psk_fading_mi

_DISCRETE_CHOICES = ["memoryless", "gm-d", "notched", "peaked", "tabulated-d"]
_CONTINUOUS_CHOICES = ["gm-c", "clarke", "tabulated-c"]


def _need(condition: bool, message: str):
    if not condition:
        raise click.UsageError(message)


def _build_model(
    name,
    eps=None,
    n=None,
    eps_c=None,
    omega_m=None,
    table=None,
    normalize=False,
):
    try:
        if name == "memoryless":
            return spectra.Memoryless()
        if name == "gm-d":
            _need(eps is not None, "--eps is required for gm-d")
            return spectra.GaussMarkov(eps)
        if name == "notched":
            _need(n is not None, "--n is required for notched")
            return spectra.Notched(n)
        if name == "peaked":
            _need(n is not None, "--n is required for peaked")
            return spectra.Peaked(n)
        if name == "tabulated-d":
            _need(table is not None, "--table is required for tabulated-d")
            return spectra.load_tabulated_csv(table, spectra.DISCRETE, normalize)
        if name == "gm-c":
            _need(eps_c is not None, "--eps-c is required for gm-c")
            return spectra.GaussMarkovContinuous(eps_c)
        if name == "clarke":
            _need(omega_m is not None, "--omega-m is required for clarke")
            return spectra.Clarke(omega_m)
        if name == "tabulated-c":
            _need(table is not None, "--table is required for tabulated-c")
            return spectra.load_tabulated_csv(table, spectra.CONTINUOUS, normalize)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    raise click.UsageError(f"unknown model {name!r}")


def _parse_sweep(text: str) -> np.ndarray:
    parts = text.split(":")
    _need(len(parts) == 3, "sweep must be start:stop:step (dB)")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise click.UsageError("sweep must be three numbers start:stop:step") from None
    _need(step > 0.0, "sweep step must be positive")
    _need(start <= stop, "sweep start must not exceed stop")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _from_db(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _to_db(value: float) -> float:
    return 10.0 * math.log10(value) if value > 0.0 else -math.inf


def _fmt(value, precision: int) -> str:
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{precision}g}"


def _emit(header, rows, precision, out, trailer=None):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v, precision) for v in row))
    if trailer is not None:
        lines.append(trailer)
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NumericError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


def _common_options(fn):
    fn = click.option(
        "--precision",
        type=click.IntRange(1, 17),
        default=9,
        show_default=True,
        help="significant digits in the output",
    )(fn)
    fn = click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="write the table to this file instead of stdout",
    )(fn)
    fn = click.option(
        "--threads",
        type=click.IntRange(1, 256),
        default=1,
        show_default=True,
        help="worker threads (simulation only)",
    )(fn)
    fn = click.option(
        "--plot",
        "plot_path",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="also render a figure to this file",
    )(fn)
    return fn


@click.group()
def main():
    """Rates of PSK over temporally correlated Rayleigh fading without CSI."""


@main.command()
@click.option("--eps", type=float, required=True, help="innovation rate of the fading")
@click.option("--sweep", default="-80:80:1", show_default=True, help="SNR grid, dB")
@_common_options
@_guarded
def regimes(eps, sweep, precision, out, threads, plot_path):
    """Effective SNR and operating regime across an SNR sweep."""
    spectra.GaussMarkov(eps)  # validates the parameter
    grid = _parse_sweep(sweep)
    rows = []
    for rho_db in grid:
        rho = _from_db(rho_db)
        sigma2 = prediction.gm_steady_state_error(eps, rho)
        rho_eff = prediction.effective_snr(sigma2, rho)
        regime = prediction.classify_regime(eps, rho).regime.capitalize()
        rows.append((rho_db, _to_db(rho_eff), sigma2, regime))
    _emit(("rho_db", "rho_eff_db", "sigma2_inf", "regime"), rows, precision, out)
    if plot_path:
        from . import plots

        plots.plot_regimes(
            [r[0] for r in rows], [r[1] for r in rows], [r[3] for r in rows], plot_path
        )


@main.command("normalized-rate")
@click.option("--eps", type=float, required=True, help="innovation rate of the fading")
@click.option("--order", type=int, default=4, show_default=True, help="PSK order")
@click.option("--sweep", default="-40:0:0.5", show_default=True, help="SNR grid, dB")
@_common_options
@_guarded
def normalized_rate(eps, order, sweep, precision, out, threads, plot_path):
    """Achievable rate per unit SNR of the training scheme."""
    spectra.GaussMarkov(eps)
    constellation = PskConstellation(order)
    grid = _parse_sweep(sweep)
    rows = []
    for rho_db in grid:
        rho = _from_db(rho_db)
        sigma2 = prediction.gm_steady_state_error(eps, rho)
        rho_eff = prediction.effective_snr(sigma2, rho)
        rate = psk_fading_mi(constellation, rho_eff)
        coherent = coherent_gaussian_capacity(rho)
        rows.append((rho_db, rate, rate / rho, coherent / rho))
    _emit(
        ("rho_db", "rate_nats", "rate_over_rho", "coherent_gaussian_over_rho"),
        rows,
        precision,
        out,
    )
    if plot_path:
        from . import plots

        plots.plot_normalized_rate(
            [r[0] for r in rows], [r[2] for r in rows], [r[3] for r in rows], plot_path
        )


@main.command()
@click.option(
    "--model",
    "model_name",
    type=click.Choice(_CONTINUOUS_CHOICES[:2]),
    required=True,
    help="continuous-time fading model",
)
@click.option("--eps-c", type=float, default=None, help="per-second innovation rate (gm-c)")
@click.option("--omega-m", type=float, default=None, help="maximum Doppler shift (clarke)")
@click.option("--sweep", default="-30:60:1", show_default=True, help="power grid, dB")
@_common_options
@_guarded
def wideband(model_name, eps_c, omega_m, sweep, precision, out, threads, plot_path):
    """Wideband rate limit against its small- and large-power asymptotes."""
    model = _build_model(model_name, eps_c=eps_c, omega_m=omega_m)
    grid = _parse_sweep(sweep)
    if model_name == "gm-c":
        closed = lambda p: rates.wideband_rate_gm(model.eps_c, p)
        small = lambda p: p * p / model.decay_rate
    else:
        closed = lambda p: rates.wideband_rate_clarke(model.omega_m, p)
        small = lambda p: rates.clarke_small_p_asymptote(model.omega_m, p)
    rows = []
    for p_db in grid:
        power = _from_db(p_db)
        rate = closed(power)
        check = rates.wideband_rate(model, power)
        if abs(rate - check) > 1e-6 * max(abs(rate), abs(check)):
            raise NonConvergenceError(
                f"closed form {rate!r} and quadrature {check!r} disagree at P={power!r}"
            )
        rows.append((p_db, rate, small(power), power))
    _emit(
        ("p_db", "rate", "small_p_asymptote", "large_p_asymptote"),
        rows,
        precision,
        out,
    )
    if plot_path:
        from . import plots

        plots.plot_wideband(
            [r[0] for r in rows],
            [r[1] for r in rows],
            [r[2] for r in rows],
            [r[3] for r in rows],
            plot_path,
        )


def _discrete_model_options(fn):
    fn = click.option(
        "--model",
        "model_name",
        type=click.Choice(_DISCRETE_CHOICES),
        required=True,
        help="discrete-time fading model",
    )(fn)
    fn = click.option("--eps", type=float, default=None, help="innovation rate (gm-d)")(fn)
    fn = click.option("--n", type=int, default=None, help="shape parameter (notched/peaked)")(fn)
    fn = click.option(
        "--table",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="two-column CSV spectrum (tabulated-d)",
    )(fn)
    fn = click.option(
        "--normalize", is_flag=True, default=False, help="rescale a tabulated spectrum to unit power"
    )(fn)
    return fn


@main.command()
@_discrete_model_options
@click.option("--rho", type=float, required=True, help="SNR, linear scale")
@click.option("--length", "-L", "--L", type=int, required=True, help="steps to simulate")
@click.option("--trials", type=int, required=True, help="Monte Carlo trials")
@click.option("--seed", type=int, default=0, show_default=True, help="base seed")
@click.option("--order", type=int, default=4, show_default=True, help="PSK order")
@click.option("--pilot-only", is_flag=True, default=False, help="send a constant pilot")
@_common_options
@_guarded
def simulate(
    model_name,
    eps,
    n,
    table,
    normalize,
    rho,
    length,
    trials,
    seed,
    order,
    pilot_only,
    precision,
    out,
    threads,
    plot_path,
):
    """Monte Carlo transient of the training recursion vs. the analytic law."""
    model = _build_model(model_name, eps=eps, n=n, table=table, normalize=normalize)
    config = mc_sim.SimConfig(
        model=model,
        rho=rho,
        length=length,
        trials=trials,
        seed=seed,
        constellation=PskConstellation(order),
        pilot_only=pilot_only,
    )
    result = mc_sim.run_recursive_training(config, threads=threads)
    rows = [
        (l, result.analytic_sigma2[l], result.empirical_sigma2[l], result.stderr[l])
        for l in range(length)
    ]
    _emit(
        ("l", "sigma2_analytic", "sigma2_empirical", "stderr"),
        rows,
        precision,
        out,
        trailer=f"# seed={seed}",
    )
    if plot_path:
        from . import plots

        plots.plot_simulate(
            [r[0] for r in rows],
            result.analytic_sigma2,
            result.empirical_sigma2,
            result.stderr,
            plot_path,
        )


@main.command()
@_discrete_model_options
@click.option("--rho", type=float, required=True, help="SNR, linear scale")
@click.option("--length", "-L", "--L", type=int, required=True, help="steps to evaluate")
@_common_options
@_guarded
def transient(
    model_name, eps, n, table, normalize, rho, length, precision, out, threads, plot_path
):
    """Analytic prediction-error transient and per-step effective SNR."""
    model = _build_model(model_name, eps=eps, n=n, table=table, normalize=normalize)
    if length < 1:
        raise click.UsageError("--length must be positive")
    sigma2 = np.ones(length)
    if length > 1:
        sigma2[1:] = prediction.transient_error_sequence(model, rho, length - 1)
    rows = [
        (l, sigma2[l], prediction.effective_snr(float(sigma2[l]), rho))
        for l in range(length)
    ]
    _emit(("l", "sigma2", "rho_eff"), rows, precision, out)
    if plot_path:
        from . import plots

        plots.plot_transient([r[0] for r in rows], [r[1] for r in rows], plot_path)


@main.command()
@click.option(
    "--model",
    "model_name",
    type=click.Choice(_DISCRETE_CHOICES + _CONTINUOUS_CHOICES),
    required=True,
    help="fading model",
)
@click.option("--eps", type=float, default=None, help="innovation rate (gm-d)")
@click.option("--n", type=int, default=None, help="shape parameter (notched/peaked)")
@click.option("--eps-c", type=float, default=None, help="per-second innovation rate (gm-c)")
@click.option("--omega-m", type=float, default=None, help="maximum Doppler shift (clarke)")
@click.option(
    "--table",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="two-column CSV spectrum (tabulated)",
)
@click.option(
    "--normalize", is_flag=True, default=False, help="rescale a tabulated spectrum to unit power"
)
@click.option("--points", type=click.IntRange(2, 1_000_000), default=513, show_default=True)
@click.option("--fmax", type=float, default=None, help="largest frequency to evaluate")
@_common_options
@_guarded
def spectrum(
    model_name,
    eps,
    n,
    eps_c,
    omega_m,
    table,
    normalize,
    points,
    fmax,
    precision,
    out,
    threads,
    plot_path,
):
    """Sample a model's spectral density on a uniform frequency grid."""
    model = _build_model(
        model_name, eps=eps, n=n, eps_c=eps_c, omega_m=omega_m, table=table, normalize=normalize
    )
    if fmax is None:
        if model.time_base == spectra.DISCRETE:
            fmax = math.pi
        else:
            radius = model.support_radius()
            fmax = radius if math.isfinite(radius) else 20.0 * model.characteristic_frequency()
    _need(fmax > 0.0, "--fmax must be positive")
    grid = np.linspace(0.0, fmax, points)
    rows = [(f, spectra.eval_spectrum(model, f)) for f in grid]
    _emit(("freq", "density"), rows, precision, out)
    if plot_path:
        from . import plots

        plots.plot_spectrum([r[0] for r in rows], [r[1] for r in rows], plot_path)


if __name__ == "__main__":
    main()
