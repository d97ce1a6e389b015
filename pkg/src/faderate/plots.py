"""Figure rendering for the CLI.

Each function draws one command's output to a file.  The CSV stream stays
the canonical deterministic artifact; figures are a convenience view.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "plot_regimes",
    "plot_normalized_rate",
    "plot_wideband",
    "plot_simulate",
    "plot_transient",
    "plot_spectrum",
]


def _finish(fig, ax, path):
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_regimes(rho_db, rho_eff_db, regimes, path):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(rho_db, rho_eff_db, color="tab:blue")
    # shade regime changes
    labels = list(dict.fromkeys(regimes))
    colors = {"Quadratic": "#d62728", "Linear": "#2ca02c", "Saturation": "#9467bd"}
    for name in labels:
        mask = np.array([r == name for r in regimes])
        ax.plot(
            np.asarray(rho_db)[mask],
            np.asarray(rho_eff_db)[mask],
            ".",
            ms=3,
            color=colors.get(name, "k"),
            label=name,
        )
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("effective SNR (dB)")
    ax.legend()
    _finish(fig, ax, path)


def plot_normalized_rate(rho_db, rate_over_rho, coherent_over_rho, path):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(rho_db, rate_over_rho, label="PSK, recursive training")
    ax.plot(rho_db, coherent_over_rho, "--", label="coherent Gaussian")
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("rate / SNR (nats)")
    ax.legend()
    _finish(fig, ax, path)


def plot_wideband(p_db, rate, small_p, large_p, path):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.semilogy(p_db, rate, label="rate")
    ax.semilogy(p_db, small_p, ":", label="small-P asymptote")
    ax.semilogy(p_db, large_p, "--", label="large-P asymptote")
    ax.set_xlabel("P (dB)")
    ax.set_ylabel("rate (nats / s)")
    ax.legend()
    _finish(fig, ax, path)


def plot_simulate(step, analytic, empirical, stderr, path):
    step = np.asarray(step)
    empirical = np.asarray(empirical)
    stderr = np.asarray(stderr)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(step, analytic, label="analytic")
    ax.plot(step, empirical, ".", ms=3, label="empirical")
    ax.fill_between(
        step, empirical - 3 * stderr, empirical + 3 * stderr, alpha=0.25, lw=0
    )
    ax.set_xlabel("step")
    ax.set_ylabel("prediction error variance")
    ax.legend()
    _finish(fig, ax, path)


def plot_transient(step, sigma2, path):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(step, sigma2)
    ax.set_xlabel("step")
    ax.set_ylabel("prediction error variance")
    _finish(fig, ax, path)


def plot_spectrum(freq, density, path):
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(freq, density)
    ax.set_xlabel("frequency")
    ax.set_ylabel("spectral density")
    _finish(fig, ax, path)
