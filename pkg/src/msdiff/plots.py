"""Figure rendering for the report path (headless, file output only)."""

from __future__ import annotations

from os import PathLike
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .diagnostics import ConvergenceReport, reconstruct_third, uphill_mask
from .schemes import TimeSeries


def _profile_times(series: TimeSeries, count: int = 6) -> list[int]:
    n = len(series.snapshots)
    if n <= count:
        return list(range(n))
    idx = np.linspace(0, n - 1, count).round().astype(int)
    return sorted(set(idx.tolist()))


def plot_profiles(series: TimeSeries, path: str | PathLike) -> Path:
    """Mole-fraction profiles of all three species at a handful of times."""
    x = series.grid.node_positions()
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6), sharex=True)
    picks = _profile_times(series)
    for i in picks:
        snap = series.snapshots[i]
        xi3, _ = reconstruct_third(snap.state, snap.flux)
        for ax, values in zip(axes, (snap.state.xi1, snap.state.xi2, xi3)):
            ax.plot(x, values, label=f"t={snap.t:.3g}")
    for ax, title in zip(axes, (r"$\xi_1$", r"$\xi_2$", r"$\xi_3$")):
        ax.set_xlabel("x")
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
    axes[0].set_ylabel("mole fraction")
    axes[-1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_fluxes(series: TimeSeries, path: str | PathLike) -> Path:
    """Molar-flux profiles of all three species at a handful of times."""
    x = series.grid.node_positions()
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6), sharex=True)
    for i in _profile_times(series):
        snap = series.snapshots[i]
        _, n3 = reconstruct_third(snap.state, snap.flux)
        for ax, values in zip(axes, (snap.flux.n1, snap.flux.n2, n3)):
            ax.plot(x, values, label=f"t={snap.t:.3g}")
    for ax, title in zip(axes, (r"$N_1$", r"$N_2$", r"$N_3$")):
        ax.set_xlabel("x")
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
    axes[0].set_ylabel("molar flux")
    axes[-1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_spacetime(series: TimeSeries, path: str | PathLike) -> Path:
    """Space-time maps of xi1 and xi2 over the recorded snapshots."""
    x = series.grid.node_positions()
    t = np.array(series.times)
    xi1 = np.array([s.state.xi1 for s in series.snapshots])
    xi2 = np.array([s.state.xi2 for s in series.snapshots])
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.8), sharey=True)
    for ax, data, title in zip(axes, (xi1, xi2), (r"$\xi_1$", r"$\xi_2$")):
        mesh = ax.pcolormesh(x, t, data, shading="nearest")
        fig.colorbar(mesh, ax=ax)
        ax.set_xlabel("x")
        ax.set_title(title)
    axes[0].set_ylabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_uphill_mask(series: TimeSeries, path: str | PathLike) -> Path:
    """Space-time region where species 2 moves up its own gradient."""
    x = series.grid.node_positions()
    t = np.array(series.times)
    mask = uphill_mask(series)
    fig, ax = plt.subplots(figsize=(5.2, 4))
    ax.pcolormesh(x, t, mask.astype(float), shading="nearest", cmap="Greys")
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_title(r"$N_2\,\partial_x \xi_2 > 0$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_convergence(report: ConvergenceReport, path: str | PathLike) -> Path:
    """L1 error at the comparison time versus dt, one line per scheme."""
    fig, ax = plt.subplots(figsize=(5.2, 4))
    by_scheme: dict[str, list[tuple[float, float]]] = {}
    for row in report.rows:
        if row.failure is None:
            by_scheme.setdefault(row.scheme, []).append((row.dt, row.l1_error))
    for scheme, points in by_scheme.items():
        points.sort()
        dts, errs = zip(*points)
        ax.loglog(dts, errs, "o-", label=scheme)
    ax.set_xlabel(r"$\Delta t$")
    ax.set_ylabel(f"L1 error at t={report.t_compare:g}")
    ax.set_title(report.scenario)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_report(series: TimeSeries, outdir: str | PathLike) -> list[Path]:
    """Render the full figure set for one run into `outdir`."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [
        plot_profiles(series, outdir / "profiles.png"),
        plot_fluxes(series, outdir / "fluxes.png"),
        plot_spacetime(series, outdir / "spacetime.png"),
        plot_uphill_mask(series, outdir / "uphill_mask.png"),
    ]
