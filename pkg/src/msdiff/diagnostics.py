"""Derived quantities and verification instruments.

Third-species reconstruction, discrete totals, the L1 comparison norm,
the uphill-transport mask, and the scheme-comparison study that measures
errors against a fine-step reference run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, MsdiffError
from .grid import Grid1D, diff_backward
from .scenarios import Scenario
from .schemes import (
    FluxField,
    MixtureState,
    SchemeConfig,
    TimeSeries,
    run_simulation,
)

# Products of flux and gradient at roundoff scale carry no sign information.
UPHILL_MASK_THRESHOLD = 1e-12


def reconstruct_third(state: MixtureState, flux: FluxField) -> tuple[np.ndarray, np.ndarray]:
    """xi3 = 1 - xi1 - xi2 and N3 = -N1 - N2, pointwise.

    Grouped as 1 - (xi1 + xi2) and -(n1 + n2) so that the node sums
    (xi1 + xi2) + xi3 and (n1 + n2) + n3 come out exactly 1 and 0; the
    trailing +0.0 only normalizes -0.0 in the flux reconstruction.
    """
    return 1.0 - (state.xi1 + state.xi2), -(flux.n1 + flux.n2) + 0.0


def total_moles(state: MixtureState, grid: Grid1D) -> tuple[float, float, float]:
    """Discrete totals dx * sum_j xi_i,j for all three species."""
    m1 = grid.dx * float(state.xi1.sum())
    m2 = grid.dx * float(state.xi2.sum())
    m3 = grid.dx * float((1.0 - state.xi1 - state.xi2).sum())
    return m1, m2, m3


def l1_error(candidate: TimeSeries, reference: TimeSeries, t: float) -> float:
    """dx * sum_j (|xi1_c - xi1_r| + |xi2_c - xi2_r|) at exactly time t.

    Both series must share a grid and contain a snapshot whose time equals
    t bit-for-bit; no temporal interpolation is performed.
    """
    if candidate.grid != reference.grid:
        raise GridMismatchError(
            f"series grids differ: J={candidate.grid.j_max} vs J={reference.grid.j_max}"
        )
    cand = candidate.at(t)
    ref = reference.at(t)
    diff = np.abs(cand.state.xi1 - ref.state.xi1) + np.abs(cand.state.xi2 - ref.state.xi2)
    return candidate.grid.dx * float(diff.sum())


def uphill_mask(series: TimeSeries, threshold: float = UPHILL_MASK_THRESHOLD) -> np.ndarray:
    """Boolean (n_snapshots, J+1) mask of counter-Fickian transport of
    species 2: flux aligned with the gradient, N2 * (D- xi2) > threshold."""
    rows = []
    for snap in series.snapshots:
        gradient = diff_backward(snap.state.xi2, series.grid)
        rows.append(snap.flux.n2 * gradient > threshold)
    return np.array(rows, dtype=bool)


@dataclass(frozen=True)
class ConvergenceRow:
    scheme: str
    dt: float
    k_iters: int
    l1_error: float
    seconds: float
    failure: str | None = None


@dataclass
class ConvergenceReport:
    """One row per (scheme, dt, K), all measured against the same reference."""

    scenario: str
    t_compare: float
    reference_dt: float
    rows: list[ConvergenceRow] = field(default_factory=list)


def reference_run(scenario: Scenario, grid: Grid1D, dt: float,
                  snapshot_stride: int | None = None) -> TimeSeries:
    """Fine-step reference: the global scheme run at the given dt."""
    n_steps = round(scenario.t_end / dt)
    stride = snapshot_stride or max(1, n_steps)
    cfg = SchemeConfig(scheme="global", dt=dt, t_end=scenario.t_end,
                       snapshot_stride=stride)
    return run_simulation(scenario.build_initial(grid), cfg, scenario.spec, grid)


def convergence_study(scenario: Scenario, grid: Grid1D,
                      entries: list[tuple[str, float, int]],
                      reference_dt: float,
                      reference: TimeSeries | None = None) -> ConvergenceReport:
    """Run each (scheme, dt, k_iters) entry and tabulate its L1 error at
    t = T against the reference run, plus wall-clock seconds.

    A precomputed `reference` series may be passed to avoid re-running it;
    it must be a global-scheme run of this scenario at `reference_dt`.
    Failing entries are recorded as rows with NaN error and the failure
    message; they do not abort the remaining rows.
    """
    if reference is None:
        reference = reference_run(scenario, grid, reference_dt)
    report = ConvergenceReport(scenario=scenario.name, t_compare=scenario.t_end,
                               reference_dt=reference_dt)
    for scheme, dt, k_iters in entries:
        n_steps = round(scenario.t_end / dt)
        cfg = SchemeConfig(scheme=scheme, dt=dt, t_end=scenario.t_end,
                           k_iters=k_iters, snapshot_stride=max(1, n_steps))
        started = time.perf_counter()
        try:
            series = run_simulation(scenario.build_initial(grid), cfg,
                                    scenario.spec, grid)
            error = l1_error(series, reference, scenario.t_end)
            failure = None
        except MsdiffError as err:
            error = math.nan
            failure = str(err)
        seconds = time.perf_counter() - started
        report.rows.append(ConvergenceRow(
            scheme=scheme, dt=dt, k_iters=k_iters,
            l1_error=error, seconds=seconds, failure=failure,
        ))
    return report
