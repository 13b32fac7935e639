"""Explicit time integration for the reduced two-species diffusion system.

Two steppers share one update kernel:

* `step_global` - matrix method with one linearization per time step: the
  mole fractions are advanced with the flux field of the previous level,
  then the per-node inverse flux system is re-evaluated at the new
  composition to produce the paired flux field.

* `step_richardson` - local linearization: one step of size dt is carried
  out as `k_iters` equal sub-stages, re-evaluating the composition-dependent
  inverse before every sub-stage.  With k_iters = 1 this reduces exactly
  (bit for bit) to the global step, and a run with N outer steps and K
  sub-stages reproduces the explicit trajectory with N*K steps of size
  dt/K, so K large enough to bring dt/K under the diffusive stability
  bound makes time steps far above that bound usable.

Stability of the plain explicit update requires dt <= dx^2 / (2 max D);
`cfl_time_step` evaluates that bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, NamedTuple

import numpy as np

from .errors import SingularFluxSystemError, SnapshotMismatchError, ValidationError
from .grid import Grid1D, diff_backward, diff_forward
from .mixture import MixtureCoefficients, MixtureSpec, derive_coefficients, invert_flux_system

# Solver-produced states may leave the composition simplex by harmless
# one-ulp excursions; anything beyond this is treated as invalid.
SIMPLEX_TOL = 1e-9

SchemeKind = Literal["global", "richardson"]
SCHEME_KINDS: tuple[str, ...] = ("global", "richardson")


@dataclass
class MixtureState:
    """Mole-fraction fields of species 1 and 2 at one time level."""

    xi1: np.ndarray
    xi2: np.ndarray
    t: float = 0.0

    def copy(self) -> "MixtureState":
        return MixtureState(self.xi1.copy(), self.xi2.copy(), self.t)

    def simplex_violation(self) -> float:
        """Largest overshoot of xi1 >= 0, xi2 >= 0, xi1 + xi2 <= 1."""
        return float(max(
            -self.xi1.min(initial=0.0),
            -self.xi2.min(initial=0.0),
            (self.xi1 + self.xi2).max(initial=0.0) - 1.0,
            0.0,
        ))


@dataclass
class FluxField:
    """Molar-flux fields paired with a state.

    Entry j < J is the flux the update sees between nodes j and j+1 (the
    flux law evaluated with the forward difference at node j); the last
    entry is pinned to zero by the no-flux wall at x = 1.  The wall at
    x = 0 enters the conservation update as a zero inflow upstream of
    node 0, not as an entry of this field.
    """

    n1: np.ndarray
    n2: np.ndarray


class Snapshot(NamedTuple):
    t: float
    state: MixtureState
    flux: FluxField


@dataclass
class TimeSeries:
    """Ordered snapshots of one run plus the configuration that produced it."""

    grid: Grid1D
    snapshots: list[Snapshot]
    spec: MixtureSpec | None = None
    scheme: str | None = None
    dt: float | None = None
    k_iters: int | None = None

    @property
    def times(self) -> list[float]:
        return [snap.t for snap in self.snapshots]

    def at(self, t: float) -> Snapshot:
        """Snapshot at exactly time t; comparison requires exact times."""
        for snap in self.snapshots:
            if snap.t == t:
                return snap
        if self.snapshots:
            stored = (f"stored times run {self.snapshots[0].t!r}.."
                      f"{self.snapshots[-1].t!r} in {len(self.snapshots)} snapshots")
        else:
            stored = "series is empty"
        raise SnapshotMismatchError(f"no snapshot at t={t!r}; {stored}")


@dataclass(frozen=True)
class SchemeConfig:
    """Time-integration configuration for one run."""

    scheme: str
    dt: float
    t_end: float
    k_iters: int = 1
    snapshot_stride: int = 1

    def __post_init__(self):
        if self.scheme not in SCHEME_KINDS:
            raise ValidationError(
                f"scheme must be one of {SCHEME_KINDS}, got {self.scheme!r}"
            )
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValidationError(f"dt must be positive, got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end > 0.0):
            raise ValidationError(f"t_end must be positive, got {self.t_end!r}")
        if self.k_iters < 1:
            raise ValidationError(f"k_iters must be >= 1, got {self.k_iters!r}")
        if self.snapshot_stride < 1:
            raise ValidationError(
                f"snapshot_stride must be >= 1, got {self.snapshot_stride!r}"
            )


def cfl_time_step(grid: Grid1D, spec: MixtureSpec, safety: float = 1.0) -> float:
    """Stability bound dt = safety * dx^2 / (2 max(D12, D13, D23))."""
    if not (0.0 < safety <= 1.0):
        raise ValidationError(f"safety factor must lie in (0, 1], got {safety!r}")
    return safety * grid.dx * grid.dx / (2.0 * spec.d_max)


def compute_fluxes(state: MixtureState, spec: MixtureSpec,
                   coeffs: MixtureCoefficients, grid: Grid1D) -> FluxField:
    """Evaluate the inverse flux system on the state's forward differences.

    The last entry of each flux field is overwritten with zero (no-flux
    wall at x = 1; the forward difference there would otherwise read a
    phantom zero node).  Singular nodes raise with their index attached.
    """
    rhs1 = -diff_backward(state.xi1, grid)
    rhs2 = -diff_backward(state.xi2, grid)
    n1, n2 = invert_flux_system(coeffs, spec, state.xi1, state.xi2, rhs1, rhs2)
    n1[-1] = 0.0
    n2[-1] = 0.0
    # Adding +0.0 turns the -0.0 produced by negated zero gradients into
    # +0.0 and changes nothing else, keeping text output free of "-0".
    n1 += 0.0
    n2 += 0.0
    return FluxField(n1, n2)


def _advect(xi: np.ndarray, n: np.ndarray, dt: float, grid: Grid1D) -> np.ndarray:
    # diff_forward approximates -d/dx, so adding dt*D+ applies xi_t = -dN/dx.
    return xi + dt * diff_forward(n, grid)


def step_global(state: MixtureState, flux: FluxField, dt: float,
                spec: MixtureSpec, coeffs: MixtureCoefficients,
                grid: Grid1D) -> tuple[MixtureState, FluxField]:
    """Advance one step with the flux paired to `state`; returns the new
    state together with its freshly evaluated flux field."""
    new_state = MixtureState(
        xi1=_advect(state.xi1, flux.n1, dt, grid),
        xi2=_advect(state.xi2, flux.n2, dt, grid),
        t=state.t + dt,
    )
    new_flux = compute_fluxes(new_state, spec, coeffs, grid)
    return new_state, new_flux


def step_richardson(state: MixtureState, dt: float, k_iters: int,
                    spec: MixtureSpec, coeffs: MixtureCoefficients,
                    grid: Grid1D) -> tuple[MixtureState, FluxField]:
    """Advance one step of size dt as k_iters locally linearized sub-stages.

    Each sub-stage evaluates the inverse flux system at the latest iterate
    and advances it by dt/k_iters.  Returns the final iterate with the
    flux field that drove the last sub-stage.  The sub-stage size must
    satisfy the diffusive stability bound: k_iters >= dt / cfl_time_step.
    """
    if k_iters < 1:
        raise ValidationError(f"k_iters must be >= 1, got {k_iters!r}")
    sub_dt = dt / k_iters
    xi1, xi2 = state.xi1, state.xi2
    flux = None
    for k in range(1, k_iters + 1):
        try:
            flux = compute_fluxes(MixtureState(xi1, xi2), spec, coeffs, grid)
        except SingularFluxSystemError as err:
            err.iteration = k
            raise
        xi1 = _advect(xi1, flux.n1, sub_dt, grid)
        xi2 = _advect(xi2, flux.n2, sub_dt, grid)
    return MixtureState(xi1, xi2, t=state.t + dt), flux


def validate_state(state: MixtureState, grid: Grid1D) -> None:
    """Check field shapes, finiteness and simplex membership (1e-9 slack)."""
    for name, field in (("xi1", state.xi1), ("xi2", state.xi2)):
        if field.shape != (grid.n_nodes,):
            raise ValidationError(
                f"{name} has shape {field.shape}, expected ({grid.n_nodes},)"
            )
        if not np.isfinite(field).all():
            raise ValidationError(f"{name} contains non-finite entries")
    violation = state.simplex_violation()
    if violation > SIMPLEX_TOL:
        raise ValidationError(
            f"state leaves the composition simplex by {violation:.3e}"
        )


def run_simulation(initial: MixtureState, cfg: SchemeConfig,
                   spec: MixtureSpec, grid: Grid1D) -> TimeSeries:
    """Integrate from `initial` to t_end, recording strided snapshots.

    dt must divide t_end to 1e-9 relative; snapshots are stored at the
    initial time, every `snapshot_stride`-th step, and at exactly t_end.
    Runs are deterministic: identical inputs give identical outputs.
    """
    validate_state(initial, grid)
    n_end = round(cfg.t_end / cfg.dt)
    if n_end < 1 or abs(n_end * cfg.dt - cfg.t_end) > 1e-9 * cfg.t_end:
        raise ValidationError(
            f"dt={cfg.dt!r} does not divide t_end={cfg.t_end!r} "
            f"(closest step count {n_end})"
        )
    coeffs = derive_coefficients(spec)
    t0 = initial.t

    state = initial.copy()
    flux = compute_fluxes(state, spec, coeffs, grid)
    snapshots = [Snapshot(t0, state, flux)]

    for n in range(1, n_end + 1):
        try:
            if cfg.scheme == "global":
                state, flux = step_global(state, flux, cfg.dt, spec, coeffs, grid)
            else:
                state, flux = step_richardson(
                    state, cfg.dt, cfg.k_iters, spec, coeffs, grid
                )
        except SingularFluxSystemError as err:
            err.step = n
            raise
        # Label times as exact products so snapshots from runs at dt and
        # dt/2^m land on bit-identical floats; the final time is t_end itself.
        t = cfg.t_end + t0 if n == n_end else t0 + n * cfg.dt
        state = replace(state, t=t)
        if n % cfg.snapshot_stride == 0 or n == n_end:
            snapshots.append(Snapshot(t, state, flux))

    return TimeSeries(
        grid=grid,
        snapshots=snapshots,
        spec=spec,
        scheme=cfg.scheme,
        dt=cfg.dt,
        k_iters=cfg.k_iters if cfg.scheme == "richardson" else 1,
    )
