"""Named, reproducible experiment setups: parameters and initial profiles.

Both catalog scenarios use no-flux walls and run on [0, 1] up to T = 1.
Initial profiles are sampled pointwise at the nodes; piecewise branches
use half-open intervals so the partition covers the domain exactly once
(in particular the step profile is 0 at x = 0.5).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownScenarioError, ValidationError
from .grid import Grid1D
from .mixture import MixtureSpec
from .schemes import MixtureState

UPHILL_PROFILE = "uphill-profile"
STEP_PROFILE = "step-profile"
INITIAL_PROFILES: tuple[str, ...] = (UPHILL_PROFILE, STEP_PROFILE)

XI2_UNIFORM = 0.2


@dataclass(frozen=True)
class Scenario:
    name: str
    spec: MixtureSpec
    initial_profile: str
    t_end: float = 1.0

    def build_initial(self, grid: Grid1D) -> MixtureState:
        if self.initial_profile == UPHILL_PROFILE:
            return initial_uphill(grid)
        return initial_step(grid)


def initial_uphill(grid: Grid1D) -> MixtureState:
    """Ramp profile: xi1 = 0.8 on [0, 0.25), 1.6*(0.75 - x) on [0.25, 0.75),
    0 on [0.75, 1]; xi2 uniform at 0.2."""
    x = grid.node_positions()
    xi1 = np.where(x < 0.25, 0.8, np.where(x < 0.75, 1.6 * (0.75 - x), 0.0))
    xi2 = np.full_like(x, XI2_UNIFORM)
    return MixtureState(xi1, xi2, t=0.0)


def initial_step(grid: Grid1D) -> MixtureState:
    """Step profile: xi1 = 0.8 for x < 0.5, 0 otherwise; xi2 uniform at 0.2."""
    x = grid.node_positions()
    xi1 = np.where(x < 0.5, 0.8, 0.0)
    xi2 = np.full_like(x, XI2_UNIFORM)
    return MixtureState(xi1, xi2, t=0.0)


_CATALOG: dict[str, Scenario] = {
    "uphill-semidegenerate": Scenario(
        name="uphill-semidegenerate",
        spec=MixtureSpec(d12=0.833, d13=0.833, d23=0.168),
        initial_profile=UPHILL_PROFILE,
    ),
    "duncan-toor-asymptotic": Scenario(
        name="duncan-toor-asymptotic",
        spec=MixtureSpec(d12=0.0833, d13=0.680, d23=0.168),
        initial_profile=STEP_PROFILE,
    ),
}

SCENARIO_NAMES: tuple[str, ...] = tuple(_CATALOG)


def scenario_catalog(name: str) -> Scenario:
    """Look up a named scenario; unknown names raise with the valid list."""
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownScenarioError(name, SCENARIO_NAMES) from None


def custom_scenario(d12: float, d13: float, d23: float,
                    initial_profile: str, t_end: float = 1.0) -> Scenario:
    """Scenario with user-supplied diffusivities and a catalog profile."""
    if initial_profile not in INITIAL_PROFILES:
        raise ValidationError(
            f"init must be one of {INITIAL_PROFILES}, got {initial_profile!r}"
        )
    try:
        spec = MixtureSpec(d12=d12, d13=d13, d23=d23)
    except ValueError as err:
        raise ValidationError(str(err)) from None
    return Scenario(name="custom", spec=spec,
                    initial_profile=initial_profile, t_end=t_end)
