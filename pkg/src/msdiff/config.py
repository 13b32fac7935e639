"""Run configuration: flat key-value documents and their resolution.

A config document is plain text, one `key = value` per line, with `#`
comments and blank lines ignored.  Recognized keys:

    scenario, d12, d13, d23, init, j_max, scheme, dt, k_iters, t_end,
    snapshot_stride, output, seed

`dt` is a policy string: "cfl" (stability bound, fitted so an integer
number of steps lands exactly on t_end), "cfl/M" for an integer M >= 1,
a plain float, or a fraction like "1/100".  `seed` is reserved; runs are
deterministic and never consume randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .errors import ValidationError
from .grid import Grid1D, build_grid
from .scenarios import (
    INITIAL_PROFILES,
    SCENARIO_NAMES,
    Scenario,
    custom_scenario,
    scenario_catalog,
)
from .schemes import SCHEME_KINDS, SchemeConfig, cfl_time_step

MAX_AUTO_SNAPSHOTS = 512
_AUTO_STRIDE_TARGET = 510  # initial + strided + possible off-stride final <= 512

CONFIG_KEYS = (
    "scenario", "d12", "d13", "d23", "init", "j_max", "scheme", "dt",
    "k_iters", "t_end", "snapshot_stride", "output", "seed",
)


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "uphill-semidegenerate"
    d12: float | None = None
    d13: float | None = None
    d23: float | None = None
    init: str | None = None
    j_max: int = 140
    scheme: str = "global"
    dt: str = "cfl"
    k_iters: int = 1
    t_end: float | None = None
    snapshot_stride: int | None = None
    output: str = "snapshots.csv"
    seed: int | None = None


class ResolvedRun(NamedTuple):
    scenario: Scenario
    grid: Grid1D
    scheme_config: SchemeConfig
    n_steps: int


def _parse_int(field: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"field {field!r}: expected an integer, got {raw!r}") from None


def _parse_float(field: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ValidationError(f"field {field!r}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"field {field!r}: value must be finite, got {raw!r}")
    return value


def parse_config(text: str) -> RunConfig:
    """Parse and validate a key-value document, applying defaults."""
    values: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in CONFIG_KEYS:
            raise ValidationError(
                f"line {lineno}: unknown key {key!r}; known keys: {', '.join(CONFIG_KEYS)}"
            )
        if key in values:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        if key in ("d12", "d13", "d23", "t_end"):
            values[key] = _parse_float(key, raw)
        elif key in ("j_max", "k_iters", "snapshot_stride", "seed"):
            values[key] = _parse_int(key, raw)
        else:
            values[key] = raw
    return validate_config(RunConfig(**values))


def validate_config(cfg: RunConfig) -> RunConfig:
    """Field-level validation shared by config files and CLI flags."""
    if cfg.scenario != "custom" and cfg.scenario not in SCENARIO_NAMES:
        raise ValidationError(
            f"field 'scenario': unknown scenario {cfg.scenario!r}; "
            f"valid: {', '.join(SCENARIO_NAMES)} or 'custom'"
        )
    if cfg.scenario == "custom":
        missing = [k for k in ("d12", "d13", "d23", "init") if getattr(cfg, k) is None]
        if missing:
            raise ValidationError(
                f"custom scenario requires fields: {', '.join(missing)}"
            )
        if cfg.init not in INITIAL_PROFILES:
            raise ValidationError(
                f"field 'init': must be one of {INITIAL_PROFILES}, got {cfg.init!r}"
            )
    if cfg.j_max < 2:
        raise ValidationError(f"field 'j_max': must be >= 2, got {cfg.j_max}")
    if cfg.scheme not in SCHEME_KINDS:
        raise ValidationError(
            f"field 'scheme': must be one of {SCHEME_KINDS}, got {cfg.scheme!r}"
        )
    if cfg.k_iters < 1:
        raise ValidationError(f"field 'k_iters': must be >= 1, got {cfg.k_iters}")
    if cfg.t_end is not None and cfg.t_end <= 0:
        raise ValidationError(f"field 't_end': must be positive, got {cfg.t_end}")
    if cfg.snapshot_stride is not None and cfg.snapshot_stride < 1:
        raise ValidationError(
            f"field 'snapshot_stride': must be >= 1, got {cfg.snapshot_stride}"
        )
    parse_dt_policy(cfg.dt)
    return cfg


def parse_dt_policy(policy: str) -> tuple[str, float]:
    """Normalize a dt policy string to ("cfl", divisor) or ("abs", value)."""
    text = policy.strip().lower()
    if text == "cfl":
        return "cfl", 1.0
    if text.startswith("cfl/"):
        divisor = _parse_int("dt", text[4:])
        if divisor < 1:
            raise ValidationError(f"field 'dt': cfl divisor must be >= 1, got {divisor}")
        return "cfl", float(divisor)
    if "/" in text:
        num, _, den = text.partition("/")
        value = _parse_float("dt", num) / _parse_float("dt", den)
    else:
        value = _parse_float("dt", text)
    if value <= 0:
        raise ValidationError(f"field 'dt': time step must be positive, got {policy!r}")
    return "abs", value


def resolve_dt(policy: str, grid: Grid1D, scenario: Scenario,
               t_end: float) -> tuple[float, int]:
    """Turn a dt policy into a (dt, n_steps) pair with n_steps * dt = t_end.

    CFL policies compute the stability bound, then shrink dt minimally so
    the run ends exactly at t_end: dt = t_end / ceil(t_end / bound) (and
    M times as many steps for "cfl/M").  Absolute values must divide
    t_end to 1e-9 relative.
    """
    kind, value = parse_dt_policy(policy)
    if kind == "cfl":
        bound = cfl_time_step(grid, scenario.spec)
        base_steps = max(1, math.ceil(t_end / bound - 1e-9))
        n_steps = base_steps * int(value)
    else:
        n_steps = round(t_end / value)
        if n_steps < 1 or abs(n_steps * value - t_end) > 1e-9 * t_end:
            raise ValidationError(
                f"field 'dt': {value!r} does not divide t_end={t_end!r}"
            )
    return t_end / n_steps, n_steps


def auto_stride(n_steps: int) -> int:
    """Stride so a run stores at most MAX_AUTO_SNAPSHOTS snapshots."""
    return max(1, math.ceil(n_steps / _AUTO_STRIDE_TARGET))


def resolve_config(cfg: RunConfig) -> ResolvedRun:
    """Build the scenario, grid and scheme configuration for one run."""
    cfg = validate_config(cfg)
    if cfg.scenario == "custom":
        scenario = custom_scenario(cfg.d12, cfg.d13, cfg.d23, cfg.init,
                                   t_end=cfg.t_end if cfg.t_end else 1.0)
    else:
        scenario = scenario_catalog(cfg.scenario)
        if cfg.t_end is not None:
            scenario = replace(scenario, t_end=cfg.t_end)
    grid = build_grid(cfg.j_max)
    dt, n_steps = resolve_dt(cfg.dt, grid, scenario, scenario.t_end)
    stride = cfg.snapshot_stride or auto_stride(n_steps)
    scheme_config = SchemeConfig(
        scheme=cfg.scheme, dt=dt, t_end=scenario.t_end,
        k_iters=cfg.k_iters, snapshot_stride=stride,
    )
    return ResolvedRun(scenario=scenario, grid=grid,
                       scheme_config=scheme_config, n_steps=n_steps)
