"""Delimited text output for snapshots and convergence reports.

Snapshot schema: header `t,x,xi1,xi2,xi3,n1,n2,n3`, one row per
(snapshot, node), time-major then node index, every float printed with
17 significant digits so a write/parse round trip is bit-exact.
"""

from __future__ import annotations

import csv
import io
from os import PathLike
from typing import IO

import numpy as np

from .diagnostics import ConvergenceReport, reconstruct_third
from .errors import ValidationError
from .grid import Grid1D
from .schemes import FluxField, MixtureState, Snapshot, TimeSeries

SNAPSHOT_HEADER = "t,x,xi1,xi2,xi3,n1,n2,n3"
CONVERGENCE_HEADER = "scheme,dt,k_iters,l1_error,seconds"


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_text(sink: str | PathLike | IO[str], text: str) -> int:
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return len(text.encode("utf-8"))


def write_snapshot_csv(series: TimeSeries, sink: str | PathLike | IO[str]) -> int:
    """Write the series to `sink` (path or text stream); returns byte count."""
    if not series.snapshots:
        raise ValidationError("cannot write an empty time series")
    x = series.grid.node_positions()
    lines = [SNAPSHOT_HEADER]
    for snap in series.snapshots:
        xi3, n3 = reconstruct_third(snap.state, snap.flux)
        t_text = _fmt(snap.t)
        for j in range(series.grid.n_nodes):
            lines.append(",".join((
                t_text, _fmt(x[j]),
                _fmt(snap.state.xi1[j]), _fmt(snap.state.xi2[j]), _fmt(xi3[j]),
                _fmt(snap.flux.n1[j]), _fmt(snap.flux.n2[j]), _fmt(n3[j]),
            )))
    return _write_text(sink, "\n".join(lines) + "\n")


def read_snapshot_csv(source: str | PathLike | IO[str]) -> TimeSeries:
    """Parse a snapshot CSV back into a TimeSeries.

    The mixture spec and scheme metadata are not stored in the file and
    come back as None; grid and field data round-trip bit-exactly.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SNAPSHOT_HEADER.split(","):
        raise ValidationError(
            f"unexpected snapshot CSV header {header!r}; want {SNAPSHOT_HEADER!r}"
        )
    rows_by_time: dict[float, list[list[float]]] = {}
    order: list[float] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 8:
            raise ValidationError(f"line {lineno}: expected 8 columns, got {len(row)}")
        try:
            values = [float(cell) for cell in row]
        except ValueError:
            raise ValidationError(f"line {lineno}: non-numeric cell in {row!r}") from None
        t = values[0]
        if t not in rows_by_time:
            rows_by_time[t] = []
            order.append(t)
        rows_by_time[t].append(values)

    if not order:
        raise ValidationError("snapshot CSV contains no data rows")
    n_nodes = len(rows_by_time[order[0]])
    if n_nodes < 3:
        raise ValidationError(f"snapshot CSV needs >= 3 nodes, got {n_nodes}")
    grid = Grid1D(n_nodes - 1)
    snapshots = []
    for t in order:
        block = np.asarray(rows_by_time[t])
        if block.shape[0] != n_nodes:
            raise ValidationError(
                f"snapshot at t={t!r} has {block.shape[0]} rows, expected {n_nodes}"
            )
        state = MixtureState(xi1=block[:, 2].copy(), xi2=block[:, 3].copy(), t=t)
        flux = FluxField(n1=block[:, 5].copy(), n2=block[:, 6].copy())
        snapshots.append(Snapshot(t, state, flux))
    return TimeSeries(grid=grid, snapshots=snapshots)


def write_convergence_csv(report: ConvergenceReport,
                          sink: str | PathLike | IO[str]) -> int:
    """Write a convergence report; failed rows carry nan in l1_error."""
    lines = [CONVERGENCE_HEADER]
    for row in report.rows:
        lines.append(",".join((
            row.scheme, _fmt(row.dt), str(row.k_iters),
            _fmt(row.l1_error), f"{row.seconds:.6f}",
        )))
    return _write_text(sink, "\n".join(lines) + "\n")
