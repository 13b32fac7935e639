"""Uniform node grid on [0, 1] and the bidiagonal upwind difference operators.

The two operators act on nodal fields of length J+1 and are applied as
O(J) stencil sweeps rather than stored matrices:

    diff_forward  (D+): out[0] = -f[0]/dx,  out[j] = (f[j-1] - f[j])/dx
    diff_backward (D-): out[j] = (f[j+1] - f[j])/dx,  out[J] = -f[J]/dx

Note the orientation: diff_backward is a consistent forward-difference
approximation of d/dx, while diff_forward approximates the NEGATIVE of
d/dx (its lower-bidiagonal stencil telescopes so that the image of any
field with a zero last entry sums to zero, which is what makes the
explicit conservation update exactly mass-preserving).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, ValidationError


@dataclass(frozen=True)
class Grid1D:
    """J+1 equally spaced nodes on [0, 1]: x_j = j/J, dx = 1/J."""

    j_max: int
    dx: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.j_max, int) or self.j_max < 2:
            raise ValidationError(f"j_max must be an integer >= 2, got {self.j_max!r}")
        object.__setattr__(self, "dx", 1.0 / self.j_max)

    @property
    def n_nodes(self) -> int:
        return self.j_max + 1

    def node_positions(self) -> np.ndarray:
        # j/J instead of j*dx so nodes at representable fractions (0.25,
        # 0.5, 0.75, ...) land on them exactly.
        return np.arange(self.j_max + 1, dtype=float) / self.j_max


def build_grid(j_max: int) -> Grid1D:
    """Grid with nodes 0..j_max; rejects j_max < 2."""
    return Grid1D(j_max)


def _checked(values, grid: Grid1D) -> np.ndarray:
    out = np.asarray(values, dtype=float)
    if out.ndim != 1 or out.shape[0] != grid.n_nodes:
        raise GridMismatchError(
            f"field of shape {out.shape} does not match grid with {grid.n_nodes} nodes"
        )
    return out


def diff_forward(values, grid: Grid1D) -> np.ndarray:
    """Apply the lower-bidiagonal operator D+ to a nodal field."""
    f = _checked(values, grid)
    out = np.empty_like(f)
    out[0] = -f[0] / grid.dx
    out[1:] = (f[:-1] - f[1:]) / grid.dx
    return out


def diff_backward(values, grid: Grid1D) -> np.ndarray:
    """Apply the upper-bidiagonal operator D- to a nodal field."""
    f = _checked(values, grid)
    out = np.empty_like(f)
    out[:-1] = (f[1:] - f[:-1]) / grid.dx
    out[-1] = -f[-1] / grid.dx
    return out
