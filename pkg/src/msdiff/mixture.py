"""Mixture parameters and the per-node 2x2 flux system of a ternary gas.

With the third species eliminated (xi3 = 1 - xi1 - xi2, N3 = -N1 - N2),
the molar fluxes of the remaining two species satisfy at every grid node

    [ 1/D13 + alpha*xi2   -alpha*xi1       ] [N1]   [-dxi1/dx]
    [ -beta*xi2            1/D23 + beta*xi1] [N2] = [-dxi2/dx]

where alpha = 1/D12 - 1/D13 and beta = 1/D12 - 1/D23.  The system has the
closed-form inverse

    gamma * [ 1/D23 + beta*xi1   alpha*xi1      ]
            [ beta*xi2           1/D13 + alpha*xi2 ],

    gamma = D13*D23 / (1 + alpha*D13*xi2 + beta*D23*xi1).

Everything here is a pure function of its arguments; the solver applies
`invert_flux_system` over whole nodal arrays, while the scalar operations
mirror the same formulas one node at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularFluxSystemError

# Denominator magnitude below which the flux system is treated as singular.
# For both catalog parameter sets the denominator stays above 0.2 on the
# whole composition simplex, so this only trips on invalid input.
GAMMA_DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class MixtureSpec:
    """Binary diffusivities of the three species pairs (nondimensional)."""

    d12: float
    d13: float
    d23: float

    def __post_init__(self):
        for name in ("d12", "d13", "d23"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(
                    f"{name} must be a positive finite diffusivity, got {value!r}"
                )

    @property
    def d_max(self) -> float:
        return max(self.d12, self.d13, self.d23)


@dataclass(frozen=True)
class MixtureCoefficients:
    """Reciprocal-diffusivity differences that couple the two flux equations."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class NodeComposition:
    """Mole fractions of the first two species at a single node."""

    xi1: float
    xi2: float

    def __post_init__(self):
        if not (math.isfinite(self.xi1) and math.isfinite(self.xi2)):
            raise ValueError(f"composition must be finite, got ({self.xi1!r}, {self.xi2!r})")


@dataclass(frozen=True)
class FluxMatrix2:
    """Entries of a 2x2 real matrix, row-major: [[a, b], [c, d]]."""

    a: float
    b: float
    c: float
    d: float


def derive_coefficients(spec: MixtureSpec) -> MixtureCoefficients:
    """Return alpha = 1/D12 - 1/D13 and beta = 1/D12 - 1/D23."""
    return MixtureCoefficients(
        alpha=1.0 / spec.d12 - 1.0 / spec.d13,
        beta=1.0 / spec.d12 - 1.0 / spec.d23,
    )


def flux_system_matrix(coeffs: MixtureCoefficients, node: NodeComposition,
                       spec: MixtureSpec) -> FluxMatrix2:
    """Forward 2x2 system that multiplies (N1, N2) at one node."""
    return FluxMatrix2(
        a=1.0 / spec.d13 + coeffs.alpha * node.xi2,
        b=-coeffs.alpha * node.xi1,
        c=-coeffs.beta * node.xi2,
        d=1.0 / spec.d23 + coeffs.beta * node.xi1,
    )


def gamma_denominator(coeffs: MixtureCoefficients, node: NodeComposition,
                      spec: MixtureSpec) -> float:
    """Denominator of the gamma prefactor; vanishes only for inadmissible input."""
    return 1.0 + coeffs.alpha * spec.d13 * node.xi2 + coeffs.beta * spec.d23 * node.xi1


def flux_system_inverse(coeffs: MixtureCoefficients, node: NodeComposition,
                        spec: MixtureSpec) -> FluxMatrix2:
    """Closed-form inverse of `flux_system_matrix` at one node.

    Raises SingularFluxSystemError when the gamma denominator magnitude
    falls below GAMMA_DENOMINATOR_FLOOR.
    """
    denom = gamma_denominator(coeffs, node, spec)
    if abs(denom) < GAMMA_DENOMINATOR_FLOOR:
        raise SingularFluxSystemError(denominator=denom)
    gamma = spec.d13 * spec.d23 / denom
    return FluxMatrix2(
        a=gamma * (1.0 / spec.d23 + coeffs.beta * node.xi1),
        b=gamma * (coeffs.alpha * node.xi1),
        c=gamma * (coeffs.beta * node.xi2),
        d=gamma * (1.0 / spec.d13 + coeffs.alpha * node.xi2),
    )


def solve_node_fluxes(coeffs: MixtureCoefficients, node: NodeComposition,
                      spec: MixtureSpec, rhs1: float, rhs2: float) -> tuple[float, float]:
    """Apply the inverse system to a right-hand side (negative gradients)."""
    inv = flux_system_inverse(coeffs, node, spec)
    return inv.a * rhs1 + inv.b * rhs2, inv.c * rhs1 + inv.d * rhs2


def invert_flux_system(coeffs: MixtureCoefficients, spec: MixtureSpec,
                       xi1: np.ndarray, xi2: np.ndarray,
                       rhs1: np.ndarray, rhs2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized form of `solve_node_fluxes` over whole nodal arrays.

    Raises SingularFluxSystemError carrying the first offending node index.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        denom = 1.0 + coeffs.alpha * spec.d13 * xi2 + coeffs.beta * spec.d23 * xi1
        # Non-finite denominators mean the state itself has left the
        # representable range (diverging run); report them like singularities.
        bad = (np.abs(denom) < GAMMA_DENOMINATOR_FLOOR) | ~np.isfinite(denom)
        if bad.any():
            j = int(np.argmax(bad))
            raise SingularFluxSystemError(denominator=float(denom[j]), node=j)
        gamma = spec.d13 * spec.d23 / denom
        n1 = gamma * ((1.0 / spec.d23 + coeffs.beta * xi1) * rhs1 + (coeffs.alpha * xi1) * rhs2)
        n2 = gamma * ((coeffs.beta * xi2) * rhs1 + (1.0 / spec.d13 + coeffs.alpha * xi2) * rhs2)
    return n1, n2
