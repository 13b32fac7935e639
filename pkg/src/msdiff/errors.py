"""Exception types shared across the package."""

from __future__ import annotations


class MsdiffError(Exception):
    """Base class for all package errors."""


class ValidationError(MsdiffError, ValueError):
    """Bad user input: configuration, CLI arguments, or malformed files."""


class UnknownScenarioError(ValidationError):
    """Requested scenario name is not in the catalog."""

    def __init__(self, name: str, valid: tuple[str, ...]):
        self.name = name
        self.valid = valid
        super().__init__(
            f"unknown scenario {name!r}; valid scenarios: {', '.join(valid)}"
        )


class GridMismatchError(MsdiffError, ValueError):
    """A nodal field or series does not live on the expected grid."""


class SnapshotMismatchError(MsdiffError, ValueError):
    """No snapshot exists at the requested comparison time."""


class SingularFluxSystemError(MsdiffError, ArithmeticError):
    """The 2x2 flux system is numerically singular at some node.

    The closed-form inverse divides by 1 + alpha*D13*xi2 + beta*D23*xi1;
    a vanishing denominator signals a composition outside the physically
    admissible range for the given diffusivities.  Solver loops attach the
    node index, inner iteration and time-step index as they unwind.
    """

    def __init__(self, denominator: float, node: int | None = None,
                 iteration: int | None = None, step: int | None = None):
        self.denominator = denominator
        self.node = node
        self.iteration = iteration
        self.step = step
        super().__init__()

    def __str__(self) -> str:
        where = []
        if self.step is not None:
            where.append(f"step {self.step}")
        if self.iteration is not None:
            where.append(f"iteration {self.iteration}")
        if self.node is not None:
            where.append(f"node {self.node}")
        at = f" at {', '.join(where)}" if where else ""
        return (f"singular flux system{at}: "
                f"gamma denominator {self.denominator:.3e} below threshold")
