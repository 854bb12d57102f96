"""Custom exception classes.

Every error names the module that raised it and the process exit code the CLI maps it to:
precondition violations exit with 2, numerical failures with 3.
"""

from __future__ import annotations

__all__ = [
    "BaseMismatchError",
    "CharacteristicRootError",
    "DomainViolationError",
    "HadamardError",
    "InvalidParametersError",
    "NonConvergenceError",
    "NonEnclosingError",
    "NumericalFailure",
    "OrderUnderflowError",
    "PolyPartPresentError",
    "PreconditionError",
    "ResonantCoefficientError",
    "SingularSystemError",
    "UnknownGermError",
    "ZeroCoefficientError",
    "ZeroResidueError",
]


class HadamardError(Exception):
    """Base class for all hadamard-inverse errors."""

    module: str = "hadamard_inverse"
    exit_code: int = 1

    def __init__(self, message: str, *, module: str | None = None) -> None:
        if module is not None:
            self.module = module
        self.detail = message
        super().__init__(f"{self.module}.{self.code}: {message}")

    @property
    def code(self) -> str:
        """Error identifier without the ``Error`` suffix (``ZeroCoefficient``, ...)."""
        name = type(self).__name__
        return name.removesuffix("Error")


class PreconditionError(HadamardError):
    """An operation was called outside its documented domain."""

    exit_code = 2


class NumericalFailure(HadamardError):
    """A numerical procedure failed to deliver a trustworthy result."""

    exit_code = 3


class ZeroCoefficientError(PreconditionError):
    """A coefficient vanishes, so the germ has no Hadamard inverse."""

    module = "germ_core"

    def __init__(self, index: int, *, module: str | None = None) -> None:
        self.index = index
        super().__init__(f"coefficient {index} vanishes, no Hadamard inverse", module=module)


class OrderUnderflowError(PreconditionError):
    """Requested shift or derivative order exceeds the truncation order."""

    module = "germ_core"


class InvalidParametersError(PreconditionError):
    """Parameters outside the admissible range."""

    module = "germ_catalog"


class ResonantCoefficientError(PreconditionError):
    """1 + h_n b_n vanishes: the perturbed germ has no Hadamard inverse."""

    module = "germ_catalog"

    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(f"1 + h_n*b_n vanishes at n={index}")


class UnknownGermError(PreconditionError):
    """A germ description could not be resolved."""

    module = "germ_catalog"


class PolyPartPresentError(PreconditionError):
    """Rational germ carries an entire polynomial part."""

    module = "ode_builder"


class CharacteristicRootError(PreconditionError):
    """P(n) = 0: the n-th Taylor coefficient of F vanishes."""

    module = "ode_builder"

    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(f"characteristic value vanishes at n={index}")


class DomainViolationError(PreconditionError):
    """Evaluation requested outside a validity domain or too close to a singular point."""

    module = "contour_quadrature"


class NonEnclosingError(PreconditionError):
    """Quadrature circle does not enclose the required points."""

    module = "contour_quadrature"


class BaseMismatchError(PreconditionError):
    """Singular jets are based at different points."""

    module = "volterra_engine"


class ZeroResidueError(PreconditionError):
    """A = 0: the Volterra recurrence has no pivot."""

    module = "volterra_engine"


class SingularSystemError(NumericalFailure):
    """Padé linear system is degenerate beyond tolerance."""

    module = "singularity_scope"


class NonConvergenceError(NumericalFailure):
    """Iterative procedure did not converge."""

    module = "singularity_scope"
