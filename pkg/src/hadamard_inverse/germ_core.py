"""Truncated power-series arithmetic at the origin.

A germ is stored by its first ``order`` Taylor coefficients as an immutable complex vector.
The Hadamard product multiplies coefficients termwise and has unit δ = 1/(1-ζ); the Cauchy
product is the ordinary series product. Binary operations truncate to the shorter operand.
"""

from __future__ import annotations

__all__ = [
    "TruncatedGerm",
    "cauchy_product",
    "coefficient_shift",
    "delta",
    "derivative",
    "hadamard_inverse",
    "hadamard_product",
    "rising_factorial",
    "theta_power",
]

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import InvalidParametersError, OrderUnderflowError, ZeroCoefficientError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False, init=False, repr=False)
class TruncatedGerm:
    """Germ at 0 known through coefficients c_0..c_{N-1}.

    Attributes:
        coeffs: Read-only complex vector of length ``order``
    """

    coeffs: npt.NDArray[np.complex128]

    def __init__(self, coeffs: Iterable[complex] | npt.ArrayLike) -> None:
        array = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if array.size == 0:
            raise InvalidParametersError("a truncated germ needs at least one coefficient", module="germ_core")
        if not np.all(np.isfinite(array)):
            bad = int(np.flatnonzero(~np.isfinite(array))[0])
            raise InvalidParametersError(f"coefficient {bad} is not finite", module="germ_core")
        array.setflags(write=False)
        object.__setattr__(self, "coeffs", array)

    @property
    def order(self) -> int:
        """Number of retained coefficients."""
        return int(self.coeffs.size)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.4g}" for c in self.coeffs[:4])
        tail = ", ..." if self.order > 4 else ""
        return f"TruncatedGerm(order={self.order}, [{head}{tail}])"

    def truncate(self, order: int) -> TruncatedGerm:
        """Keep the first ``order`` coefficients."""
        if not 1 <= order <= self.order:
            raise OrderUnderflowError(f"cannot truncate order {self.order} germ to {order}")
        return TruncatedGerm(self.coeffs[:order])

    def scaled(self, factor: complex) -> TruncatedGerm:
        """Multiply every coefficient by ``factor``."""
        return TruncatedGerm(self.coeffs * factor)

    def __add__(self, other: TruncatedGerm) -> TruncatedGerm:
        n = min(self.order, other.order)
        return TruncatedGerm(self.coeffs[:n] + other.coeffs[:n])

    def __sub__(self, other: TruncatedGerm) -> TruncatedGerm:
        n = min(self.order, other.order)
        return TruncatedGerm(self.coeffs[:n] - other.coeffs[:n])

    def partial_sum(self, zeta: complex | npt.ArrayLike) -> complex | npt.NDArray[np.complex128]:
        """Evaluate the truncated series (Horner) at one point or an array of points."""
        return np.polynomial.polynomial.polyval(zeta, self.coeffs)

    def allclose(self, other: TruncatedGerm, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        """Coefficientwise comparison on the common truncation."""
        n = min(self.order, other.order)
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=rtol, atol=atol))


def rising_factorial(n: npt.ArrayLike, s: int) -> npt.NDArray[np.float64]:
    """(n+1)(n+2)...(n+s) = (n+s)!/n!, elementwise; 1 for s = 0."""
    n = np.asarray(n, dtype=np.float64)
    result = np.ones_like(n)
    for k in range(1, s + 1):
        result = result * (n + k)
    return result


def delta(order: int) -> TruncatedGerm:
    """Unit of the Hadamard algebra, 1/(1-ζ): all coefficients equal 1."""
    if order < 1:
        raise OrderUnderflowError(f"order must be positive, got {order}")
    return TruncatedGerm(np.ones(order, dtype=np.complex128))


def hadamard_product(f: TruncatedGerm, g: TruncatedGerm) -> TruncatedGerm:
    """Termwise product f ⊙ g, truncated to the shorter operand."""
    n = min(f.order, g.order)
    return TruncatedGerm(f.coeffs[:n] * g.coeffs[:n])


def hadamard_inverse(f: TruncatedGerm, config: NumericsConfig | None = None) -> TruncatedGerm:
    """Germ with coefficients 1/f_n.

    Raises:
        ZeroCoefficientError: Some |f_n| is below ``config.zero_threshold``
    """
    config = config or DEFAULT_CONFIG
    vanishing = np.flatnonzero(np.abs(f.coeffs) < config.zero_threshold)
    if vanishing.size:
        index = int(vanishing[0])
        logger.debug(f"Hadamard inverse refused: |f_{index}| = {abs(f.coeffs[index]):.3e}")
        raise ZeroCoefficientError(index)
    return TruncatedGerm(1.0 / f.coeffs)


def cauchy_product(f: TruncatedGerm, g: TruncatedGerm) -> TruncatedGerm:
    """Ordinary series product, truncated to the shorter operand."""
    n = min(f.order, g.order)
    return TruncatedGerm(np.convolve(f.coeffs[:n], g.coeffs[:n])[:n])


def _check_shift(f: TruncatedGerm, s: int) -> None:
    if s < 0:
        raise OrderUnderflowError(f"shift must be nonnegative, got {s}")
    if s >= f.order:
        raise OrderUnderflowError(f"shift {s} leaves nothing of an order {f.order} germ")


def derivative(f: TruncatedGerm, s: int) -> TruncatedGerm:
    """s-th derivative: result_n = (n+s)!/n! f_{n+s}, order reduced by s."""
    _check_shift(f, s)
    n = np.arange(f.order - s)
    return TruncatedGerm(rising_factorial(n, s) * f.coeffs[s:])


def coefficient_shift(f: TruncatedGerm, s: int) -> TruncatedGerm:
    """Σ f_{n+s} ζ^n."""
    _check_shift(f, s)
    return TruncatedGerm(f.coeffs[s:])


def theta_power(g: TruncatedGerm, s: int) -> TruncatedGerm:
    """∂^s(ζ^s g): result_n = (n+s)!/n! g_n, order preserved."""
    if s < 0:
        raise OrderUnderflowError(f"power must be nonnegative, got {s}")
    return TruncatedGerm(rising_factorial(np.arange(g.order), s) * g.coeffs)
