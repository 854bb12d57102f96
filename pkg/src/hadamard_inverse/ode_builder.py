"""Euler-type differential operators annihilating Hadamard inverses of single-pole germs.

For F = Σ_{j=1}^{M} a_j (ω-ζ)^{-j} the inverse G = F^{⊙-1} satisfies

    Σ_{k<M} c_k X^k ∂_X^k G = 1/(1 - ωX),   c_k = Σ_{j>k} a_j ω^{-j} C(j-1, k)/k!

The operator is diagonal on monomials: X^n is multiplied by the characteristic value
P(n) = Σ c_k n!/(n-k)!, which equals ωⁿ F_n. Hence b_n = ωⁿ/P(n), and G is singular only at
0 (when M >= 2) and at ω^{-1}.
"""

from __future__ import annotations

__all__ = [
    "EulerOperator",
    "RecurrenceReport",
    "build_euler_operator",
    "characteristic_value",
    "characteristic_values",
    "singular_points",
    "solve_ode_series",
    "verify_recurrence",
]

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import CharacteristicRootError, InvalidParametersError, PolyPartPresentError
from .germ_catalog import RationalGerm, expand
from .germ_core import TruncatedGerm, hadamard_inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EulerOperator:
    """Σ_k c_k X^k ∂_X^k with right-hand side 1/(1-ωX).

    Attributes:
        coeffs: c_0..c_{M-1}, with c_{M-1} != 0
        omega: Pole ω of the germ the operator was built from
    """

    coeffs: tuple[complex, ...]
    omega: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        object.__setattr__(self, "omega", complex(self.omega))
        if not self.coeffs or self.coeffs[-1] == 0:
            raise InvalidParametersError("leading operator coefficient must be nonzero", module="ode_builder")
        if self.omega == 0:
            raise InvalidParametersError("omega must be nonzero", module="ode_builder")

    @property
    def order(self) -> int:
        """Differential order M-1."""
        return len(self.coeffs) - 1

    def apply(self, series: TruncatedGerm) -> TruncatedGerm:
        """Action on a truncated series: coefficient n is multiplied by P(n)."""
        return TruncatedGerm(characteristic_values(self, series.order) * series.coeffs)


@dataclass(frozen=True)
class RecurrenceReport:
    """Outcome of checking P(n)·b_n = ωⁿ.

    Attributes:
        max_residual: max_n |P(n)·b_n/ωⁿ - 1|
        worst_index: n attaining the maximum
        count: Number of coefficients checked
    """

    max_residual: float
    worst_index: int
    count: int

    def passed(self, tol: float) -> bool:
        return self.max_residual < tol


def build_euler_operator(F: RationalGerm) -> EulerOperator:
    """Collect the Leibniz expansion of F ⊙ G = δ into an Euler operator.

    Args:
        F: Single-pole rational germ without polynomial part

    Returns:
        Operator with c_k = Σ_{j=k+1}^{M} a_j ω^{-j} C(j-1, k)/k!

    Raises:
        PolyPartPresentError: F has an entire addend; remove it with
            :func:`~hadamard_inverse.germ_catalog.entire_correction` first
    """
    if any(c != 0 for c in F.poly_part):
        raise PolyPartPresentError(
            "germ has a polynomial part; invert the polar part and add the entire correction"
        )
    omega = F.pole
    M = F.pole_order
    coeffs = []
    for k in range(M):
        total = sum(
            F.pole_coeffs[j - 1] * omega ** (-j) * math.comb(j - 1, k) for j in range(k + 1, M + 1)
        )
        coeffs.append(total / math.factorial(k))
    op = EulerOperator(tuple(coeffs), omega)
    logger.debug(f"Euler operator of order {op.order} at ω={omega}: {op.coeffs}")
    return op


def characteristic_values(op: EulerOperator, count: int) -> npt.NDArray[np.complex128]:
    """P(0)..P(count-1)."""
    n = np.arange(count, dtype=np.float64)
    total = np.zeros(count, dtype=np.complex128)
    falling = np.ones(count, dtype=np.float64)
    for k, c in enumerate(op.coeffs):
        if k:
            # n(n-1)...(n-k+1), zero once k > n
            falling = falling * np.maximum(n - (k - 1), 0.0)
        total += c * falling
    return total


def characteristic_value(op: EulerOperator, n: int) -> complex:
    """P(n) = Σ_k c_k n!/(n-k)!."""
    total = 0j
    falling = 1
    for k, c in enumerate(op.coeffs):
        if k > n:
            break
        if k:
            falling *= n - k + 1
        total += c * falling
    return total


def verify_recurrence(
    op: EulerOperator, F: RationalGerm, count: int, config: NumericsConfig | None = None
) -> RecurrenceReport:
    """Check P(n)·b_n = ωⁿ for n < count, with b = hadamard_inverse(expand(F)).

    Residuals are relative, |P(n)·b_n·ω^{-n} - 1|. Past ``config.log_form_threshold`` they are
    formed from logarithms so that ωⁿ never overflows.

    Raises:
        ZeroCoefficientError: F has a vanishing Taylor coefficient
    """
    config = config or DEFAULT_CONFIG
    b = hadamard_inverse(expand(F, count), config)
    P = characteristic_values(op, count)
    n = np.arange(count)
    direct = n < config.log_form_threshold
    residual = np.empty(count, dtype=np.float64)

    products = P[direct] * b.coeffs[direct]
    residual[direct] = np.abs(products * np.power(1.0 / op.omega, n[direct]) - 1.0)

    if not np.all(direct):
        far = ~direct
        log_ratio = np.log(P[far]) + np.log(b.coeffs[far]) - n[far] * np.log(op.omega)
        # wrap the phase so that multiples of 2π from the branch of log drop out
        phase = np.angle(np.exp(1j * log_ratio.imag))
        residual[far] = np.abs(np.exp(log_ratio.real + 1j * phase) - 1.0)

    worst = int(np.argmax(residual))
    report = RecurrenceReport(float(residual[worst]), worst, count)
    logger.info(f"Recurrence check over {count} coefficients: max residual {report.max_residual:.3e} at n={worst}")
    return report


def solve_ode_series(op: EulerOperator, count: int, config: NumericsConfig | None = None) -> TruncatedGerm:
    """Series solution b_n = ωⁿ/P(n).

    Raises:
        CharacteristicRootError: P(n) = 0, so F_n vanishes and F has no Hadamard inverse
    """
    config = config or DEFAULT_CONFIG
    P = characteristic_values(op, count)
    roots = np.flatnonzero(np.abs(P) < config.zero_threshold)
    if roots.size:
        raise CharacteristicRootError(int(roots[0]))
    return TruncatedGerm(np.power(op.omega, np.arange(count)) / P)


def singular_points(op: EulerOperator) -> frozenset[complex]:
    """Singular points of the solution in the ζ-plane: {ω^{-1}}, plus 0 when the order is positive."""
    points = {1.0 / op.omega}
    if op.order >= 1:
        points.add(0j)
    return frozenset(points)
