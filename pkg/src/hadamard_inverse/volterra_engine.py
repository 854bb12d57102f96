"""Simple-singularity calculus at a common singular point ω.

Near ω a germ with a simple singularity reads

    F = A/(ω-ζ) + f1(ζ)·log(ω-ζ)/2πi + f2(ζ),    G = B/(ω-ζ) + g1(ζ)·log(ω-ζ)/2πi + g2(ζ)

and F ⊙ G = δ forces A·B = 1, A·g1 + B·f1 + h1 = 0 and A·g2 = -h2, where

    h1(ζ) = -(1/2πi) ∫_ω^ζ f1(ζ/u) g1(u) du/u.

In the local variable x = ζ-ω, substituting u = ω+τx turns h1 into a strictly lower
triangular linear map of the x-jet of g1: coefficient n of h1 only sees g1 coefficients of
index < n. The condition on g1 is therefore a Volterra equation solved by forward
substitution, and its homogeneous version has only the zero solution whenever A != 0.
"""

from __future__ import annotations

__all__ = [
    "ConditionReport",
    "EntireFunctionJet",
    "PolarOrderReport",
    "SingularJet",
    "UniquenessCertificate",
    "check_inverse_conditions",
    "compute_h1",
    "germ_from_jet",
    "homogeneous_uniqueness",
    "kernel_matrix",
    "polar_order_bound_check",
    "solve_g1",
    "vanishing_residue_probe",
]

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .contour_quadrature import LimitProbeConfig, ProbeSample, limit_probe, partial_sum_evaluator
from .exceptions import BaseMismatchError, InvalidParametersError, ZeroResidueError
from .germ_catalog import log_variation_coefficients, pole_coefficients
from .germ_core import TruncatedGerm, hadamard_product

logger = logging.getLogger(__name__)

_TWO_PI_I = 2j * math.pi


def _taylor_shift(coeffs: npt.ArrayLike, shift: complex, order: int) -> npt.NDArray[np.complex128]:
    """Coefficients in x of Σ c_m (shift + x)^m, first ``order`` kept."""
    c = np.asarray(coeffs, dtype=np.complex128)
    out = np.zeros(order, dtype=np.complex128)
    for n in range(min(order, c.size)):
        for m in range(n, c.size):
            out[n] += c[m] * math.comb(m, n) * shift ** (m - n)
    return out


def _pad(coeffs: npt.ArrayLike, order: int) -> npt.NDArray[np.complex128]:
    c = np.asarray(coeffs, dtype=np.complex128)[:order]
    return np.pad(c, (0, order - c.size))


# ==================== Jets ====================


@dataclass(frozen=True)
class EntireFunctionJet:
    """Entire function f1 known through its Taylor coefficients at the point 1.

    Attributes:
        taylor_at_1: Coefficients of y ↦ f1(1 + y)
    """

    taylor_at_1: TruncatedGerm

    @classmethod
    def constant(cls, value: complex, order: int = 1) -> EntireFunctionJet:
        return cls(TruncatedGerm(_pad([value], max(order, 1))))

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[complex], order: int | None = None) -> EntireFunctionJet:
        """Polynomial in ζ, lowest degree first."""
        order = order or max(len(coeffs), 1)
        return cls(TruncatedGerm(_taylor_shift(coeffs, 1.0, order)))

    @classmethod
    def from_jet_at(cls, point: complex, jet: TruncatedGerm) -> EntireFunctionJet:
        """Re-center a jet in x = ζ - point to the point 1 (exact for polynomial jets)."""
        return cls(TruncatedGerm(_taylor_shift(jet.coeffs, 1.0 - complex(point), jet.order)))

    @classmethod
    def exponential(cls, order: int) -> EntireFunctionJet:
        """exp(ζ): coefficients e/m! at 1."""
        m = np.arange(order, dtype=np.float64)
        log_factorials = np.array([math.lgamma(k + 1.0) for k in m])
        return cls(TruncatedGerm(math.e * np.exp(-log_factorials)))

    @property
    def order(self) -> int:
        return self.taylor_at_1.order

    def norm(self) -> float:
        return float(np.max(np.abs(self.taylor_at_1.coeffs)))

    def recentered(self, point: complex, order: int) -> TruncatedGerm:
        """Jet of f1 in x = ζ - point."""
        return TruncatedGerm(_taylor_shift(self.taylor_at_1.coeffs, complex(point) - 1.0, order))


@dataclass(frozen=True)
class SingularJet:
    """Local data of a simple singularity at ``base``.

    Attributes:
        base: Singular point ω (nonzero)
        residue: Constant multiplying 1/(ω-ζ)
        log_jet: Jet in x = ζ-ω of the variation multiplying log(ω-ζ)/2πi
        regular_jet: Jet in x of the regular part
    """

    base: complex
    residue: complex
    log_jet: TruncatedGerm
    regular_jet: TruncatedGerm = field(default_factory=lambda: TruncatedGerm([0.0]))

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", complex(self.base))
        object.__setattr__(self, "residue", complex(self.residue))
        if self.base == 0:
            raise InvalidParametersError("singular point must be nonzero", module="volterra_engine")
        order = max(self.log_jet.order, self.regular_jet.order)
        object.__setattr__(self, "log_jet", TruncatedGerm(_pad(self.log_jet.coeffs, order)))
        object.__setattr__(self, "regular_jet", TruncatedGerm(_pad(self.regular_jet.coeffs, order)))

    @property
    def order(self) -> int:
        return self.log_jet.order


# ==================== Kernel ====================


def _bivariate_mul(a: npt.NDArray[np.complex128], b: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Product of series in x with polynomial τ-coefficients; arrays are indexed [x-degree, τ-degree]."""
    n_x, n_tau = a.shape
    out = np.zeros_like(a)
    for n in range(n_x):
        for i in range(n + 1):
            if a[i].any() and b[n - i].any():
                out[n] += np.convolve(a[i], b[n - i])[:n_tau]
    return out


def kernel_matrix(f1: EntireFunctionJet, omega: complex, order: int) -> npt.NDArray[np.complex128]:
    """Strictly lower triangular K with jet(h1) = K @ jet(g1).

    With w = 1/(ω+τx) and y = x(1-τ)w, let P(x, τ) = f1(1+y)·w = Σ P[n, k] xⁿ τ^k. Then
    K[n, j] = -(1/2πi) Σ_k P[n-1-j, k]/(k+j+1) for j < n.
    """
    omega = complex(omega)
    if omega == 0:
        raise InvalidParametersError("singular point must be nonzero", module="volterra_engine")
    N = order
    w = np.zeros((N, N), dtype=np.complex128)
    for n in range(N):
        w[n, n] = (-1) ** n * omega ** (-n - 1)
    y = np.zeros_like(w)
    for n in range(N - 1):
        y[n + 1, n] += w[n, n]
        y[n + 1, n + 1] -= w[n, n]

    # Horner in y; y has x-valuation 1, so only f1 coefficients below N matter
    phi = _pad(f1.taylor_at_1.coeffs, N)
    composed = np.zeros_like(w)
    for m in range(N - 1, -1, -1):
        composed = _bivariate_mul(composed, y)
        composed[0, 0] += phi[m]
    P = _bivariate_mul(composed, w)

    K = np.zeros((N, N), dtype=np.complex128)
    k = np.arange(N)
    for n in range(1, N):
        for j in range(n):
            K[n, j] = -np.sum(P[n - 1 - j] / (k + j + 1)) / _TWO_PI_I
    return K


def compute_h1(f1: EntireFunctionJet, g1_jet: TruncatedGerm, omega: complex, order: int) -> TruncatedGerm:
    """Jet in x = ζ-ω of h1 = -(1/2πi) ∫_ω^ζ f1(ζ/u) g1(u) du/u; coefficient 0 is always 0."""
    K = kernel_matrix(f1, omega, order)
    return TruncatedGerm(K @ _pad(g1_jet.coeffs, order))


# ==================== Inverse conditions ====================


@dataclass(frozen=True)
class ConditionReport:
    """Residuals of A·B = 1, A·g1 + B·f1 + h1 = 0 and (optionally) A·g2 + h2 = 0.

    Attributes:
        residue_residual: |A·B - 1|
        log_residual: Sup norm of the jet A·g1 + B·f1 + h1[g1]
        regular_residual: Sup norm of A·g2 + h2, or None without an h2 jet
        tol: Threshold used by :attr:`satisfied`
    """

    residue_residual: float
    log_residual: float
    regular_residual: float | None
    tol: float

    @property
    def satisfied(self) -> bool:
        residuals = [self.residue_residual, self.log_residual]
        if self.regular_residual is not None:
            residuals.append(self.regular_residual)
        return all(r < self.tol for r in residuals)


def check_inverse_conditions(
    F: SingularJet,
    G: SingularJet,
    f1: EntireFunctionJet | None = None,
    h2_jet: TruncatedGerm | None = None,
    tol: float = 1e-10,
) -> ConditionReport:
    """Residuals of the conditions for F ⊙ G = δ at a common singular point.

    Args:
        F: Jet of F; its ``log_jet`` is f1 in the local variable
        G: Jet of the candidate inverse
        f1: f1 by its Taylor data at 1; re-centered from ``F.log_jet`` when omitted
        h2_jet: Regular part of the product, for the third condition
        tol: Threshold for :attr:`ConditionReport.satisfied`

    Raises:
        BaseMismatchError: F and G are singular at different points
    """
    if F.base != G.base:
        raise BaseMismatchError(f"F is based at {F.base}, G at {G.base}")
    order = min(F.order, G.order)
    f1 = f1 or EntireFunctionJet.from_jet_at(F.base, F.log_jet)
    g1 = G.log_jet.coeffs[:order]
    h1 = compute_h1(f1, G.log_jet, F.base, order).coeffs
    log_part = F.residue * g1 + G.residue * F.log_jet.coeffs[:order] + h1

    regular = None
    if h2_jet is not None:
        n = min(order, h2_jet.order)
        regular = float(np.max(np.abs(F.residue * G.regular_jet.coeffs[:n] + h2_jet.coeffs[:n])))

    report = ConditionReport(
        residue_residual=abs(F.residue * G.residue - 1.0),
        log_residual=float(np.max(np.abs(log_part))),
        regular_residual=regular,
        tol=tol,
    )
    logger.debug(f"Inverse conditions at ω={F.base}: {report}")
    return report


def _require_residue(A: complex, config: NumericsConfig) -> None:
    if abs(A) < config.zero_threshold:
        raise ZeroResidueError("A = 0: the recurrence has no pivot and A·B = 1 cannot hold")


def solve_g1(
    A: complex,
    B: complex,
    f1: EntireFunctionJet,
    omega: complex,
    order: int,
    config: NumericsConfig | None = None,
) -> TruncatedGerm:
    """Forward substitution for A·g1 + B·f1 + h1[g1] = 0.

    g_n = (-B·f1_n - Σ_{j<n} K[n, j] g_j)/A, with f1 taken as its jet at ω; g_0 = -B·f1(ω)/A.

    Raises:
        ZeroResidueError: A = 0
    """
    config = config or DEFAULT_CONFIG
    _require_residue(A, config)
    K = kernel_matrix(f1, omega, order)
    f1x = f1.recentered(omega, order).coeffs
    g = np.zeros(order, dtype=np.complex128)
    for n in range(order):
        g[n] = (-B * f1x[n] - K[n, :n] @ g[:n]) / A
    if abs(A) < config.small_residue_ratio * f1.norm():
        logger.warning(f"Small residue |A|={abs(A):.2e}: every step divides by A")
    return TruncatedGerm(g)


@dataclass(frozen=True)
class UniquenessCertificate:
    """Forward elimination of A·φ + h1[φ] = 0.

    Attributes:
        diagonal: Diagonal of the triangular system (every entry A)
        solution: The forced solution (identically zero)
        conditioning: 1/|A|, the amplification per elimination step
        ill_conditioned: |A| below ``small_residue_ratio``·‖f1‖
    """

    diagonal: tuple[complex, ...]
    solution: TruncatedGerm
    conditioning: float
    ill_conditioned: bool

    @property
    def unique(self) -> bool:
        return not np.any(self.solution.coeffs)


def homogeneous_uniqueness(
    A: complex,
    f1: EntireFunctionJet,
    omega: complex,
    order: int,
    config: NumericsConfig | None = None,
) -> UniquenessCertificate:
    """Certify that the homogeneous Volterra equation only has φ = 0.

    Raises:
        ZeroResidueError: A = 0
    """
    config = config or DEFAULT_CONFIG
    _require_residue(A, config)
    system = A * np.eye(order, dtype=np.complex128) + kernel_matrix(f1, omega, order)
    phi = np.zeros(order, dtype=np.complex128)
    for n in range(order):
        phi[n] = -(system[n, :n] @ phi[:n]) / system[n, n]
    ill = abs(A) < config.small_residue_ratio * f1.norm()
    if ill:
        logger.warning(f"Homogeneous system with |A|={abs(A):.2e} against ‖f1‖={f1.norm():.2e}")
    return UniquenessCertificate(tuple(np.diag(system)), TruncatedGerm(phi), 1.0 / abs(A), ill)


# ==================== Germs from jets ====================


def germ_from_jet(jet: SingularJet, count: int) -> TruncatedGerm:
    """Taylor coefficients at 0 of B/(ω-ζ) + g1·log(ω-ζ)/2πi + g2, jets read as polynomials in ζ-ω.

    Uses the principal branch log(ω-ζ) = log ω - Σ ζⁿ/(n ωⁿ).
    """
    omega = jet.base
    n = np.arange(1, count)
    log_series = np.empty(count, dtype=np.complex128)
    log_series[0] = np.log(omega)
    log_series[1:] = -np.power(1.0 / omega, n) / n
    # polynomials in x = ζ-ω re-expanded in ζ
    g1 = _taylor_shift(jet.log_jet.coeffs, -omega, min(count, jet.order))
    g2 = _taylor_shift(jet.regular_jet.coeffs, -omega, min(count, jet.order))
    total = jet.residue * pole_coefficients(omega, 1, count).coeffs
    total = total + np.convolve(g1, log_series)[:count] / _TWO_PI_I
    total[: g2.size] += g2
    return TruncatedGerm(total)


# ==================== Limit checks ====================


@dataclass(frozen=True)
class PolarOrderReport:
    """Scaled samples (ζ-ω)^power·(F ⊙ g) approaching ω.

    Attributes:
        power: Exponent applied
        samples: Probe samples in order of decreasing offset
        decays: Whether |scaled| falls below ``decay_ratio`` of its first value
    """

    power: int
    samples: tuple[ProbeSample, ...]
    decays: bool

    @property
    def last(self) -> complex:
        return self.samples[-1].scaled


def _probe_product(
    rule, omega: complex, power: int, probe: LimitProbeConfig | None, decay_ratio: float, name: str
) -> PolarOrderReport:
    evaluator = partial_sum_evaluator(rule, radius=abs(omega), probe=probe, name=name)
    samples = tuple(limit_probe(evaluator, omega, power, probe))
    first, last = abs(samples[0].scaled), abs(samples[-1].scaled)
    return PolarOrderReport(power, samples, last < decay_ratio * first)


def polar_order_bound_check(
    pole_order: int | None,
    g: SingularJet,
    probe: LimitProbeConfig | None = None,
    decay_ratio: float = 0.1,
) -> PolarOrderReport:
    """Probe (ζ-ω)^power·(F ⊙ g) for F with a pole of order M at 1 or a log singularity at 1.

    ``pole_order=M`` takes F = (1-ζ)^{-M} and power M; ``pole_order=None`` takes
    F = log(1-ζ)/2πi and power 1. Decay means the singularity of F ⊙ g at ω is weaker than
    the probed order. Only the principal sheet is sampled.
    """
    if pole_order is not None and pole_order < 1:
        raise InvalidParametersError(f"pole order must be positive, got {pole_order}", module="volterra_engine")
    power = pole_order or 1

    def rule(count: int) -> TruncatedGerm:
        if pole_order is None:
            F = log_variation_coefficients(count)
        else:
            F = pole_coefficients(1.0, pole_order, count)
        return hadamard_product(F, germ_from_jet(g, count))

    kind = f"pole{pole_order}" if pole_order else "log"
    report = _probe_product(rule, g.base, power, probe, decay_ratio, f"{kind}⊙g")
    logger.info(f"Polar order check ({kind}, power {power}): decays={report.decays}")
    return report


def vanishing_residue_probe(
    F: SingularJet, G: SingularJet, probe: LimitProbeConfig | None = None, decay_ratio: float = 0.1
) -> PolarOrderReport:
    """(ζ - ω_F·ω_G)·(F ⊙ G) for F without polar part: the scaled product decays, so F ⊙ G != δ.

    ω_F and ω_G are the bases of the two jets; their product is the singular point probed.

    Raises:
        InvalidParametersError: F has a nonzero residue
    """
    if F.residue != 0:
        raise InvalidParametersError("F must have a vanishing residue", module="volterra_engine")

    def rule(count: int) -> TruncatedGerm:
        return hadamard_product(germ_from_jet(F, count), germ_from_jet(G, count))

    return _probe_product(rule, F.base * G.base, 1, probe, decay_ratio, "residue-free product")
