"""Locate singularities of a germ from its Taylor coefficients.

Three estimators are combined: ratio (Domb-Sykes) extrapolation for the dominant
singularity, Padé approximant pole maps, and a natural-boundary score counting Padé poles in
a thin annulus at the radius of convergence. Only the principal sheet is visible to any of
them.
"""

from __future__ import annotations

__all__ = [
    "PRINCIPAL_SHEET_CAVEAT",
    "EstimateMethod",
    "PadeApproximant",
    "PadePole",
    "ScanReport",
    "SingularityEstimate",
    "aberth_roots",
    "natural_boundary_score",
    "pade",
    "pade_poles",
    "ratio_estimate",
    "root_test_radius",
    "scan_report",
]

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import (
    HadamardError,
    NonConvergenceError,
    OrderUnderflowError,
    SingularSystemError,
    ZeroCoefficientError,
)
from .germ_core import TruncatedGerm

logger = logging.getLogger(__name__)

PRINCIPAL_SHEET_CAVEAT = (
    "Coefficient-based estimates see only the principal sheet; singularities on other sheets "
    "are neither confirmed nor excluded."
)

DEFAULT_SWEEP = ((12, 12), (16, 16), (20, 20))


class EstimateMethod(Enum):
    RATIO_TEST = "ratio_test"
    DOMB_SYKES = "domb_sykes"
    PADE_POLES = "pade_poles"
    ROOT_TEST = "root_test"


@dataclass(frozen=True)
class SingularityEstimate:
    """Estimated singular locations with their convergence measures.

    Attributes:
        method: Estimator used
        locations: Estimated singular points
        residuals: Nonnegative convergence or defect measure per location
        boundary_score: Fraction of Padé poles near the radius of convergence, when computed
        oscillatory: Ratios failed to settle (conjugate pair or boundary)
        exponent: Domb-Sykes exponent g of f_n ~ σ^{-n} n^{g-1}, when estimated
    """

    method: EstimateMethod
    locations: tuple[complex, ...]
    residuals: tuple[float, ...]
    boundary_score: float | None = None
    oscillatory: bool = False
    exponent: complex | None = None


@dataclass(frozen=True)
class PadePole:
    location: complex
    spurious: bool


@dataclass(frozen=True)
class PadeApproximant:
    """[L/M] approximant p/q with q(0) = 1.

    Attributes:
        numerator: p_0..p_L
        denominator: q_0..q_M, q_0 = 1
        defect: Relative residual of the linear solve
        requested: (L, M) asked for; differs from :attr:`degrees` after rank reduction
    """

    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...]
    defect: float
    requested: tuple[int, int]

    @property
    def degrees(self) -> tuple[int, int]:
        return len(self.numerator) - 1, len(self.denominator) - 1

    @property
    def reduced(self) -> bool:
        return self.degrees != self.requested

    def __call__(self, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        z = np.asarray(z, dtype=np.complex128)
        poly = np.polynomial.polynomial
        return poly.polyval(z, np.array(self.numerator)) / poly.polyval(z, np.array(self.denominator))


# ==================== Ratio and root tests ====================


def ratio_estimate(
    f: TruncatedGerm, window: tuple[int, int] | None = None, config: NumericsConfig | None = None
) -> SingularityEstimate:
    """Dominant singularity from f_{n-1}/f_n with one Richardson step.

    ρ_n = f_n/f_{n-1} and ρ̃_n = nρ_n - (n-1)ρ_{n-1}; the estimate is 1/ρ̃ at the window end.
    The residual is the spread of the last ``ratio_window`` estimates.

    Raises:
        ZeroCoefficientError: A coefficient in the window vanishes
        OrderUnderflowError: Window too short for the extrapolation
    """
    config = config or DEFAULT_CONFIG
    start, stop = window or (1, f.order)
    start = max(start, 1)
    if stop - start < 3:
        raise OrderUnderflowError(f"window [{start}, {stop}) too short", module="singularity_scope")
    c = f.coeffs[start - 1 : stop]
    zeros = np.flatnonzero(np.abs(c) < config.zero_threshold)
    if zeros.size:
        raise ZeroCoefficientError(start - 1 + int(zeros[0]), module="singularity_scope")

    n = np.arange(start, stop, dtype=np.float64)
    rho = c[1:] / c[:-1]
    richardson = n[1:] * rho[1:] - n[:-1] * rho[:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = 1.0 / richardson
    tail = sigma[-config.ratio_window :]
    estimate = complex(tail[-1])
    spread = float(np.max(np.abs(tail - estimate))) if np.all(np.isfinite(tail)) else math.inf
    oscillatory = not spread <= config.oscillation_tol * abs(estimate)
    with np.errstate(over="ignore", invalid="ignore"):
        exponent = complex(1.0 + n[-1] * (rho[-1] * estimate - 1.0))
    if oscillatory:
        logger.warning(f"Ratio test oscillates: spread {spread:.3e} around {estimate:.6g}")
    else:
        logger.debug(f"Ratio estimate σ={estimate:.10g} (spread {spread:.2e}, exponent {exponent:.4g})")
    return SingularityEstimate(
        method=EstimateMethod.RATIO_TEST,
        locations=(estimate,),
        residuals=(spread,),
        oscillatory=oscillatory,
        exponent=exponent,
    )


def root_test_radius(f: TruncatedGerm) -> float:
    """1/max_{n in tail half} |f_n|^{1/n}; infinite when the tail vanishes."""
    start = max(1, f.order // 2)
    tail = np.abs(f.coeffs[start:])
    n = np.arange(start, f.order, dtype=np.float64)
    mask = tail > 0
    if not np.any(mask):
        return math.inf
    roots = np.exp(np.log(tail[mask]) / n[mask])
    return float(1.0 / np.max(roots))


# ==================== Padé ====================


def _full_pivot_solve(
    matrix: npt.NDArray[np.complex128], rhs: npt.NDArray[np.complex128], tol: float
) -> tuple[npt.NDArray[np.complex128] | None, int]:
    """Gaussian elimination with full pivoting; returns (solution or None, numerical rank)."""
    a = matrix.astype(np.complex128, copy=True)
    b = rhs.astype(np.complex128, copy=True)
    n = a.shape[0]
    columns = np.arange(n)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    for step in range(n):
        block = np.abs(a[step:, step:])
        i, j = np.unravel_index(int(np.argmax(block)), block.shape)
        if block[i, j] <= tol * scale:
            return None, step
        i += step
        j += step
        a[[step, i]] = a[[i, step]]
        b[[step, i]] = b[[i, step]]
        a[:, [step, j]] = a[:, [j, step]]
        columns[[step, j]] = columns[[j, step]]
        factors = a[step + 1 :, step] / a[step, step]
        a[step + 1 :, step:] -= np.outer(factors, a[step, step:])
        b[step + 1 :] -= factors * b[step]
    x = np.zeros(n, dtype=np.complex128)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    solution = np.empty(n, dtype=np.complex128)
    solution[columns] = x
    return solution, n


def _toeplitz(c: npt.NDArray[np.complex128], L: int, M: int) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    """Rows i = 1..M of Σ_k q_k c_{L+i-k} = -c_{L+i}, with c_n = 0 for n < 0."""

    def coeff(n: int) -> complex:
        return c[n] if n >= 0 else 0j

    matrix = np.array([[coeff(L + i - k) for k in range(1, M + 1)] for i in range(1, M + 1)], dtype=np.complex128)
    rhs = -np.array([coeff(L + i) for i in range(1, M + 1)], dtype=np.complex128)
    return matrix.reshape(M, M), rhs


def pade(f: TruncatedGerm, L: int, M: int, config: NumericsConfig | None = None) -> PadeApproximant:
    """[L/M] Padé approximant of a truncated germ.

    A numerically rank-deficient system of rank ρ < M is reduced along the diagonal to
    [L-(M-ρ) / ρ] and solved again; the effective degrees are recorded on the result.

    Raises:
        OrderUnderflowError: L + M + 1 exceeds the order of f
        SingularSystemError: The reduced solve still leaves a defect above ``pade_defect_tol``
    """
    config = config or DEFAULT_CONFIG
    if L < 0 or M < 0:
        raise OrderUnderflowError(f"degrees must be nonnegative, got [{L}/{M}]", module="singularity_scope")
    if L + M + 1 > f.order:
        raise OrderUnderflowError(f"[{L}/{M}] needs {L + M + 1} coefficients, have {f.order}", module="singularity_scope")
    c = f.coeffs
    requested = (L, M)
    while True:
        if M == 0:
            q = np.ones(1, dtype=np.complex128)
            defect = 0.0
            break
        matrix, rhs = _toeplitz(c, L, M)
        solution, rank = _full_pivot_solve(matrix, rhs, config.pade_rank_tol)
        if solution is None:
            deficiency = M - rank
            logger.debug(f"Padé [{L}/{M}] has numerical rank {rank}; reducing")
            L, M = max(L - deficiency, 0), rank
            continue
        residual = np.linalg.norm(matrix @ solution - rhs)
        scale = np.linalg.norm(rhs) + np.linalg.norm(matrix) * np.linalg.norm(solution)
        defect = float(residual / scale) if scale > 0 else 0.0
        if defect > config.pade_defect_tol:
            raise SingularSystemError(f"[{L}/{M}] defect {defect:.3e} exceeds {config.pade_defect_tol}")
        q = np.concatenate([[1.0 + 0j], solution])
        break
    p = np.array([sum(q[k] * c[j - k] for k in range(min(j, M) + 1)) for j in range(L + 1)], dtype=np.complex128)
    approximant = PadeApproximant(tuple(p), tuple(q), defect, requested)
    if approximant.reduced:
        logger.info(f"Padé {list(requested)} reduced to {list(approximant.degrees)}")
    return approximant


# ==================== Roots and poles ====================


def _trim(coeffs: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    c = np.asarray(coeffs, dtype=np.complex128)
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    keep = np.flatnonzero(np.abs(c) > 1e-14 * scale)
    return c[: keep[-1] + 1] if keep.size else c[:1]


def aberth_roots(coeffs: npt.ArrayLike, config: NumericsConfig | None = None) -> npt.NDArray[np.complex128]:
    """All roots of Σ c_k z^k by Aberth-Ehrlich simultaneous iteration.

    Every root satisfies |q(r)| <= root_tol·Σ|c_k||r|^k.

    Raises:
        NonConvergenceError: No certified root set within ``aberth_max_iter`` iterations
    """
    config = config or DEFAULT_CONFIG
    c = _trim(coeffs)
    degree = c.size - 1
    if degree < 1:
        return np.zeros(0, dtype=np.complex128)
    poly = np.polynomial.polynomial
    dc = poly.polyder(c)
    magnitudes = np.abs(c)
    radius = (magnitudes[0] / magnitudes[-1]) ** (1.0 / degree) if magnitudes[0] > 0 else 1.0
    angles = 2.0 * np.pi * np.arange(degree) / degree + 0.4
    z = radius * np.exp(1j * angles)

    def certified(points: npt.NDArray[np.complex128]) -> bool:
        with np.errstate(over="ignore", invalid="ignore"):
            values = np.abs(poly.polyval(points, c))
            bound = poly.polyval(np.abs(points), magnitudes)
        return bool(np.all(values <= config.root_tol * bound))

    for iteration in range(config.aberth_max_iter):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            newton = poly.polyval(z, c) / poly.polyval(z, dc)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            repulsion = np.sum(1.0 / diff, axis=1) - 1.0
            step = newton / (1.0 - newton * repulsion)
            step = np.where(np.isfinite(step), step, 0.0)
            moved = z - step
        # an iterate that overflowed stays where it was
        step = np.where(np.isfinite(moved), step, 0.0)
        z = np.where(np.isfinite(moved), moved, z)
        if np.max(np.abs(step)) <= 4 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(z)))) and certified(z):
            logger.debug(f"Aberth converged in {iteration + 1} iterations (degree {degree})")
            return z
    if certified(z):
        return z
    raise NonConvergenceError(f"Aberth iteration for degree {degree} not converged in {config.aberth_max_iter} steps")


def pade_poles(p: PadeApproximant, config: NumericsConfig | None = None) -> list[PadePole]:
    """Denominator roots, flagged spurious when a numerator root lies within ``froissart_tol``.

    Raises:
        NonConvergenceError: Root finding on the denominator failed
    """
    config = config or DEFAULT_CONFIG
    poles = aberth_roots(p.denominator, config)
    try:
        zeros = aberth_roots(p.numerator, config)
    except NonConvergenceError:
        logger.warning("Numerator roots not found; no pole is flagged spurious")
        zeros = np.zeros(0, dtype=np.complex128)
    result = []
    for z in sorted(poles, key=abs):
        z = complex(z)
        if abs(z.imag) < np.finfo(float).eps * abs(z):
            z = complex(z.real, 0.0)
        spurious = bool(zeros.size) and float(np.min(np.abs(zeros - z))) < config.froissart_tol * max(1.0, abs(z))
        result.append(PadePole(z, spurious))
    return result


# ==================== Boundary score and scan ====================


@dataclass
class _Sweep:
    approximants: dict[tuple[int, int], PadeApproximant] = field(default_factory=dict)
    poles: dict[tuple[int, int], list[PadePole]] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)


def _sweep(f: TruncatedGerm, orders: Sequence[tuple[int, int]], config: NumericsConfig) -> _Sweep:
    sweep = _Sweep()
    for L, M in orders:
        try:
            approximant = pade(f, L, M, config)
            sweep.poles[(L, M)] = pade_poles(approximant, config)
            sweep.approximants[(L, M)] = approximant
        except HadamardError as e:
            logger.warning(f"Padé [{L}/{M}] skipped: {e}")
            sweep.failures[f"pade[{L}/{M}]"] = str(e)
    return sweep


def _annulus_fraction(
    poles: dict[tuple[int, int], list[PadePole]], radius: float, annulus: tuple[float, float]
) -> float:
    genuine = [pole.location / radius for cloud in poles.values() for pole in cloud if not pole.spurious]
    if not genuine:
        return 0.0
    inside = sum(1 for z in genuine if annulus[0] <= abs(z) <= annulus[1])
    return inside / len(genuine)


def natural_boundary_score(
    f: TruncatedGerm,
    orders: Sequence[tuple[int, int]],
    annulus: tuple[float, float] = (0.9, 1.1),
    config: NumericsConfig | None = None,
) -> float:
    """Fraction of non-spurious Padé poles, over all orders, in the annulus after radius normalisation.

    Orders whose Padé solve or root finding fails are skipped.
    """
    config = config or DEFAULT_CONFIG
    radius = root_test_radius(f)
    if not math.isfinite(radius):
        return 0.0
    return _annulus_fraction(_sweep(f, orders, config).poles, radius, annulus)


@dataclass(frozen=True)
class ScanReport:
    """Merged singularity scan of a germ.

    Attributes:
        ratio: Ratio-test estimate, or None when it failed
        poles: Padé pole cloud per (L, M)
        stable_poles: Non-spurious poles of the highest order that persist in every approximant of
            different effective degrees (see :func:`scan_report`)
        cut_poles: Drifting non-spurious poles of the highest order lying along the cut ray of an
            expected singular point; informational, they never excuse a stable pole
        boundary_score: Natural-boundary score over the sweep
        expected: Singular points the scan is checked against
        confined: Every stable pole with |z| <= confinement disc lies near an expected point
        failures: Component failures, keyed by component
        caveat: Principal-sheet limitation
    """

    ratio: SingularityEstimate | None
    poles: dict[tuple[int, int], list[PadePole]]
    stable_poles: tuple[complex, ...]
    cut_poles: tuple[complex, ...]
    boundary_score: float
    expected: tuple[complex, ...]
    confined: bool
    failures: dict[str, str] = field(default_factory=dict)
    caveat: str = PRINCIPAL_SHEET_CAVEAT

    def nearest_stable(self, point: complex) -> complex | None:
        if not self.stable_poles:
            return None
        return min(self.stable_poles, key=lambda z: abs(z - point))

    def pole_estimate(self) -> SingularityEstimate:
        """Stable poles as an estimate."""
        return SingularityEstimate(
            method=EstimateMethod.PADE_POLES,
            locations=self.stable_poles,
            residuals=tuple(0.0 for _ in self.stable_poles),
            boundary_score=self.boundary_score,
        )


def _on_cut(z: complex, s: complex, angle: float) -> bool:
    offset = (z - s) / s
    # cmath.phase overflows on subnormal imaginary parts
    return abs(offset) > 0 and abs(math.atan2(offset.imag, offset.real)) < angle


def _reproduces(f: TruncatedGerm, approximant: PadeApproximant, config: NumericsConfig) -> bool:
    """Whether the Taylor series of p/q matches every coefficient of f to ``pade_defect_tol``."""
    p, q = np.array(approximant.numerator), np.array(approximant.denominator)
    series = np.zeros(f.order, dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(f.order):
            k = min(n, q.size - 1)
            head = p[n] if n < p.size else 0j
            series[n] = head - np.dot(q[1 : k + 1], series[n - k : n][::-1])
        error = np.abs(series - f.coeffs)
    scale = float(np.max(np.abs(f.coeffs)))
    return bool(np.all(np.isfinite(error)) and np.max(error) <= config.pade_defect_tol * scale)


def _stable_poles(f: TruncatedGerm, sweep: _Sweep, config: NumericsConfig) -> list[complex]:
    """Non-spurious top-order poles matched in every approximant of different effective degrees.

    Rank reduction can map every requested order onto the same approximant, and comparing it
    with itself would confirm every pole. In that case an approximant reproducing all of f is
    an exact rational representation and its poles are kept; otherwise the approximant one
    degree lower on both sides is used as the comparison.
    """
    if not sweep.poles:
        return []
    top = max(sweep.poles, key=lambda order: order[0] + order[1])
    degrees = sweep.approximants[top].degrees
    clouds = [cloud for order, cloud in sweep.poles.items() if sweep.approximants[order].degrees != degrees]
    if not clouds:
        if _reproduces(f, sweep.approximants[top], config):
            logger.debug(f"Padé {list(degrees)} reproduces all {f.order} coefficients")
            return [pole.location for pole in sweep.poles[top] if not pole.spurious]
        L, M = degrees
        if M < 2:
            return []
        try:
            clouds = [pade_poles(pade(f, max(L - 1, 0), M - 1, config), config)]
        except HadamardError as e:
            logger.warning(f"Companion Padé [{max(L - 1, 0)}/{M - 1}] failed: {e}")
            return []
        logger.debug(f"Sweep collapsed to {list(degrees)}; compared against [{max(L - 1, 0)}/{M - 1}]")

    stable = []
    for pole in sweep.poles[top]:
        if pole.spurious:
            continue
        z = pole.location
        tol = config.stability_tol * max(1.0, abs(z))
        if all(any(not other.spurious and abs(other.location - z) < tol for other in cloud) for cloud in clouds):
            stable.append(z)
    return stable


def scan_report(
    f: TruncatedGerm,
    expected: Sequence[complex] = (1.0,),
    orders: Sequence[tuple[int, int]] = DEFAULT_SWEEP,
    annulus: tuple[float, float] = (0.9, 1.1),
    confinement_radius: float = 1e-2,
    disc: float = 2.0,
    cut_angle: float = 0.2,
    config: NumericsConfig | None = None,
) -> ScanReport:
    """Ratio test, Padé sweep and boundary score merged into one verdict.

    A pole of the highest requested order is stable when every approximant of other effective
    degrees has a non-spurious pole within ``stability_tol·max(1, |z|)``. The germ is confined
    when each stable pole in |z| <= ``disc`` lies within ``confinement_radius`` of a nonzero
    expected point; poles along a cut are reported but do not count as near.

    Never raises: component failures land in :attr:`ScanReport.failures`.
    """
    config = config or DEFAULT_CONFIG
    expected = tuple(complex(s) for s in expected)
    failures: dict[str, str] = {}

    ratio = None
    try:
        ratio = ratio_estimate(f, config=config)
    except HadamardError as e:
        failures["ratio"] = str(e)

    feasible = [(L, M) for L, M in orders if L + M + 1 <= f.order]
    for L, M in orders:
        if (L, M) not in feasible:
            failures[f"pade[{L}/{M}]"] = f"needs {L + M + 1} coefficients, have {f.order}"
    sweep = _sweep(f, feasible, config)
    failures.update(sweep.failures)
    poles = sweep.poles

    stable = _stable_poles(f, sweep, config)
    cut: list[complex] = []
    if poles:
        top = max(poles, key=lambda order: order[0] + order[1])
        cut = [
            pole.location
            for pole in poles[top]
            if not pole.spurious
            and pole.location not in stable
            and any(s != 0 and _on_cut(pole.location, s, cut_angle) for s in expected)
        ]
    confined = all(
        any(s != 0 and abs(z - s) < confinement_radius for s in expected)
        for z in stable
        if abs(z) <= disc * (1.0 + config.stability_tol)
    )

    radius = root_test_radius(f)
    score = _annulus_fraction(poles, radius, annulus) if math.isfinite(radius) else 0.0
    report = ScanReport(
        ratio=ratio,
        poles=poles,
        stable_poles=tuple(stable),
        cut_poles=tuple(cut),
        boundary_score=score,
        expected=expected,
        confined=confined,
        failures=failures,
    )
    logger.info(
        f"Scan: {len(stable)} stable poles, {len(cut)} on cuts, boundary score {score:.3f}, confined={confined}"
    )
    return report
