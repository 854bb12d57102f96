"""Hadamard products as circle integrals.

    (F ⊙ G)(ζ) = (1/2πi) ∮ F(ζ/z) G(z) dz/z        (circle I around 0 and ζ)
               = (1/2πi) ∮ F(z) G(ζ/z) dz/z        (circle C, roles exchanged)

Integrals are computed with the trapezoid rule on circles, which converges geometrically
for analytic periodic integrands; node counts are doubled until successive values agree.
For meromorphic F the C-integral splits into a large anticlockwise circle K and a small
clockwise circle J around the pole of F.

A contour is admissible only if it keeps a margin of ``contour_margin·radius`` from every
declared singular point of the integrand; otherwise :class:`DomainViolationError` is raised.
Branch cuts of catalog evaluators are rays s·[1, ∞) from each singular point s.
"""

from __future__ import annotations

__all__ = [
    "LimitProbeConfig",
    "Orientation",
    "PointEvaluator",
    "ProbeSample",
    "QuadratureResult",
    "QuadratureSpec",
    "hadamard_on_C",
    "hadamard_on_I",
    "hadamard_on_KJ",
    "integrate_on_C",
    "integrate_on_I",
    "integrate_on_KJ",
    "k_part_radius",
    "limit_probe",
    "partial_sum_evaluator",
    "polar_product_limit",
    "refine_until_converged",
    "residue_j_part",
    "trapezoid_circle",
]

import logging
import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import DomainViolationError, InvalidParametersError, NonEnclosingError
from .germ_catalog import CatalogGerm, RationalGerm
from .germ_core import TruncatedGerm, hadamard_product

logger = logging.getLogger(__name__)

Integrand = Callable[[npt.NDArray[np.complex128]], npt.NDArray[np.complex128]]


class Orientation(Enum):
    """Direction of traversal."""

    ANTICLOCKWISE = "anticlockwise"
    CLOCKWISE = "clockwise"


@dataclass(frozen=True)
class QuadratureSpec:
    """Trapezoid rule on the circle |z - center| = radius.

    Attributes:
        center: Circle center
        radius: Circle radius (> 0)
        nodes: Number of equispaced nodes (>= 16)
        orientation: Direction of traversal
    """

    center: complex = 0j
    radius: float = 0.6
    nodes: int = 256
    orientation: Orientation = Orientation.ANTICLOCKWISE

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        if self.radius <= 0:
            raise InvalidParametersError(f"radius must be positive, got {self.radius}", module="contour_quadrature")
        if self.nodes < 16:
            raise InvalidParametersError(f"at least 16 nodes required, got {self.nodes}", module="contour_quadrature")

    def points(self) -> npt.NDArray[np.complex128]:
        theta = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        return self.center + self.radius * np.exp(1j * theta)

    def with_nodes(self, nodes: int) -> QuadratureSpec:
        return replace(self, nodes=nodes)

    def encloses(self, point: complex) -> bool:
        return abs(point - self.center) < self.radius


@dataclass(frozen=True)
class PointEvaluator:
    """Single-valued principal-sheet function with its declared singular set.

    Attributes:
        func: Vectorised function of complex arrays
        singular_set: Declared singular points
        branch_cut: Whether each singular point s carries the cut s·[1, ∞)
        validity_radius: Evaluation restricted to |z| < radius, or None
        name: Label used in log and error messages
    """

    func: Integrand = field(repr=False)
    singular_set: tuple[complex, ...] = ()
    branch_cut: bool = False
    validity_radius: float | None = None
    name: str = "evaluator"

    @classmethod
    def from_catalog(cls, germ: CatalogGerm) -> PointEvaluator:
        return cls(germ.evaluator, germ.singular_set, germ.branch_cut, germ.validity_radius, germ.name)

    @classmethod
    def from_rational(cls, r: RationalGerm, name: str = "rational") -> PointEvaluator:
        return cls(r.evaluate, (r.pole,), name=name)

    @classmethod
    def delta(cls) -> PointEvaluator:
        """1/(1-z), the Hadamard unit."""
        return cls(lambda z: 1.0 / (1.0 - z), (1.0 + 0j,), name="delta")

    def __call__(self, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        z = np.asarray(z, dtype=np.complex128)
        if self.validity_radius is not None and np.any(np.abs(z) >= self.validity_radius):
            raise DomainViolationError(f"{self.name} evaluated outside |z| < {self.validity_radius}")
        for s in self.singular_set:
            w = z / s
            hits = np.abs(w - 1.0) == 0
            if self.branch_cut:
                hits |= (w.real >= 1.0) & (np.abs(w.imag) <= 1e-14 * np.abs(w))
            if np.any(hits):
                raise DomainViolationError(f"{self.name} evaluated on the singular point {s} or its cut")
        values = np.asarray(self.func(z), dtype=np.complex128)
        if not np.all(np.isfinite(values)):
            raise DomainViolationError(f"{self.name} returned non-finite values")
        return values


@dataclass(frozen=True)
class QuadratureResult:
    """Refined integral with the node count reached and the last Cauchy difference."""

    value: complex
    nodes: int
    difference: float
    converged: bool


# ==================== Trapezoid rule ====================


def trapezoid_circle(integrand: Integrand, spec: QuadratureSpec) -> complex:
    """(1/2πi) ∮ h(z) dz/z on the circle of ``spec``.

    With z_k = c + r·e^{iθ_k}, dz = i(z_k - c)dθ, so the rule is (1/N) Σ h(z_k)(z_k - c)/z_k.
    """
    z = spec.points()
    value = complex(np.mean(integrand(z) * (z - spec.center) / z))
    return -value if spec.orientation is Orientation.CLOCKWISE else value


def refine_until_converged(
    integrand: Integrand, spec: QuadratureSpec, config: NumericsConfig | None = None
) -> QuadratureResult:
    """Double the node count until successive values differ by less than ``quadrature_tol``.

    Starts at ``spec.nodes`` and stops at ``quadrature_max_nodes``; at least one doubling is
    always made so the reported difference is a real Cauchy difference.
    """
    config = config or DEFAULT_CONFIG
    current = spec.with_nodes(max(spec.nodes, 16))
    value = trapezoid_circle(integrand, current)
    difference = math.inf
    ceiling = max(config.quadrature_max_nodes, 2 * current.nodes)
    while current.nodes < ceiling:
        current = current.with_nodes(current.nodes * 2)
        refined = trapezoid_circle(integrand, current)
        difference = abs(refined - value)
        value = refined
        logger.debug(f"Trapezoid with {current.nodes} nodes: Δ={difference:.3e}")
        if difference < config.quadrature_tol * max(1.0, abs(value)):
            return QuadratureResult(value, current.nodes, difference, True)
    logger.warning(f"Trapezoid rule not converged at {current.nodes} nodes (Δ={difference:.3e})")
    return QuadratureResult(value, current.nodes, difference, False)


# ==================== Admissibility ====================


def _ray_distance(point: complex, start: complex) -> float:
    """Distance from ``point`` to the ray start·[1, ∞)."""
    t = max(1.0, (point * start.conjugate()).real / abs(start) ** 2)
    return abs(point - t * start)


def _require_enclosed(points: Iterable[complex], spec: QuadratureSpec, margin: float, role: str) -> None:
    for p in points:
        distance = abs(p - spec.center)
        if distance >= spec.radius:
            raise NonEnclosingError(f"{role} {p} not enclosed by circle |z-{spec.center}|={spec.radius}")
        if spec.radius - distance < margin * spec.radius:
            raise DomainViolationError(f"{role} {p} lies within {margin}·radius of the contour")


def _require_excluded(
    points: Iterable[complex], spec: QuadratureSpec, margin: float, role: str, cut: bool = False
) -> None:
    for s in points:
        distance = _ray_distance(spec.center, s) if cut else abs(s - spec.center)
        if distance < spec.radius * (1.0 + margin):
            raise DomainViolationError(f"{role} {s} lies inside or within {margin}·radius of the contour")


def _require_validity(evaluator: PointEvaluator, reach: float) -> None:
    if evaluator.validity_radius is not None and reach >= evaluator.validity_radius:
        raise DomainViolationError(
            f"{evaluator.name} needed up to |z|={reach:.4g}, valid only below {evaluator.validity_radius}"
        )


def _check_product_contour(
    outer: PointEvaluator, inner: PointEvaluator, zeta: complex, spec: QuadratureSpec, config: NumericsConfig
) -> None:
    """Admissibility of (1/2πi)∮ inner(ζ/z)·outer(z) dz/z.

    Singular points of ``outer`` (and their cuts) must lie outside the circle; the induced points
    ζ/s of ``inner`` must lie inside, together with 0.
    """
    margin = config.contour_margin
    _require_enclosed([0j], spec, margin, "origin")
    _require_excluded(outer.singular_set, spec, margin, f"singular point of {outer.name}", cut=outer.branch_cut)
    if zeta != 0:
        induced = [zeta / s for s in inner.singular_set]
        _require_enclosed(induced, spec, margin, f"point induced by {inner.name}")
    _require_validity(outer, abs(spec.center) + spec.radius)
    nearest = spec.radius - abs(spec.center)
    _require_validity(inner, abs(zeta) / nearest if nearest > 0 else math.inf)


# ==================== Product integrals ====================


def integrate_on_I(
    F: PointEvaluator,
    G: PointEvaluator,
    zeta: complex,
    spec: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> QuadratureResult:
    """(1/2πi) ∮ F(ζ/z) G(z) dz/z on a circle around 0 and ζ, refined from ``spec.nodes``.

    Raises:
        NonEnclosingError: The circle misses 0, ζ or a point ζ/s induced by F
        DomainViolationError: The circle passes too close to a singular point or leaves a validity domain
    """
    config = config or DEFAULT_CONFIG
    zeta = complex(zeta)
    _require_enclosed([zeta], spec, config.contour_margin, "zeta")
    _check_product_contour(G, F, zeta, spec, config)
    return refine_until_converged(lambda z: F(zeta / z) * G(z), spec, config)


def integrate_on_C(
    F: PointEvaluator,
    G: PointEvaluator,
    zeta: complex,
    spec: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> QuadratureResult:
    """(1/2πi) ∮ F(z) G(ζ/z) dz/z on a circle containing the points induced by G, refined.

    Raises:
        NonEnclosingError: The circle misses 0 or a point ζ/s induced by G
        DomainViolationError: As for :func:`integrate_on_I`
    """
    config = config or DEFAULT_CONFIG
    zeta = complex(zeta)
    _check_product_contour(F, G, zeta, spec, config)
    return refine_until_converged(lambda z: F(z) * G(zeta / z), spec, config)


def hadamard_on_I(
    F: PointEvaluator,
    G: PointEvaluator,
    zeta: complex,
    spec: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> complex:
    """Value of :func:`integrate_on_I`."""
    return integrate_on_I(F, G, zeta, spec, config).value


def hadamard_on_C(
    F: PointEvaluator,
    G: PointEvaluator,
    zeta: complex,
    spec: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> complex:
    """Value of :func:`integrate_on_C`."""
    return integrate_on_C(F, G, zeta, spec, config).value


def hadamard_on_KJ(
    F: RationalGerm,
    G: PointEvaluator,
    zeta: complex,
    K: QuadratureSpec,
    J: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> tuple[complex, complex]:
    """Values (K_part, J_part) of :func:`integrate_on_KJ`."""
    K_result, J_result = integrate_on_KJ(F, G, zeta, K, J, config)
    return K_result.value, J_result.value


def integrate_on_KJ(
    F: RationalGerm,
    G: PointEvaluator,
    zeta: complex,
    K: QuadratureSpec,
    J: QuadratureSpec,
    config: NumericsConfig | None = None,
) -> tuple[QuadratureResult, QuadratureResult]:
    """Split the C-integral of a meromorphic F into refined (K_part, J_part).

    K is a large anticlockwise circle enclosing the pole ω of F; J is a small clockwise circle
    around ω alone. K_part is entire in ζ (zero when F has no polynomial part).

    Raises:
        InvalidParametersError: Wrong orientation of K or J
        NonEnclosingError: K misses ω or an induced point, or J misses ω
        DomainViolationError: A contour passes too close to a singular point
    """
    config = config or DEFAULT_CONFIG
    zeta = complex(zeta)
    margin = config.contour_margin
    if K.orientation is not Orientation.ANTICLOCKWISE or J.orientation is not Orientation.CLOCKWISE:
        raise InvalidParametersError("K must run anticlockwise and J clockwise", module="contour_quadrature")
    induced = [zeta / s for s in G.singular_set] if zeta != 0 else []

    _require_enclosed([0j, F.pole, *induced], K, margin, "K-point")
    nearest = K.radius - abs(K.center)
    _require_validity(G, abs(zeta) / nearest if nearest > 0 else math.inf)

    _require_enclosed([F.pole], J, margin, "pole")
    _require_excluded([0j, *induced], J, margin, "point excluded from J")
    if G.branch_cut:
        # the cut of G(ζ/z) is the segment from 0 to each induced point
        for p in induced:
            t = np.clip((J.center * np.conj(p)).real / abs(p) ** 2, 0.0, 1.0)
            if abs(J.center - t * p) < J.radius * (1.0 + margin):
                raise DomainViolationError(f"J crosses the cut of {G.name} ending at {p}")
    J_reach = abs(zeta) / (abs(J.center) - J.radius) if abs(J.center) > J.radius else math.inf
    _require_validity(G, J_reach)

    def integrand(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        return F.evaluate(z) * G(zeta / z)

    K_part = refine_until_converged(integrand, K, config)
    J_part = refine_until_converged(integrand, J, config)
    logger.debug(f"K/J split at ζ={zeta}: K={K_part.value:.6g} ({K_part.nodes} nodes), J={J_part.value:.6g}")
    return K_part, J_part


def _taylor_at(func: Integrand, center: complex, radius: float, count: int, nodes: int = 64) -> npt.NDArray[np.complex128]:
    """First ``count`` Taylor coefficients of ``func`` at ``center`` via FFT on a circle."""
    nodes = max(nodes, 2 * count)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    samples = func(center + radius * np.exp(1j * theta))
    coeffs = np.fft.fft(samples) / nodes
    return coeffs[:count] / radius ** np.arange(count)


def residue_j_part(F: RationalGerm, G: PointEvaluator, zeta: complex) -> complex:
    """J_part from residue calculus: -Res_{z=ω} F(z)G(ζ/z)/z.

    With F = Σ a_j(-1)^j (z-ω)^{-j} and t_m the Taylor coefficients of φ(z) = G(ζ/z)/z at ω,
    the residue is Σ_j a_j (-1)^j t_{j-1}.
    """
    zeta = complex(zeta)
    omega = F.pole
    # φ is analytic in the disc around ω avoiding 0 and the cut segments [0, ζ/s]
    clearance = abs(omega)
    for s in G.singular_set:
        p = zeta / s
        t = np.clip((omega * np.conj(p)).real / abs(p) ** 2, 0.0, 1.0) if G.branch_cut else 1.0
        clearance = min(clearance, abs(omega - t * p))
    if clearance == 0:
        raise DomainViolationError(f"pole {omega} coincides with a singular point of G(ζ/z)")

    def phi(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        return G(zeta / z) / z

    t = _taylor_at(phi, omega, 0.5 * clearance, F.pole_order)
    residue = sum(a * (-1) ** j * t[j - 1] for j, a in enumerate(F.pole_coeffs, start=1))
    return complex(-residue)


def k_part_radius(
    F: RationalGerm,
    G: PointEvaluator,
    K: QuadratureSpec,
    sample_radius: float,
    count: int = 32,
    config: NumericsConfig | None = None,
) -> float:
    """Empirical radius of convergence of ζ ↦ K_part(ζ), by root test on FFT coefficients.

    Only the upper half of the resolved coefficients enters the root test. Returns ``inf``
    when those are at rounding level (K_part is a polynomial or zero).
    """
    config = config or DEFAULT_CONFIG
    theta = 2.0 * np.pi * np.arange(count) / count
    zetas = sample_radius * np.exp(1j * theta)
    samples = np.array([hadamard_on_KJ(F, G, z, K, _tiny_j(F, z, G, K, config), config)[0] for z in zetas])
    raw = np.fft.fft(samples) / count
    scale = max(1.0, float(np.max(np.abs(samples))))
    m = np.arange(max(1, count // 4), count // 2)
    significant = np.abs(raw[m]) > 1e-12 * scale
    if not np.any(significant):
        return math.inf
    coeffs = np.abs(raw[m][significant]) / sample_radius ** m[significant]
    roots = coeffs ** (1.0 / m[significant])
    return float(1.0 / np.max(roots))


def _tiny_j(F: RationalGerm, zeta: complex, G: PointEvaluator, K: QuadratureSpec, config: NumericsConfig) -> QuadratureSpec:
    """Small clockwise circle around the pole of F clear of 0 and the induced points."""
    omega = F.pole
    points = [0j, *(zeta / s for s in G.singular_set)] if zeta != 0 else [0j]
    clearance = min(abs(omega - p) for p in points)
    return QuadratureSpec(omega, clearance / 4.0, K.nodes, Orientation.CLOCKWISE)


# ==================== Limit probes ====================


@dataclass(frozen=True)
class LimitProbeConfig:
    """Sampling ζ = ω(1 - offset·direction) along a ray into ω.

    Attributes:
        offsets: Decreasing positive offsets, default 2^{-k} for k = 1..12
        direction: Unit direction of approach; 1 is the real ray from below
        max_terms: Ceiling on partial-sum length for coefficient sources
        chunk: Partial sums are accumulated in blocks of this size
    """

    offsets: tuple[float, ...] = tuple(2.0**-k for k in range(1, 13))
    direction: complex = 1.0 + 0j
    max_terms: int = 2**20
    chunk: int = 2**16

    @classmethod
    def geometric(cls, k_start: int, k_stop: int, **kwargs) -> LimitProbeConfig:
        """Offsets 2^{-k} for k_start <= k <= k_stop."""
        return cls(offsets=tuple(2.0**-k for k in range(k_start, k_stop + 1)), **kwargs)


@dataclass(frozen=True)
class ProbeSample:
    offset: float
    zeta: complex
    value: complex
    scaled: complex


def partial_sum_evaluator(
    coefficient_rule: Callable[[int], TruncatedGerm],
    radius: float = 1.0,
    probe: LimitProbeConfig | None = None,
    name: str = "partial-sum",
) -> PointEvaluator:
    """Point evaluator from a coefficient rule by truncated summation inside |z| < radius.

    At a point with relative gap d = 1 - |z|/radius the series is summed to
    N = min(max_terms, ceil(40/d)) terms, so the omitted tail carries the factor e^{-40}
    until the ceiling is hit.
    """
    probe = probe or LimitProbeConfig()
    cache: dict[int, npt.NDArray[np.complex128]] = {}

    def coefficients(count: int) -> npt.NDArray[np.complex128]:
        if count not in cache:
            cache.clear()
            cache[count] = coefficient_rule(count).coeffs
        return cache[count]

    def evaluate(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        flat = np.atleast_1d(z).ravel()
        gaps = 1.0 - np.abs(flat) / radius
        needed = [min(probe.max_terms, math.ceil(40.0 / gap)) for gap in gaps]
        coeffs = coefficients(max(needed))
        out = np.empty(flat.size, dtype=np.complex128)
        for i, (point, terms) in enumerate(zip(flat, needed, strict=True)):
            total = 0j
            for start in range(0, terms, probe.chunk):
                stop = min(terms, start + probe.chunk)
                powers = np.power(point, np.arange(start, stop))
                total += complex(np.dot(coeffs[start:stop], powers))
            out[i] = total
        return out.reshape(np.shape(z))

    return PointEvaluator(evaluate, validity_radius=radius, name=name)


def limit_probe(
    product: PointEvaluator,
    omega: complex,
    power: int,
    probe: LimitProbeConfig | None = None,
) -> list[ProbeSample]:
    """Samples of (ζ-ω)^power·product(ζ) as ζ -> ω along ζ = ω(1 - offset·direction).

    Raises:
        DomainViolationError: A sample leaves the evaluator's domain
    """
    probe = probe or LimitProbeConfig()
    omega = complex(omega)
    samples = []
    for offset in probe.offsets:
        zeta = omega * (1.0 - offset * probe.direction)
        value = complex(product(np.array([zeta]))[0])
        samples.append(ProbeSample(offset, zeta, value, (zeta - omega) ** power * value))
    logger.info(
        f"Limit probe of {product.name} at ω={omega}, power {power}: "
        f"|scaled| {abs(samples[0].scaled):.3e} -> {abs(samples[-1].scaled):.3e}"
    )
    return samples


def polar_product_limit(f: TruncatedGerm, g: TruncatedGerm, tail: int | None = None) -> complex:
    """Average of the last ``tail`` termwise products f_n g_n (default a quarter of the order).

    For simple singularities A/(1-ζ)+... and B/(1-ζ)+... this tends to A·B.
    """
    product = hadamard_product(f, g)
    tail = tail or max(1, product.order // 4)
    return complex(np.mean(product.coeffs[-tail:]))
