"""Closed-form germs and single-pole rational germs.

Every catalog germ carries an exact coefficient rule and a principal-sheet point evaluator.
The catalog covers the pole germs (ω-ζ)^{-j}, the logarithmic germs -log(1-ζ)/ζ and their
shifts, the geometric ladder of the two-pole counterexample, the Borel-Mayer series with the
unit circle as natural boundary, entire polynomials and germs with one simple singularity.

Catalog entries are addressable by name through :func:`parse_germ`::

    example1, example2, delta, log, shiftedlog:k=3, ladder, ladder-F,
    bm92:q=0.5,phi=golden, pole:omega=2,j=1, rational:omega=1,a=0|1|2,poly=1,
    simple:A=1,c=0.1, poly:coeffs=1|2|3
"""

from __future__ import annotations

__all__ = [
    "GOLDEN_PHASE",
    "CatalogGerm",
    "RationalGerm",
    "borel_mayer",
    "borel_mayer_coefficients",
    "entire_correction",
    "entire_polynomial",
    "expand",
    "geometric_ladder",
    "geometric_ladder_inverse",
    "inverse_factorial_coefficients",
    "ladder_f",
    "ladder_f_coefficients",
    "log_over_zeta",
    "log_over_zeta_coefficients",
    "log_variation_coefficients",
    "parse_complex",
    "parse_germ",
    "perturbed_inverse",
    "pole_coefficients",
    "pole_germ",
    "pole_hadamard_pole",
    "pole_hadamard_series",
    "rational_catalog",
    "root_test_limsup",
    "shifted_log",
    "shifted_log_coefficients",
    "simple_singularity",
    "simple_singularity_coefficients",
]

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import InvalidParametersError, ResonantCoefficientError, UnknownGermError
from .germ_core import TruncatedGerm, rising_factorial

logger = logging.getLogger(__name__)

Evaluator = Callable[[npt.NDArray[np.complex128]], npt.NDArray[np.complex128]]

# Fractional part of the golden ratio; p = exp(2πi·GOLDEN_PHASE) is the standard non-root of unity
GOLDEN_PHASE = (math.sqrt(5.0) - 1.0) / 2.0


# ==================== Rational germs ====================


@dataclass(frozen=True)
class RationalGerm:
    """Σ_{j=1}^{M} a_j (ω-ζ)^{-j} + polynomial part.

    Attributes:
        pole: Pole location ω (nonzero)
        pole_coeffs: a_1..a_M, coefficient of (ω-ζ)^{-j}, with a_M != 0
        poly_part: Coefficients of the entire polynomial addend, lowest degree first
    """

    pole: complex
    pole_coeffs: tuple[complex, ...]
    poly_part: tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pole", complex(self.pole))
        object.__setattr__(self, "pole_coeffs", tuple(complex(a) for a in self.pole_coeffs))
        object.__setattr__(self, "poly_part", tuple(complex(c) for c in self.poly_part))
        if self.pole == 0:
            raise InvalidParametersError("pole must be nonzero")
        if not self.pole_coeffs:
            raise InvalidParametersError("at least one polar coefficient is required")
        if self.pole_coeffs[-1] == 0:
            raise InvalidParametersError("leading polar coefficient a_M must be nonzero")

    @property
    def pole_order(self) -> int:
        """M, the order of the pole."""
        return len(self.pole_coeffs)

    def evaluate(self, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Point values Σ a_j (ω-z)^{-j} + poly(z)."""
        z = np.asarray(z, dtype=np.complex128)
        inv = 1.0 / (self.pole - z)
        total = np.zeros_like(z)
        power = np.ones_like(z)
        for a in self.pole_coeffs:
            power = power * inv
            total = total + a * power
        if self.poly_part:
            total = total + np.polynomial.polynomial.polyval(z, np.array(self.poly_part))
        return total

    def without_poly_part(self) -> RationalGerm:
        """Same polar part, entire addend dropped."""
        return RationalGerm(self.pole, self.pole_coeffs)


def pole_coefficients(omega: complex, j: int, count: int) -> TruncatedGerm:
    """Taylor coefficients of (ω-ζ)^{-j}: binomial(n+j-1, j-1) ω^{-n-j}."""
    omega = complex(omega)
    if omega == 0:
        raise InvalidParametersError("pole must be nonzero")
    if j < 1:
        raise InvalidParametersError(f"pole order must be positive, got {j}")
    n = np.arange(count)
    binomials = rising_factorial(n, j - 1) / math.factorial(j - 1)
    return TruncatedGerm(binomials * np.power(1.0 / omega, n + j))


def expand(r: RationalGerm, count: int) -> TruncatedGerm:
    """Taylor coefficients at 0 of a rational germ."""
    total = np.zeros(count, dtype=np.complex128)
    for j, a in enumerate(r.pole_coeffs, start=1):
        if a != 0:
            total += a * pole_coefficients(r.pole, j, count).coeffs
    poly = np.array(r.poly_part[:count], dtype=np.complex128)
    total[: poly.size] += poly
    return TruncatedGerm(total)


def pole_hadamard_pole(f0: RationalGerm, g0: RationalGerm) -> RationalGerm:
    """Closed form of f0 ⊙ g0 for f0 with pole at 1 and g0 with pole at ω.

    Expands Σ_{j,k} A_j B_k/(j-1)! ∂^{j-1}(ζ^{j-1}(ω-ζ)^{-k}) exactly in powers of u = ω-ζ:
    ζ^{j-1} = Σ_r C(j-1,r) ω^{j-1-r} (-u)^r and ∂_ζ = -∂_u. The result has pole order M+N-1.
    """
    if f0.poly_part or g0.poly_part:
        raise InvalidParametersError("pole ⊙ pole closed form needs empty polynomial parts")
    if f0.pole != 1:
        raise InvalidParametersError(f"first factor must have its pole at 1, got {f0.pole}")
    omega = g0.pole
    top = f0.pole_order + g0.pole_order - 1
    result = [0j] * top
    for j, a_j in enumerate(f0.pole_coeffs, start=1):
        m = j - 1
        for k, b_k in enumerate(g0.pole_coeffs, start=1):
            for r in range(m + 1):
                exponent = r - k
                # m-fold u-derivative of u^exponent, with the (-1)^m from ∂_ζ = -∂_u
                falling = 1
                for i in range(m):
                    falling *= exponent - i
                if falling == 0:
                    continue
                term = math.comb(m, r) * omega ** (m - r) * (-1) ** r * (-1) ** m * falling
                power = -(exponent - m)
                result[power - 1] += a_j * b_k * term / math.factorial(m)
    logger.debug(f"pole ⊙ pole: orders {f0.pole_order} and {g0.pole_order} give {top}")
    return RationalGerm(omega, tuple(result))


def pole_hadamard_series(f0: RationalGerm, g: TruncatedGerm) -> TruncatedGerm:
    """f0 ⊙ g via Σ_j a_j/(j-1)! ∂^{j-1}(ζ^{j-1} g) after rescaling ζ -> ζ/ω.

    Uses only the diagonal action of ∂^s ζ^s; ``expand(f0) ⊙ g`` is the termwise cross-check.
    """
    n = np.arange(g.order)
    omega = f0.pole
    rescaled = g.coeffs * np.power(1.0 / omega, n)
    total = np.zeros(g.order, dtype=np.complex128)
    for j, a in enumerate(f0.pole_coeffs, start=1):
        total += a * omega ** (-j) * rising_factorial(n, j - 1) / math.factorial(j - 1) * rescaled
    poly = np.array(f0.poly_part[: g.order], dtype=np.complex128)
    total[: poly.size] += poly * g.coeffs[: poly.size]
    return TruncatedGerm(total)


# ==================== Coefficient rules ====================


def log_over_zeta_coefficients(count: int) -> TruncatedGerm:
    """-log(1-ζ)/ζ: coefficients 1/(n+1)."""
    return TruncatedGerm(1.0 / np.arange(1, count + 1))


def shifted_log_coefficients(k: int, count: int) -> TruncatedGerm:
    """ζ^{-k}(-log(1-ζ) - Σ_{m<k} ζ^m/m): coefficients 1/(n+k)."""
    if k < 1:
        raise InvalidParametersError(f"shift must be positive, got {k}")
    return TruncatedGerm(1.0 / np.arange(k, count + k))


def geometric_ladder_inverse(count: int) -> TruncatedGerm:
    """1 + Σ_m ζ/(2^m-ζ): coefficient 0 is 1, coefficient n >= 1 is 1/(1-2^{-n})."""
    n = np.arange(count, dtype=np.float64)
    coeffs = np.ones(count, dtype=np.complex128)
    coeffs[1:] = 1.0 / (1.0 - np.exp2(-n[1:]))
    return TruncatedGerm(coeffs)


def ladder_f_coefficients(count: int) -> TruncatedGerm:
    """1 + 1/(1-ζ) - 2/(2-ζ): coefficient 0 is 1, coefficient n >= 1 is 1-2^{-n}."""
    n = np.arange(count, dtype=np.float64)
    coeffs = np.ones(count, dtype=np.complex128)
    coeffs[1:] = 1.0 - np.exp2(-n[1:])
    return TruncatedGerm(coeffs)


def _check_borel_mayer(q: complex, p: complex, config: NumericsConfig) -> None:
    if abs(q) >= 1:
        raise InvalidParametersError(f"|q| must be < 1, got {abs(q)}")
    if abs(abs(p) - 1.0) > config.unit_modulus_tol:
        raise InvalidParametersError(f"|p| must be 1, got {abs(p)!r}")
    # |p^k - 1| = 2|sin(kθ/2)|, checked for every k up to the configured order
    theta = cmath.phase(p)
    k = np.arange(1, config.root_of_unity_order + 1, dtype=np.float64)
    distance = 2.0 * np.abs(np.sin(k * theta / 2.0))
    hits = np.flatnonzero(distance < config.root_of_unity_tol)
    if hits.size:
        raise InvalidParametersError(f"p is numerically a root of unity of order {int(k[hits[0]])}")


def borel_mayer_coefficients(
    q: complex, p: complex, count: int, config: NumericsConfig | None = None
) -> TruncatedGerm:
    """Σ ζ^n/(1-q p^n), the Hadamard inverse of 1/(1-ζ) - q/(1-pζ)."""
    config = config or DEFAULT_CONFIG
    _check_borel_mayer(complex(q), complex(p), config)
    n = np.arange(count)
    return TruncatedGerm(1.0 / (1.0 - q * np.power(complex(p), n)))


def simple_singularity_coefficients(
    residue: complex, f1: Sequence[complex], omega: complex, count: int
) -> TruncatedGerm:
    """A/(ω-ζ) + f1(ζ)·log(1-ζ/ω)/2πi for a polynomial f1 (lowest degree first)."""
    omega = complex(omega)
    n = np.arange(count)
    log_coeffs = np.zeros(count, dtype=np.complex128)
    log_coeffs[1:] = -np.power(1.0 / omega, n[1:]) / n[1:]
    poly = np.array(f1, dtype=np.complex128)[:count]
    log_part = np.convolve(poly, log_coeffs)[:count] / (2j * math.pi)
    return TruncatedGerm(residue * np.power(1.0 / omega, n + 1) + log_part)


def log_variation_coefficients(count: int) -> TruncatedGerm:
    """log(1-ζ)/2πi: coefficient 0 is 0, coefficient n >= 1 is -1/(2πi n)."""
    coeffs = np.zeros(count, dtype=np.complex128)
    coeffs[1:] = -1.0 / (2j * math.pi * np.arange(1, count))
    return TruncatedGerm(coeffs)


def inverse_factorial_coefficients(count: int) -> TruncatedGerm:
    """exp(ζ): coefficients 1/n! (underflowing to 0 past n ~ 170)."""
    coeffs = np.ones(count, dtype=np.float64)
    coeffs[1:] = np.cumprod(1.0 / np.arange(1, count))
    return TruncatedGerm(coeffs)


# ==================== Entire perturbations ====================


def entire_correction(b: TruncatedGerm, h: TruncatedGerm, config: NumericsConfig | None = None) -> TruncatedGerm:
    """Correction series h_n b_n^2/(1 + h_n b_n).

    If F ⊙ G = δ with G = Σ b_n ζ^n and h is entire, then (F+h)^{⊙-1} = G - correction,
    and the correction is entire.

    Raises:
        ResonantCoefficientError: 1 + h_n b_n vanishes, so F+h has no Hadamard inverse
    """
    config = config or DEFAULT_CONFIG
    n = min(b.order, h.order)
    bn, hn = b.coeffs[:n], h.coeffs[:n]
    denominator = 1.0 + hn * bn
    resonant = np.flatnonzero(np.abs(denominator) < config.zero_threshold)
    if resonant.size:
        raise ResonantCoefficientError(int(resonant[0]))
    return TruncatedGerm(hn * bn**2 / denominator)


def perturbed_inverse(b: TruncatedGerm, h: TruncatedGerm, config: NumericsConfig | None = None) -> TruncatedGerm:
    """Coefficients of (F+h)^{⊙-1} from those of F^{⊙-1} = b."""
    return b - entire_correction(b, h, config)


def root_test_limsup(series: TruncatedGerm, start: int | None = None) -> float:
    """max_{n >= start} |c_n|^{1/n}, the tail estimate of limsup |c_n|^{1/n}.

    ``start`` defaults to half the order; index 0 is never used.
    """
    if start is None:
        start = series.order // 2
    start = max(start, 1)
    tail = np.abs(series.coeffs[start:])
    if tail.size == 0:
        return 0.0
    n = np.arange(start, series.order, dtype=np.float64)
    with np.errstate(divide="ignore"):
        roots = np.where(tail > 0, np.exp(np.log(np.where(tail > 0, tail, 1.0)) / n), 0.0)
    return float(np.max(roots))


# ==================== Catalog ====================


@dataclass(frozen=True)
class CatalogGerm:
    """Named germ with an exact coefficient rule and a principal-sheet evaluator.

    Attributes:
        name: Catalog name (mini-language form)
        coefficient_rule: count -> TruncatedGerm
        evaluator: Vectorised point evaluator on the principal sheet
        singular_set: Declared singular points
        branch_cut: Whether each singular point s carries the cut s·[1, ∞)
        validity_radius: Evaluation restricted to |ζ| < radius (natural boundary), or None
        rational: Single-pole rational form when the germ is one
    """

    name: str
    coefficient_rule: Callable[[int], TruncatedGerm] = field(repr=False)
    evaluator: Evaluator = field(repr=False)
    singular_set: tuple[complex, ...] = ()
    branch_cut: bool = False
    validity_radius: float | None = None
    rational: RationalGerm | None = None

    def coefficients(self, count: int) -> TruncatedGerm:
        """First ``count`` Taylor coefficients."""
        return self.coefficient_rule(count)

    def __call__(self, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.evaluator(np.asarray(z, dtype=np.complex128))


def rational_catalog(name: str, r: RationalGerm) -> CatalogGerm:
    """Catalog entry backed by a single-pole rational germ."""
    return CatalogGerm(
        name=name,
        coefficient_rule=lambda count: expand(r, count),
        evaluator=r.evaluate,
        singular_set=(r.pole,),
        rational=r,
    )


def pole_germ(omega: complex, j: int) -> CatalogGerm:
    """(ω-ζ)^{-j}."""
    coeffs = [0j] * (j - 1) + [1.0]
    return rational_catalog(f"pole:omega={omega},j={j}", RationalGerm(omega, tuple(coeffs)))


def _log_over_zeta(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    safe = np.where(z == 0, 0.5, z)
    return np.where(z == 0, 1.0 + 0j, -np.log1p(-safe) / safe)


def log_over_zeta() -> CatalogGerm:
    """-log(1-ζ)/ζ; principal branch with cut [1, ∞)."""
    return CatalogGerm(
        name="log",
        coefficient_rule=log_over_zeta_coefficients,
        evaluator=_log_over_zeta,
        singular_set=(1.0 + 0j,),
        branch_cut=True,
    )


def shifted_log(k: int) -> CatalogGerm:
    """Coefficients 1/(n+k); k = 1 is -log(1-ζ)/ζ."""
    if k < 1:
        raise InvalidParametersError(f"shift must be positive, got {k}")

    def evaluate(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        small = np.abs(z) < 0.1
        # direct series near 0 avoids the cancellation in the closed form
        series = np.polynomial.polynomial.polyval(z, 1.0 / np.arange(k, k + 64))
        safe = np.where(small, 0.5, z)
        head = sum(safe**m / m for m in range(1, k))
        closed = (-np.log1p(-safe) - head) / safe**k
        return np.where(small, series, closed)

    return CatalogGerm(
        name=f"shiftedlog:k={k}",
        coefficient_rule=lambda count: shifted_log_coefficients(k, count),
        evaluator=evaluate,
        singular_set=(1.0 + 0j,),
        branch_cut=True,
    )


def geometric_ladder(config: NumericsConfig | None = None) -> CatalogGerm:
    """1 + Σ_{m>=0} ζ/(2^m-ζ), poles at every 2^m."""
    config = config or DEFAULT_CONFIG

    def evaluate(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        total = np.ones_like(z)
        for m in range(1000):
            term = z / (2.0**m - z)
            total = total + term
            if np.all(np.abs(term) <= config.ladder_tail_tol * np.abs(total)):
                break
        return total

    return CatalogGerm(
        name="ladder",
        coefficient_rule=geometric_ladder_inverse,
        evaluator=evaluate,
        singular_set=tuple(complex(2.0**m) for m in range(64)),
    )


def ladder_f() -> CatalogGerm:
    """1 + 1/(1-ζ) - 2/(2-ζ), whose Hadamard inverse is the geometric ladder."""
    return CatalogGerm(
        name="ladder-F",
        coefficient_rule=ladder_f_coefficients,
        evaluator=lambda z: 1.0 + 1.0 / (1.0 - z) - 2.0 / (2.0 - z),
        singular_set=(1.0 + 0j, 2.0 + 0j),
    )


def borel_mayer(q: complex, p: complex, config: NumericsConfig | None = None) -> CatalogGerm:
    """Σ ζ^n/(1-q p^n), evaluated as Σ_m q^m/(1-p^m ζ) inside the unit disc."""
    config = config or DEFAULT_CONFIG
    q, p = complex(q), complex(p)
    _check_borel_mayer(q, p, config)
    terms = max(1, math.ceil(math.log(1e-17) / math.log(abs(q)))) if q != 0 else 1

    def evaluate(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        total = np.zeros_like(z)
        for m in range(terms):
            total = total + q**m / (1.0 - p**m * z)
        return total

    return CatalogGerm(
        name=f"bm92:q={q},p={p}",
        coefficient_rule=lambda count: borel_mayer_coefficients(q, p, count, config),
        evaluator=evaluate,
        validity_radius=1.0,
    )


def entire_polynomial(coeffs: Sequence[complex]) -> CatalogGerm:
    """Polynomial germ, lowest degree first."""
    poly = np.array(coeffs, dtype=np.complex128)

    def rule(count: int) -> TruncatedGerm:
        out = np.zeros(count, dtype=np.complex128)
        out[: min(count, poly.size)] = poly[:count]
        return TruncatedGerm(out)

    return CatalogGerm(
        name="poly",
        coefficient_rule=rule,
        evaluator=lambda z: np.polynomial.polynomial.polyval(z, poly),
    )


def simple_singularity(residue: complex, f1: Sequence[complex], omega: complex = 1.0) -> CatalogGerm:
    """A/(ω-ζ) + f1(ζ)·log(1-ζ/ω)/2πi with polynomial f1."""
    omega = complex(omega)
    poly = np.array(f1, dtype=np.complex128)

    def evaluate(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        log_term = np.log1p(-z / omega) / (2j * math.pi)
        return residue / (omega - z) + np.polynomial.polynomial.polyval(z, poly) * log_term

    return CatalogGerm(
        name=f"simple:A={residue},omega={omega}",
        coefficient_rule=lambda count: simple_singularity_coefficients(residue, poly, omega, count),
        evaluator=evaluate,
        singular_set=(omega,),
        branch_cut=True,
    )


# ==================== Mini-language ====================


def parse_complex(text: str) -> complex:
    """Parse ``0.5``, ``1+2j``, ``2i`` or ``-i`` into a complex number."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    if cleaned in {"j", "+j"}:
        cleaned = "1j"
    elif cleaned == "-j":
        cleaned = "-1j"
    try:
        return complex(cleaned)
    except ValueError as e:
        raise UnknownGermError(f"cannot parse number {text!r}") from e


def _parse_list(text: str) -> list[complex]:
    return [parse_complex(part) for part in text.split("|") if part]


def _phase(text: str) -> float:
    return GOLDEN_PHASE if text == "golden" else float(parse_complex(text).real)


def _build_bm92(params: dict[str, str]) -> CatalogGerm:
    q = parse_complex(params.get("q", "0.5"))
    if "p" in params:
        p = parse_complex(params["p"])
    else:
        p = cmath.exp(2j * math.pi * _phase(params.get("phi", "golden")))
    return borel_mayer(q, p)


def _build_rational(params: dict[str, str]) -> CatalogGerm:
    r = RationalGerm(
        parse_complex(params.get("omega", "1")),
        tuple(_parse_list(params.get("a", "1"))),
        tuple(_parse_list(params.get("poly", ""))),
    )
    return rational_catalog(f"rational:omega={r.pole}", r)


def _build_simple(params: dict[str, str]) -> CatalogGerm:
    f1 = _parse_list(params["f1"]) if "f1" in params else [parse_complex(params.get("c", "1"))]
    return simple_singularity(parse_complex(params.get("A", "1")), f1, parse_complex(params.get("omega", "1")))


_EXAMPLE1 = RationalGerm(1.0, (0.0, 1.0))
_EXAMPLE2 = RationalGerm(1.0, (0.0, 1.0, 2.0))

# name -> (allowed keys, builder)
_REGISTRY: dict[str, tuple[frozenset[str], Callable[[dict[str, str]], CatalogGerm]]] = {
    "example1": (frozenset(), lambda _: rational_catalog("example1", _EXAMPLE1)),
    "example2": (frozenset(), lambda _: rational_catalog("example2", _EXAMPLE2)),
    "delta": (frozenset(), lambda _: rational_catalog("delta", RationalGerm(1.0, (1.0,)))),
    "log": (frozenset(), lambda _: log_over_zeta()),
    "shiftedlog": (frozenset({"k"}), lambda p: shifted_log(int(p.get("k", "1")))),
    "ladder": (frozenset(), lambda _: geometric_ladder()),
    "ladder-F": (frozenset(), lambda _: ladder_f()),
    "bm92": (frozenset({"q", "phi", "p"}), _build_bm92),
    "pole": (
        frozenset({"omega", "j"}),
        lambda p: pole_germ(parse_complex(p.get("omega", "1")), int(p.get("j", "1"))),
    ),
    "rational": (frozenset({"omega", "a", "poly"}), _build_rational),
    "simple": (frozenset({"A", "c", "f1", "omega"}), _build_simple),
    "poly": (frozenset({"coeffs"}), lambda p: entire_polynomial(_parse_list(p.get("coeffs", "1")))),
}


def parse_germ(text: str) -> CatalogGerm:
    """Resolve ``name:key=value,...`` to a catalog germ; unknown names or keys are rejected.

    Raises:
        UnknownGermError: Unknown name, unknown key or malformed value
    """
    name, _, rest = text.strip().partition(":")
    if name not in _REGISTRY:
        raise UnknownGermError(f"unknown germ {name!r}; known: {', '.join(sorted(_REGISTRY))}")
    allowed, builder = _REGISTRY[name]
    params: dict[str, str] = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise UnknownGermError(f"malformed parameter {item!r} in {text!r}")
        if key not in allowed:
            raise UnknownGermError(f"unknown key {key!r} for {name!r}; allowed: {sorted(allowed)}")
        params[key] = value
    try:
        germ = builder(params)
    except (ValueError, KeyError) as e:
        raise UnknownGermError(f"cannot build {text!r}: {e}") from e
    logger.debug(f"Resolved germ {text!r} -> {germ.name}")
    return germ
