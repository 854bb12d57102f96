"""Ratio tests, Padé pole maps and natural-boundary scores."""

import math

import numpy as np
import pytest

from hadamard_inverse.exceptions import NonConvergenceError, OrderUnderflowError, ZeroCoefficientError
from hadamard_inverse.germ_catalog import (
    RationalGerm,
    expand,
    geometric_ladder_inverse,
    log_over_zeta_coefficients,
    parse_germ,
    pole_coefficients,
    simple_singularity_coefficients,
)
from hadamard_inverse.germ_core import TruncatedGerm, delta, hadamard_inverse
from hadamard_inverse.singularity_scope import (
    PRINCIPAL_SHEET_CAVEAT,
    EstimateMethod,
    PadeApproximant,
    _on_cut,
    aberth_roots,
    natural_boundary_score,
    pade,
    pade_poles,
    ratio_estimate,
    root_test_radius,
    scan_report,
)


def two_pole_germ(count: int) -> TruncatedGerm:
    """1/(1-ζ) + 1/(3-ζ)."""
    return expand(RationalGerm(1.0, (1.0,)), count) + pole_coefficients(3.0, 1, count)


# ==================== Ratio and root tests ====================


def test_ratio_estimate_of_example1_inverse():
    estimate = ratio_estimate(log_over_zeta_coefficients(64))
    assert estimate.method is EstimateMethod.RATIO_TEST
    assert estimate.locations[0] == pytest.approx(1.0, abs=1e-3)
    assert not estimate.oscillatory


def test_ratio_estimate_of_example2_inverse(example2):
    """b_n = 1/((n+1)(n+3)) behaves like n^{-2}, Domb-Sykes exponent -1."""
    estimate = ratio_estimate(hadamard_inverse(expand(example2, 200)))
    assert estimate.locations[0] == pytest.approx(1.0, abs=1e-3)
    assert estimate.exponent.real == pytest.approx(-1.0, abs=0.1)


def test_ratio_estimate_of_off_unit_pole():
    estimate = ratio_estimate(pole_coefficients(2.5, 2, 80))
    assert estimate.locations[0] == pytest.approx(2.5, rel=1e-4)


def test_ratio_estimate_flags_conjugate_pair():
    f = pole_coefficients(1.5j, 1, 80) + pole_coefficients(-1.5j, 1, 80) + pole_coefficients(1.5, 1, 80).scaled(0.3)
    estimate = ratio_estimate(f)
    assert estimate.oscillatory


def test_ratio_estimate_preconditions():
    with pytest.raises(ZeroCoefficientError):
        ratio_estimate(TruncatedGerm([1, 1, 0, 1, 1, 1, 1]))
    with pytest.raises(OrderUnderflowError):
        ratio_estimate(TruncatedGerm([1, 1, 1]))


def test_root_test_radius():
    assert root_test_radius(pole_coefficients(2.0, 1, 200)) == pytest.approx(2.0, rel=2e-2)
    assert math.isinf(root_test_radius(TruncatedGerm([1.0, 0.0, 0.0, 0.0])))


# ==================== Padé ====================


def test_pade_recovers_rational_germ():
    approximant = pade(two_pole_germ(30), 1, 2)
    assert approximant.degrees == (1, 2)
    assert approximant.defect < 1e-12
    poles = sorted((p.location for p in pade_poles(approximant)), key=lambda z: (z.real, z.imag))
    assert poles[0] == pytest.approx(1.0, abs=1e-10)
    assert poles[1] == pytest.approx(3.0, abs=1e-9)


def test_pade_reduces_rank_deficient_system():
    approximant = pade(delta(30), 6, 6)
    assert approximant.reduced
    assert approximant.requested == (6, 6)
    assert approximant.degrees == (1, 1)
    assert approximant(0.5) == pytest.approx(2.0)


def test_pade_needs_enough_coefficients():
    with pytest.raises(OrderUnderflowError):
        pade(delta(10), 5, 5)


def test_aberth_roots_of_cyclotomic_polynomial():
    roots = aberth_roots([-1, 0, 0, 0, 0, 1])
    assert len(roots) == 5
    np.testing.assert_allclose(np.abs(roots), 1.0, rtol=1e-10)
    np.testing.assert_allclose(np.sort_complex(roots**5), np.ones(5), atol=1e-9)


def test_aberth_budget_exhaustion(numerics):
    with pytest.raises(NonConvergenceError):
        aberth_roots([1, 2, 3, 4, 5, 6, 7], numerics.with_overrides(aberth_max_iter=1, root_tol=1e-300))


def test_froissart_doublet_is_flagged():
    """A near-cancelling pole/zero pair at 0.5 is marked spurious."""
    approximant = pade(TruncatedGerm(np.ones(12)), 1, 1)
    doublet = PadeApproximant((1.0, -2.5, 1.0), (1.0, -3.0 + 1e-12, 2.0), 0.0, (2, 2))
    flagged = pade_poles(doublet)
    assert any(p.spurious for p in flagged)
    assert not any(p.spurious for p in pade_poles(approximant))


# ==================== Boundary score and scan ====================


def test_boundary_score_of_two_pole_germ():
    """One of the two poles sits on the circle of convergence."""
    score = natural_boundary_score(two_pole_germ(48), [(12, 12), (16, 16)])
    assert score == pytest.approx(0.5)


@pytest.mark.slow
@pytest.mark.parametrize("order", [96, 128, 200])
def test_boundary_score_of_borel_mayer_series(order):
    """Poles of Σ ζ^n/(1-q p^n) crowd the unit circle and none settles inside it."""
    f = parse_germ("bm92:q=0.5,phi=golden").coefficients(order)
    orders = [(20, 20), (30, 30), (40, 40)]
    assert natural_boundary_score(f, orders) >= 0.8
    report = scan_report(f, expected=(), orders=orders)
    assert all(abs(z) >= 0.85 for z in report.stable_poles)


def test_scan_of_example1_inverse_is_confined():
    report = scan_report(log_over_zeta_coefficients(64))
    assert report.ratio is not None
    assert report.ratio.locations[0] == pytest.approx(1.0, abs=1e-3)
    assert report.confined
    assert report.caveat == PRINCIPAL_SHEET_CAVEAT
    for z in report.cut_poles:
        assert z.real > 1.0 - 1e-6


def test_scan_of_rational_germ_finds_stable_poles():
    report = scan_report(two_pole_germ(48), expected=(1.0, 3.0))
    assert report.nearest_stable(1.0) == pytest.approx(1.0, abs=1e-8)
    assert report.confined
    estimate = report.pole_estimate()
    assert estimate.method is EstimateMethod.PADE_POLES
    assert estimate.boundary_score == report.boundary_score


def test_scan_records_failures_instead_of_raising():
    report = scan_report(TruncatedGerm([1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]))
    assert "ratio" in report.failures
    assert "pade[20/20]" in report.failures


def test_scan_of_exact_rational_survives_rank_collapse():
    """Every order reduces to [1/1] for δ; the reduced approximant reproduces the series."""
    report = scan_report(delta(48))
    assert len(report.stable_poles) == 1
    assert report.stable_poles[0] == pytest.approx(1.0, abs=1e-12)
    assert report.confined


def test_scan_of_geometric_ladder_is_not_confined():
    """Poles at 2 and 4 are singular points of their own, not traces of a cut from 1."""
    report = scan_report(geometric_ladder_inverse(64), expected=(1.0,))
    assert not report.confined
    assert report.nearest_stable(1.0) == pytest.approx(1.0, abs=1e-3)
    assert report.nearest_stable(2.0) == pytest.approx(2.0, abs=1e-2)
    assert report.nearest_stable(4.0) == pytest.approx(4.0, abs=1e-1)
    assert not set(report.stable_poles) & set(report.cut_poles)


def test_drifting_cut_poles_are_not_stable():
    report = scan_report(log_over_zeta_coefficients(64))
    assert report.cut_poles
    assert all(abs(z - 1.0) < 1e-2 for z in report.stable_poles if abs(z) <= 2.0)


@pytest.mark.parametrize("c", [0.1, 1.0])
def test_scan_of_simple_singularity_inverse_is_confined(c):
    """The inverse of 1/(1-ζ) + c·log(1-ζ)/2πi has nothing but its singular point at 1 in |z| <= 2."""
    f = simple_singularity_coefficients(1.0, [c], 1.0, 64)
    report = scan_report(hadamard_inverse(f), expected=(1.0,))
    assert report.confined


def test_tiny_imaginary_parts_of_poles_are_flushed():
    approximant = PadeApproximant((1.0,), (1.0, -1.0 / complex(2.0, 1e-320)), 0.0, (0, 1))
    (pole,) = pade_poles(approximant)
    assert pole.location.imag == 0.0
    assert pole.location.real == pytest.approx(2.0)


def test_cut_membership_with_subnormal_offsets():
    assert _on_cut(complex(1.5, 5e-324), 1.0 + 0j, 0.2)
    assert not _on_cut(complex(0.5, 5e-324), 1.0 + 0j, 0.2)
    assert not _on_cut(1.0 + 0j, 1.0 + 0j, 0.2)
