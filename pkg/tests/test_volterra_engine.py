"""Volterra calculus for simple singularities."""

import math

import numpy as np
import pytest

from hadamard_inverse.contour_quadrature import LimitProbeConfig
from hadamard_inverse.exceptions import BaseMismatchError, InvalidParametersError, ZeroResidueError
from hadamard_inverse.germ_catalog import simple_singularity_coefficients
from hadamard_inverse.germ_core import TruncatedGerm
from hadamard_inverse.volterra_engine import (
    EntireFunctionJet,
    SingularJet,
    check_inverse_conditions,
    compute_h1,
    germ_from_jet,
    homogeneous_uniqueness,
    kernel_matrix,
    polar_order_bound_check,
    solve_g1,
    vanishing_residue_probe,
)

TWO_PI_I = 2j * math.pi
PROBE = LimitProbeConfig.geometric(1, 10)


# ==================== Jets ====================


def test_polynomial_jet_recenters_exactly():
    """ζ² around 1 is 1 + 2y + y²; around 2 it is 4 + 4x + x²."""
    f1 = EntireFunctionJet.from_polynomial([0.0, 0.0, 1.0])
    np.testing.assert_allclose(f1.taylor_at_1.coeffs, [1, 2, 1])
    np.testing.assert_allclose(f1.recentered(2.0, 3).coeffs, [4, 4, 1])


def test_exponential_jet():
    f1 = EntireFunctionJet.exponential(6)
    expected = [math.e / math.factorial(m) for m in range(6)]
    np.testing.assert_allclose(f1.taylor_at_1.coeffs, expected, rtol=1e-14)
    # recentred at 0 it is exp(ζ) again
    np.testing.assert_allclose(EntireFunctionJet.exponential(20).recentered(0.0, 3).coeffs, [1, 1, 0.5], rtol=1e-9)


def test_singular_jet_pads_jets():
    jet = SingularJet(1.0, 2.0, TruncatedGerm([1, 2, 3]))
    assert jet.order == 3
    assert jet.regular_jet.order == 3
    with pytest.raises(InvalidParametersError):
        SingularJet(0.0, 1.0, TruncatedGerm([1]))


# ==================== Kernel ====================


def test_kernel_is_strictly_lower_triangular():
    K = kernel_matrix(EntireFunctionJet.exponential(8), 1.0, 8)
    assert np.all(np.triu(K) == 0)


@pytest.mark.parametrize("omega", [1.0, 2.0, -0.5 + 1j])
def test_h1_of_constants(omega):
    """f1 = c, g1 = d gives h1 = -(cd/2πi)·log(1 + x/ω)."""
    c, d = 1.5, -0.25j
    h1 = compute_h1(EntireFunctionJet.constant(c, 8), TruncatedGerm([d]), omega, 8)
    n = np.arange(1, 8)
    expected = np.concatenate([[0.0], -(c * d / TWO_PI_I) * (-1.0) ** (n + 1) / (n * omega**n)])
    np.testing.assert_allclose(h1.coeffs, expected, rtol=1e-13, atol=1e-15)


def test_h1_of_identity_f1():
    """f1 = ζ, g1 = 1 gives h1 = -(x/ω)/2πi."""
    omega = 1.5
    h1 = compute_h1(EntireFunctionJet.from_polynomial([0.0, 1.0], 6), TruncatedGerm([1.0]), omega, 6)
    expected = np.zeros(6, dtype=complex)
    expected[1] = -1.0 / (omega * TWO_PI_I)
    np.testing.assert_allclose(h1.coeffs, expected, atol=1e-14)


# ==================== Inverse conditions ====================


def test_solved_g1_satisfies_conditions():
    A, B = 2.0, 0.5
    f1 = EntireFunctionJet.exponential(16)
    g1 = solve_g1(A, B, f1, 1.0, 16)
    F = SingularJet(1.0, A, f1.recentered(1.0, 16))
    G = SingularJet(1.0, B, g1)
    report = check_inverse_conditions(F, G, f1)
    assert report.satisfied
    assert report.regular_residual is None


def random_f1(rng, order):
    m = np.arange(order)
    raw = (rng.normal(size=order) + 1j * rng.normal(size=order)) / np.array([math.factorial(k) for k in m])
    return EntireFunctionJet(TruncatedGerm(raw))


def random_residue(rng):
    return rng.uniform(0.1, 2.0) * np.exp(2j * np.pi * rng.uniform())


def test_solve_g1_random_round_trip(rng):
    """A·g1 + B·f1 + h1[g1] = 0 at order 32 for random |A| >= 0.1, B and entire-like f1."""
    order = 32
    for _ in range(20):
        A = random_residue(rng)
        B = complex(rng.normal(), rng.normal())
        f1 = random_f1(rng, order)
        g1 = solve_g1(A, B, f1, 1.0, order)
        residual = A * g1.coeffs + B * f1.recentered(1.0, order).coeffs + compute_h1(f1, g1, 1.0, order).coeffs
        assert np.max(np.abs(residual)) < 1e-10


def test_homogeneous_uniqueness_on_random_instances(rng):
    for _ in range(50):
        A = random_residue(rng)
        omega = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
        certificate = homogeneous_uniqueness(A, random_f1(rng, 12), omega, 12)
        assert certificate.unique
        assert np.all(certificate.solution.coeffs == 0)
        assert all(d == A for d in certificate.diagonal)


def test_h1_only_sees_lower_coefficients(rng):
    """Changing g1_n moves h1 at indices above n and leaves the rest bit-for-bit equal."""
    order = 16
    f1 = random_f1(rng, order)
    g1 = rng.normal(size=order) + 1j * rng.normal(size=order)
    base = compute_h1(f1, TruncatedGerm(g1), 1.0, order).coeffs
    assert base[0] == 0
    for n in (0, 5, 14):
        bumped = g1.copy()
        bumped[n] += 1.0
        moved = compute_h1(f1, TruncatedGerm(bumped), 1.0, order).coeffs
        np.testing.assert_array_equal(moved[: n + 1], base[: n + 1])
        assert np.any(moved[n + 1 :] != base[n + 1 :])


def test_constant_f1_at_order_zero():
    """g_0 = -B·f1(ω)/A."""
    g1 = solve_g1(2.0, 0.5, EntireFunctionJet.from_polynomial([3.0, 1.0], 4), 2.0, 4)
    assert g1[0] == pytest.approx(-0.5 * 5.0 / 2.0)


def test_conditions_detect_wrong_residue():
    f1 = EntireFunctionJet.constant(1.0, 8)
    g1 = solve_g1(1.0, 1.0, f1, 1.0, 8)
    report = check_inverse_conditions(SingularJet(1.0, 1.0, f1.recentered(1.0, 8)), SingularJet(1.0, 2.0, g1))
    assert not report.satisfied
    assert report.residue_residual == pytest.approx(1.0)


def test_regular_condition():
    F = SingularJet(1.0, 2.0, TruncatedGerm([0.0]))
    G = SingularJet(1.0, 0.5, TruncatedGerm([0.0]), TruncatedGerm([1.0, -1.0]))
    report = check_inverse_conditions(F, G, h2_jet=TruncatedGerm([-2.0, 2.0]))
    assert report.regular_residual == pytest.approx(0.0)
    assert report.satisfied


def test_base_mismatch():
    F = SingularJet(1.0, 1.0, TruncatedGerm([1.0]))
    G = SingularJet(2.0, 1.0, TruncatedGerm([1.0]))
    with pytest.raises(BaseMismatchError):
        check_inverse_conditions(F, G)


def test_zero_residue_is_refused():
    with pytest.raises(ZeroResidueError):
        solve_g1(0.0, 1.0, EntireFunctionJet.constant(1.0), 1.0, 4)
    with pytest.raises(ZeroResidueError):
        homogeneous_uniqueness(0.0, EntireFunctionJet.constant(1.0), 1.0, 4)


def test_homogeneous_equation_has_only_zero_solution():
    certificate = homogeneous_uniqueness(0.5 + 0.5j, EntireFunctionJet.exponential(10), 1.0, 10)
    assert certificate.unique
    assert all(d == 0.5 + 0.5j for d in certificate.diagonal)
    assert certificate.conditioning == pytest.approx(1.0 / abs(0.5 + 0.5j))
    assert not certificate.ill_conditioned


def test_small_residue_is_flagged(caplog):
    certificate = homogeneous_uniqueness(1e-9, EntireFunctionJet.constant(1.0, 4), 1.0, 4)
    assert certificate.ill_conditioned
    assert "|A|" in caplog.text


# ==================== Germs from jets ====================


def test_germ_from_jet_matches_simple_singularity():
    """A/(1-ζ) + c·log(1-ζ)/2πi at ω = 1, where log ω = 0."""
    jet = SingularJet(1.0, 2.0, TruncatedGerm([0.5]))
    expected = simple_singularity_coefficients(2.0, [0.5], 1.0, 50)
    assert germ_from_jet(jet, 50).allclose(expected, rtol=1e-13)


# ==================== Limit checks ====================


def test_simple_pole_times_delta_does_not_decay():
    report = polar_order_bound_check(1, SingularJet(1.0, 1.0, TruncatedGerm([0.0])), PROBE)
    assert not report.decays
    assert report.last == pytest.approx(-1.0, rel=1e-8)


def test_simple_pole_times_log_decays():
    report = polar_order_bound_check(1, SingularJet(1.0, 0.0, TruncatedGerm([1.0])), PROBE)
    assert report.decays


def test_log_variation_probe():
    report = polar_order_bound_check(None, SingularJet(1.0, 0.0, TruncatedGerm([1.0])), PROBE)
    assert report.power == 1
    assert report.decays


def test_vanishing_residue_rules_out_inverse():
    """Without a polar part in F, (ζ-1)·(F ⊙ G) decays, so F ⊙ G cannot be δ."""
    F = SingularJet(1.0, 0.0, TruncatedGerm([1.0]))
    G = SingularJet(1.0, 1.0, TruncatedGerm([0.0]))
    report = vanishing_residue_probe(F, G, PROBE)
    assert report.decays
    with pytest.raises(InvalidParametersError):
        vanishing_residue_probe(G, F, PROBE)
