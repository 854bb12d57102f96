"""Truncated series arithmetic."""

import numpy as np
import pytest

from hadamard_inverse.exceptions import InvalidParametersError, OrderUnderflowError, ZeroCoefficientError
from hadamard_inverse.germ_core import (
    TruncatedGerm,
    cauchy_product,
    coefficient_shift,
    delta,
    derivative,
    hadamard_inverse,
    hadamard_product,
    rising_factorial,
    theta_power,
)


def test_germ_is_immutable():
    germ = TruncatedGerm([1, 2, 3])
    assert germ.order == 3
    with pytest.raises(ValueError):
        germ.coeffs[0] = 5


def test_germ_rejects_empty_and_non_finite():
    with pytest.raises(InvalidParametersError):
        TruncatedGerm([])
    with pytest.raises(InvalidParametersError):
        TruncatedGerm([1.0, np.inf])


def test_delta_is_hadamard_unit(rng):
    f = TruncatedGerm(rng.normal(size=20) + 1j * rng.normal(size=20))
    assert hadamard_product(f, delta(20)).allclose(f, rtol=0, atol=0)
    assert hadamard_product(delta(20), f).allclose(f, rtol=0, atol=0)


def test_hadamard_product_truncates_to_shorter():
    f = TruncatedGerm([1, 2, 3, 4])
    g = TruncatedGerm([2, 2])
    assert hadamard_product(f, g).order == 2
    np.testing.assert_allclose(hadamard_product(f, g).coeffs, [2, 4])


def test_hadamard_inverse_of_example1_coefficients():
    """Coefficients n+1 invert to 1/(n+1)."""
    f = TruncatedGerm(np.arange(1, 65))
    g = hadamard_inverse(f)
    np.testing.assert_allclose(g.coeffs, 1.0 / np.arange(1, 65), rtol=1e-15)
    assert hadamard_product(f, g).allclose(delta(64), rtol=1e-15)


def test_hadamard_inverse_refuses_vanishing_coefficient():
    with pytest.raises(ZeroCoefficientError) as excinfo:
        hadamard_inverse(TruncatedGerm([1.0, 2.0, 0.0, 4.0]))
    assert excinfo.value.index == 2
    assert excinfo.value.exit_code == 2


def test_cauchy_product_of_geometric_series():
    """(1/(1-ζ))^2 has coefficients n+1."""
    result = cauchy_product(delta(10), delta(10))
    np.testing.assert_allclose(result.coeffs, np.arange(1, 11))


def test_rising_factorial():
    np.testing.assert_allclose(rising_factorial(np.arange(4), 0), [1, 1, 1, 1])
    np.testing.assert_allclose(rising_factorial(np.arange(4), 2), [2, 6, 12, 20])


def test_derivative_and_shift_reduce_order():
    f = TruncatedGerm([1, 1, 1, 1, 1])
    d = derivative(f, 1)
    assert d.order == 4
    np.testing.assert_allclose(d.coeffs, [1, 2, 3, 4])
    assert coefficient_shift(f, 2).order == 3


def test_derivative_rejects_excess_shift():
    f = TruncatedGerm([1, 1, 1])
    with pytest.raises(OrderUnderflowError):
        derivative(f, 3)
    with pytest.raises(OrderUnderflowError):
        coefficient_shift(f, -1)


def test_theta_power_is_diagonal():
    """∂^s(ζ^s g) multiplies g_n by (n+s)!/n!."""
    g = delta(6)
    np.testing.assert_allclose(theta_power(g, 1).coeffs, np.arange(1, 7))
    np.testing.assert_allclose(theta_power(g, 0).coeffs, np.ones(6))


def test_partial_sum_matches_closed_form():
    value = delta(200).partial_sum(0.5)
    assert value == pytest.approx(2.0, rel=1e-14)


def test_truncate_bounds():
    f = TruncatedGerm([1, 2, 3])
    assert f.truncate(2).order == 2
    with pytest.raises(OrderUnderflowError):
        f.truncate(4)


# ==================== Algebraic laws ====================


def random_germ(rng, order):
    return TruncatedGerm(rng.normal(size=order) + 1j * rng.normal(size=order))


def test_derivative_against_g_equals_shift_against_theta_power(rng):
    """∂^s f ⊙ g = (Σ f_{n+s} ζ^n) ⊙ ∂^s(ζ^s g) on random germs."""
    for _ in range(100):
        order = int(rng.integers(8, 40))
        s = int(rng.integers(0, 6))
        f, g = random_germ(rng, order), random_germ(rng, order - s)
        left = hadamard_product(derivative(f, s), g)
        right = hadamard_product(coefficient_shift(f, s), theta_power(g, s))
        assert left.order == right.order == order - s
        assert left.allclose(right, rtol=1e-13)


def test_hadamard_product_is_commutative_and_associative(rng):
    for _ in range(20):
        f, g, h = (random_germ(rng, 30) for _ in range(3))
        assert hadamard_product(f, g).allclose(hadamard_product(g, f), rtol=1e-15)
        left = hadamard_product(hadamard_product(f, g), h)
        right = hadamard_product(f, hadamard_product(g, h))
        assert left.allclose(right, rtol=1e-14)


def test_cauchy_product_matches_direct_convolution(rng):
    f, g = random_germ(rng, 25), random_germ(rng, 25)
    expected = [sum(f[k] * g[n - k] for k in range(n + 1)) for n in range(25)]
    np.testing.assert_allclose(cauchy_product(f, g).coeffs, expected, rtol=1e-12, atol=1e-12)


def test_shifts_and_derivatives_compose(rng):
    f = random_germ(rng, 30)
    for a, b in [(0, 3), (2, 5), (4, 4)]:
        assert coefficient_shift(coefficient_shift(f, a), b).allclose(coefficient_shift(f, a + b), rtol=0, atol=0)
        assert derivative(derivative(f, a), b).allclose(derivative(f, a + b), rtol=1e-13)
