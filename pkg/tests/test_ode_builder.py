"""Euler operators for inverses of single-pole germs."""

import numpy as np
import pytest

from hadamard_inverse.exceptions import CharacteristicRootError, InvalidParametersError, PolyPartPresentError
from hadamard_inverse.germ_catalog import RationalGerm, expand
from hadamard_inverse.germ_core import hadamard_inverse
from hadamard_inverse.ode_builder import (
    EulerOperator,
    build_euler_operator,
    characteristic_value,
    characteristic_values,
    singular_points,
    solve_ode_series,
    verify_recurrence,
)


def test_example1_operator(example1):
    """(1+X∂)G = 1/(1-X)."""
    op = build_euler_operator(example1)
    assert op.coeffs == (1.0, 1.0)
    assert op.order == 1
    assert singular_points(op) == frozenset({1.0 + 0j, 0j})


def test_example2_operator(example2):
    """P(n) = (n+1)(n+3)."""
    op = build_euler_operator(example2)
    assert op.coeffs == pytest.approx((3.0, 5.0, 1.0))
    n = np.arange(20)
    np.testing.assert_allclose(characteristic_values(op, 20), (n + 1) * (n + 3))


def test_pure_pole_has_no_origin_singularity():
    op = build_euler_operator(RationalGerm(2.0, (3.0,)))
    assert op.order == 0
    assert singular_points(op) == frozenset({0.5 + 0j})


def test_characteristic_value_matches_vector_form(example2):
    op = build_euler_operator(example2)
    values = characteristic_values(op, 10)
    for n in range(10):
        assert characteristic_value(op, n) == pytest.approx(values[n])


def test_characteristic_value_is_scaled_coefficient():
    """P(n) = ωⁿ F_n for a pole off the unit circle."""
    F = RationalGerm(0.8 + 0.6j, (1.0, -0.5j, 2.0))
    op = build_euler_operator(F)
    n = np.arange(60)
    np.testing.assert_allclose(characteristic_values(op, 60), F.pole**n * expand(F, 60).coeffs, rtol=1e-12)


def test_solve_ode_series_matches_hadamard_inverse(example2):
    op = build_euler_operator(example2)
    series = solve_ode_series(op, 64)
    assert series.allclose(hadamard_inverse(expand(example2, 64)), rtol=1e-14)


def test_apply_recovers_right_hand_side(example1):
    """The operator maps the inverse to Σ ωⁿ Xⁿ."""
    op = build_euler_operator(example1)
    image = op.apply(solve_ode_series(op, 30))
    np.testing.assert_allclose(image.coeffs, np.ones(30), rtol=1e-14)


@pytest.mark.parametrize("seed", range(50))
def test_random_recurrences(seed):
    """Poles with 0.5 <= |ω| <= 2 and up to five polar coefficients."""
    rng = np.random.default_rng(seed)
    M = int(rng.integers(1, 6))
    omega = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
    coeffs = tuple(complex(v) for v in rng.normal(size=M) + 1j * rng.normal(size=M))
    F = RationalGerm(omega, coeffs)
    report = verify_recurrence(build_euler_operator(F), F, 200)
    assert report.count == 200
    assert report.passed(1e-9), report


def test_log_form_agrees_with_direct_form(example2, numerics):
    op = build_euler_operator(example2)
    direct = verify_recurrence(op, example2, 500, numerics)
    logged = verify_recurrence(op, example2, 500, numerics.with_overrides(log_form_threshold=100))
    assert direct.passed(1e-12)
    assert logged.passed(1e-12)


def test_poly_part_is_refused():
    with pytest.raises(PolyPartPresentError):
        build_euler_operator(RationalGerm(1.0, (1.0,), (2.0,)))


def test_characteristic_root_is_reported():
    """F = 1/(1-ζ) - 1/(1-ζ)^2 has F_0 = 0."""
    op = build_euler_operator(RationalGerm(1.0, (1.0, -1.0)))
    with pytest.raises(CharacteristicRootError) as excinfo:
        solve_ode_series(op, 10)
    assert excinfo.value.index == 0


def test_operator_validation():
    with pytest.raises(InvalidParametersError):
        EulerOperator((1.0, 0.0), 1.0)
    with pytest.raises(InvalidParametersError):
        EulerOperator((1.0,), 0.0)
