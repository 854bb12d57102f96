"""Pytest configuration and common fixtures."""

import os

import numpy as np
import pytest
from dotenv import load_dotenv

from hadamard_inverse import DEFAULT_CONFIG, NumericsConfig, RationalGerm

# Load environment variables from .env file
load_dotenv()

# Seed for randomised tests - override via: export HADAMARD_TEST_SEED=1234
# Or create a .env file with: HADAMARD_TEST_SEED=1234
TEST_SEED = int(os.getenv("HADAMARD_TEST_SEED", "20240607"))


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator (fresh per test).

    Returns:
        numpy Generator seeded from HADAMARD_TEST_SEED
    """
    return np.random.default_rng(TEST_SEED)


@pytest.fixture
def numerics() -> NumericsConfig:
    """Default numerical thresholds."""
    return DEFAULT_CONFIG


@pytest.fixture
def example1() -> RationalGerm:
    """1/(1-ζ)^2, whose inverse is -log(1-ζ)/ζ."""
    return RationalGerm(1.0, (0.0, 1.0))


@pytest.fixture
def example2() -> RationalGerm:
    """1/(1-ζ)^2 + 2/(1-ζ)^3, coefficients (n+1)(n+3)."""
    return RationalGerm(1.0, (0.0, 1.0, 2.0))
