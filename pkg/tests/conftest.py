import numpy as np
import pytest

from msdiff import MixtureSpec, build_grid, derive_coefficients, scenario_catalog


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture(scope="session")
def uphill_scenario():
    return scenario_catalog("uphill-semidegenerate")


@pytest.fixture(scope="session")
def duncan_scenario():
    return scenario_catalog("duncan-toor-asymptotic")


@pytest.fixture(scope="session")
def semi_spec():
    return MixtureSpec(d12=0.833, d13=0.833, d23=0.168)


@pytest.fixture(scope="session")
def duncan_spec():
    return MixtureSpec(d12=0.0833, d13=0.680, d23=0.168)


@pytest.fixture(scope="session")
def fickian_spec():
    # Equal binary diffusivities make alpha = beta = 0 exactly.
    return MixtureSpec(d12=0.5, d13=0.5, d23=0.5)


def random_simplex(rng, n):
    """Uniform points of the admissible composition triangle."""
    u = rng.uniform(0.0, 1.0, size=(n, 2))
    flip = u.sum(axis=1) > 1.0
    u[flip] = 1.0 - u[flip][:, ::-1]
    return u


def coeffs_for(spec):
    return derive_coefficients(spec)


@pytest.fixture(scope="session")
def grid16():
    return build_grid(16)
