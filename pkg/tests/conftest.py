"""Shared fixtures.

The full-catalog verification runs are expensive (seconds each), so the
suites at 20/30/40 digits run once per session and are shared between
the unit tests and the acceptance module.
"""

import time

import pytest

from quadcheck import RunConfig, builtin_catalog, make_context, run_verification, verify_catalog

# grid for the acceptance-level reciprocity check; superset of the
# default derivative-check grid
WIDE_MODULAR_GRID = ("1/4", "1/2", "1", "2", "exp(1)", "pi", "5")


@pytest.fixture(scope="session")
def ctx20():
    return make_context(20)


@pytest.fixture(scope="session")
def ctx30():
    return make_context(30)


@pytest.fixture(scope="session")
def ctx40():
    return make_context(40)


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def report30(catalog):
    """Full run at 30 digits with the wide reciprocity grid, timed."""
    config = RunConfig(digits=30, modular_grid=WIDE_MODULAR_GRID)
    start = time.perf_counter()
    report = run_verification(config, catalog)
    elapsed = time.perf_counter() - start
    return report, elapsed


@pytest.fixture(scope="session")
def records20(catalog, ctx20):
    return verify_catalog(catalog, ctx20)


@pytest.fixture(scope="session")
def records40(catalog, ctx40):
    start = time.perf_counter()
    records = verify_catalog(catalog, ctx40)
    return records, time.perf_counter() - start
