import sys

import pytest

from gpseries import hermite_spectrum, run_series, well_spectrum

import rational_well


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance PASS/FAIL lines after the test summary."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", []) if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def well_state():
    """Well-backend series through order 10 (covers all table orders)."""
    return run_series(well_spectrum(60), 10)


@pytest.fixture(scope="session")
def osc_state():
    """Oscillator-backend series through order 10."""
    return run_series(hermite_spectrum(60, L=16.0, nodes=2048), 10)


@pytest.fixture(scope="session")
def exact_well():
    """Exact-rational reduced series data (P, E, V, U, W) through order 10."""
    return rational_well.run_series(10)
