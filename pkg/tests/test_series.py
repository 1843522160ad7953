"""Order-by-order recursion checked against the exact-rational well oracle.

The package computes with long doubles; `rational_well` re-runs the same
recursion in `fractions.Fraction` arithmetic (completely independent code
path, closed cosine family).  Every retained quantity — e_n, phi_n, the
convolutions v_t / u_n and the pre-resolvent functions varphi_n — is compared
element-by-element through order 10.
"""
import math

import numpy as np
import pytest

from gpseries.series import (cancellation_check, next_order, partial_sums,
                             residual, run_series, series_init)
from gpseries.spectral import PI, hermite_spectrum, well_spectrum

import rational_well


def _ld(frac):
    """Fraction -> long double without an intermediate float64."""
    return np.longdouble(frac.numerator) / np.longdouble(frac.denominator)


def _assert_matches_reduced(coeffs, reduced, power, tol=1e-14):
    """Package coefficient vector == pi^{-power} * reduced (oracle) vector."""
    scale = PI ** (-np.longdouble(power))
    for k, frac in enumerate(reduced):
        want = _ld(frac) * scale
        got = coeffs[2 * k]
        if frac == 0:
            assert abs(float(got)) < 1e-22
        else:
            assert abs(float((got - want) / want)) < tol, (k, frac)
    # sine modes and cosine modes beyond the oracle support stay exactly zero
    assert not np.any(np.asarray(coeffs[1::2], dtype=float))
    assert not np.any(np.asarray(coeffs[2 * len(reduced)::2], dtype=float))


def test_energy_coefficients_exact(well_state, exact_well):
    _, E, _, _, _ = exact_well
    for n in range(11):
        want = _ld(E[n]) * PI ** (-np.longdouble(n))
        assert abs(float((well_state.e[n] - want) / want)) < 5e-15, n


def test_first_coefficients_closed_form(well_state):
    # e1 = 3/(4 pi); phi1 = -cos(3x/2)/(8 pi^{3/2}) i.e. coeffs[2] = -1/(8 pi)
    assert abs(float(well_state.e[1]) - 3 / (4 * math.pi)) < 1e-17
    assert abs(float(well_state.phi[1].coeffs[2]) + 1 / (8 * math.pi)) < 1e-18
    assert float(well_state.phi[1].coeffs[0]) == 0.0


def test_eigenfunction_coefficients_exact(well_state, exact_well):
    P, _, _, _, _ = exact_well
    for n in range(11):
        _assert_matches_reduced(well_state.phi[n].coeffs, P[n], n)


def test_convolutions_exact(well_state, exact_well):
    _, _, V, U, W = exact_well
    for t in range(10):
        _assert_matches_reduced(well_state.v[t].coeffs, V[t], t + 1)
    for n in range(1, 11):
        _assert_matches_reduced(well_state.varphi[n].coeffs, W[n], n)
        if n >= 2:
            _assert_matches_reduced(well_state.u[n].coeffs, U[n], n)


def test_u1_is_zero(well_state):
    assert float(well_state.u[1].norm2()) == 0.0


def test_orthogonality_invariant(well_state):
    for n in range(1, 11):
        assert float(well_state.varphi[n].coeffs[0]) == 0.0
        assert float(well_state.varphi[n].inner(well_state.spec.phi0)) == 0.0


def test_norm_ledger(well_state):
    spec = well_state.spec
    for n in range(11):
        assert float(well_state.b[n]) == abs(float(well_state.e[n]))
        assert abs(float(well_state.c[n] - well_state.phi[n].norm2())) == 0.0
    # resolvent gains at least the spectral gap
    for n in range(1, 11):
        bound = float(well_state.varphi[n].norm2() / spec.gap_Lambda)
        assert float(well_state.c[n]) <= bound + 1e-12


def test_oscillator_first_energy(osc_state):
    # <h0, h0^3> = 1/sqrt(2 pi)
    assert abs(float(osc_state.e[1]) - 1 / math.sqrt(2 * math.pi)) < 1e-15
    for n in range(1, 11):
        assert float(osc_state.varphi[n].coeffs[0]) == 0.0


def test_series_init_requires_normalized_ground_state():
    spec = well_spectrum(8)
    spec.phi0 = 1.5 * spec.phi0
    with pytest.raises(ValueError, match="not normalized"):
        series_init(spec)


def test_next_order_returns_new_state(well_state):
    s0 = series_init(well_state.spec)
    s1 = next_order(s0)
    assert s0.order == 0 and s1.order == 1
    assert len(s0.e) == 1  # untouched


# -- evaluation ---------------------------------------------------------------

def test_partial_sums_order_one(well_state):
    ps = partial_sums(well_state, 0.1, 1)
    want = 0.25 + 0.1 * 3 / (4 * math.pi)
    assert abs(float(ps.E_N) - want) < 1e-16
    assert f"{float(ps.E_N):.6f}" == "0.273873"


def test_partial_sums_nu_zero(well_state):
    ps = partial_sums(well_state, 0.0, 6)
    assert float(ps.E_N) == 0.25
    assert float(ps.psi_norm) == 1.0
    assert float(ps.residual_norm) == 0.0
    assert np.array_equal(np.asarray(ps.psi_N.coeffs, dtype=float),
                          np.asarray(well_state.phi[0].coeffs, dtype=float))


def test_partial_sums_against_rational_horner(well_state, exact_well):
    P, E, _, _, _ = exact_well
    for nu in (0.1, -0.1, 1.0, -1.0):
        for N in (3, 6, 10):
            ps = partial_sums(well_state, nu, N)
            # E via exact-rational Horner in nu/pi
            want_E = rational_well.horner_nu_over_pi(E[:N + 1], nu, math.pi)
            assert abs(float(ps.E_N) - want_E) < 5e-15 * max(1, abs(want_E))
            g = rational_well.psi_norm2_poly(P, N)
            want_norm = math.sqrt(
                rational_well.horner_nu_over_pi(g, nu, math.pi))
            assert abs(float(ps.psi_norm) - want_norm) < 5e-14


def test_order_guards(well_state):
    with pytest.raises(ValueError):
        partial_sums(well_state, 0.1, 11)
    with pytest.raises(ValueError):
        residual(well_state, 0.1, 11)
    with pytest.raises(ValueError):
        cancellation_check(well_state, 11, [0.1])


def test_residual_spot_value(well_state):
    # nu = 0.1, N = 6 lands around 2.4e-13 on the well
    r = float(residual(well_state, 0.1, 6))
    assert 1e-13 < r < 5e-13


def test_residual_decays_with_order(well_state):
    r = [float(residual(well_state, 0.1, N)) for N in range(7)]
    for a, b in zip(r, r[1:]):
        assert b < 0.05 * a


# -- cancellation check -------------------------------------------------------

@pytest.mark.parametrize("N,samples", [
    (0, [1e-3, 1e-2]),
    (2, [1e-3, 1e-2]),
    (4, [0.05, 0.1]),
])
def test_cancellation_tail_and_slope(well_state, N, samples):
    rep = cancellation_check(well_state, N, samples)
    assert max(rep.rel_mismatch) < 1e-9
    assert abs(rep.slope - (N + 1)) < 0.05
    for d, t in zip(rep.direct_norms, rep.tail_norms):
        assert d > 0 and t > 0


def test_cancellation_single_sample_slope_nan(well_state):
    rep = cancellation_check(well_state, 1, [0.05])
    assert math.isnan(rep.slope)
    assert rep.direct_norms[0] > 0


def test_cancellation_oscillator(osc_state):
    rep = cancellation_check(osc_state, 2, [1e-3, 1e-2])
    assert max(rep.rel_mismatch) < 1e-9
    assert abs(rep.slope - 3) < 0.05


# -- complex coupling ---------------------------------------------------------

def test_complex_nu_smoke(well_state):
    nu = 0.05 + 0.02j
    ps = partial_sums(well_state, nu, 6)
    assert ps.psi_N.is_complex
    assert abs(complex(ps.E_N).imag) > 0
    assert np.isfinite(float(ps.residual_norm))
    assert float(ps.residual_norm) > 0


def test_complex_nu_conjugate_symmetry(well_state):
    nu = 0.05 + 0.02j
    a = partial_sums(well_state, nu, 6)
    b = partial_sums(well_state, nu.conjugate(), 6)
    assert abs(complex(a.E_N) - complex(b.E_N).conjugate()) < 1e-18
    assert abs(float(a.residual_norm) - float(b.residual_norm)) < 1e-18


def test_real_nu_stays_real(well_state):
    ps = partial_sums(well_state, -1.0, 6)
    assert not ps.psi_N.is_complex
    assert isinstance(float(ps.E_N), float)
