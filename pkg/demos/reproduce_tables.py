"""Rebuild the per-order energy/norm/residual tables on both backends.

Prints the four table blocks (well and oscillator, defocusing and focusing)
and then re-checks a handful of frozen reference cells, one PASS/FAIL line
each.

Run:

  python demos/reproduce_tables.py
"""
from __future__ import annotations

import time

from gpseries import hermite_spectrum, partial_sums, run_series, well_spectrum
from gpseries.cli import fmt_resid, sig10

FAILURES = 0


def check(label, ok):
    global FAILURES
    print(f"  [{'PASS' if ok else 'FAIL'}] {label}")
    if not ok:
        FAILURES += 1


def table_block(state, backend, nu_values, N_max=6):
    print(f"\n== {backend}: nu in {nu_values} ==")
    print(f"{'N':>2} " + "".join(
        f"{'E_N':>14} {'|psi_N|':>13} {'|r_N|':>10}" for _ in nu_values))
    rows = {}
    for N in range(N_max + 1):
        cells = []
        for nu in nu_values:
            sol = partial_sums(state, nu, N)
            rows[(nu, N)] = sol
            cells.append(f"{sig10(sol.E_N):>14} {sig10(sol.psi_norm):>13} "
                         f"{fmt_resid(sol.residual_norm):>10}")
        print(f"{N:>2} " + "".join(cells))
    return rows


def main():
    t0 = time.perf_counter()
    well = run_series(well_spectrum(60), 6)
    print(f"well series through order 6: {time.perf_counter() - t0:.3f} s")
    w_plus = table_block(well, "well", (0.1, 1.0))
    w_minus = table_block(well, "well", (-0.1, -1.0))

    t0 = time.perf_counter()
    osc = run_series(hermite_spectrum(60, L=16.0, nodes=2048), 6)
    print(f"\noscillator series through order 6: {time.perf_counter() - t0:.3f} s")
    o_plus = table_block(osc, "oscillator", (0.1, 1.0))
    o_minus = table_block(osc, "oscillator", (-0.1, -1.0))

    print("\nfrozen-cell spot checks:")
    check("well  E_6(0.1)  = 0.273780",
          f"{float(w_plus[(0.1, 6)].E_N):.6f}" == "0.273780")
    check("well  |psi_6|(0.1) = 1.000007730",
          abs(float(w_plus[(0.1, 6)].psi_norm) - 1.000007730) < 1e-9)
    check("well  |r_6|(0.1) prints 0.24e-12",
          fmt_resid(w_plus[(0.1, 6)].residual_norm) == "0.24e-12")
    check("well  E_6(-1)  = -0.000537",
          f"{float(w_minus[(-1.0, 6)].E_N):.6f}" == "-0.000537")
    check("osc   E_6(0.1) = 1.039730361 (to 1e-9)",
          abs(float(o_plus[(0.1, 6)].E_N) - 1.039730361) < 1e-9)
    check("osc   E_6(-1)  = 0.5826550168 (to 1e-9)",
          abs(float(o_minus[(-1.0, 6)].E_N) - 0.5826550168) < 1e-9)
    check("residuals fall ~2 orders per N on the well at nu=0.1",
          all(float(w_plus[(0.1, N + 1)].residual_norm)
              < 0.05 * float(w_plus[(0.1, N)].residual_norm)
              for N in range(6)))

    print(f"\n{FAILURES} failure(s)")
    raise SystemExit(1 if FAILURES else 0)


if __name__ == "__main__":
    main()
