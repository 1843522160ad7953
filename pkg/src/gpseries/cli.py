"""Command-line driver: reproduce the tables, comparisons and bound reports.

Subcommands
-----------
table     per-order rows (N, E_N, ||psi_N||, ||r_N||) for each nu
compare   series energy vs the exact elliptic solution (well backend only)
coeffs    coefficient decay data (n, e_n, |e_n|, ||phi_n||_2, ||phi_n||_6)
bounds    rigorous-radius constant chain, lemma and sharp modes
appendix  scanned maxima of the index sums behind C1/C2

Output is CSV (default) or JSON; JSON always carries raw full-precision
values.  Configuration comes from defaults, then an optional JSON config
file (--config), then explicit flags, in increasing precedence.  Exit codes:
0 success, 1 numerical failure, 2 usage/config error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import bounds as bounds_mod
from . import elliptic
from .series import partial_sums, residual, run_series
from .spectral import hermite_spectrum, well_spectrum

MAX_ORDER = 12


@dataclass
class RunConfig:
    command: str
    backend: str = "well"
    nu_list: tuple = (0.1,)
    N_max: int = 6
    N2: int = 60
    L: float = 16.0
    nodes: int = 2048
    out: Optional[str] = None
    fmt: str = "csv"


def sig10(x) -> str:
    """10 significant digits (round-half-even, as the float formatter does)."""
    return f"{float(x):.10g}"


def fmt_resid(r) -> str:
    """Two significant digits in 0.XXe+-YY form, e.g. 2.4e-13 -> '0.24e-12'.

    The mantissa is kept in [0.10, 0.99]; when rounding pushes it to 1.00 it
    is renormalized to 0.10 with the exponent bumped.
    """
    r = float(r)
    if r == 0.0:
        return "0.00e+00"
    exp = math.floor(math.log10(abs(r))) + 1
    mant = r / 10.0 ** exp
    mant = float(f"{mant:.2f}")
    if abs(mant) >= 1.0:
        mant /= 10.0
        exp += 1
    return f"{mant:.2f}e{exp:+03d}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpseries",
        description="power-series and exact solutions of the cubic "
                    "stationary Schrodinger problem")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (flags override)")
    common.add_argument("--backend", choices=["well", "oscillator"])
    common.add_argument("--nu", help="comma-separated nu values")
    common.add_argument("--order", type=int, help=f"series order N (<= {MAX_ORDER})")
    common.add_argument("--n2", type=int, help="linear modes kept")
    common.add_argument("--L", type=float, help="oscillator box half-width")
    common.add_argument("--nodes", type=int, help="oscillator quadrature nodes")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], dest="fmt")
    for name, help_text in [
            ("table", "per-order energies, norms and residuals"),
            ("compare", "series vs exact elliptic solution (well only)"),
            ("coeffs", "coefficient decay data and empirical radius"),
            ("bounds", "rigorous convergence-radius constant chain"),
            ("appendix", "index-sum scan maxima and bound checks")]:
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(file_cfg) - {"backend", "nu", "order", "n2", "L",
                                   "nodes", "out", "format"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key, attr in [("backend", "backend"), ("nu", "nu"),
                      ("order", "order"), ("n2", "n2"), ("L", "L"),
                      ("nodes", "nodes"), ("out", "out"), ("format", "fmt")]:
        val = getattr(args, attr)
        if val is not None:
            cfg[key] = val

    backend = cfg.get("backend", "well")
    if backend not in ("well", "oscillator"):
        raise ValueError(f"unknown backend {backend!r}")
    nu_raw = cfg.get("nu", "0.1")
    if isinstance(nu_raw, str):
        nu_list = tuple(float(tok) for tok in nu_raw.split(",") if tok.strip())
    elif isinstance(nu_raw, (list, tuple)):
        nu_list = tuple(float(x) for x in nu_raw)
    else:
        nu_list = (float(nu_raw),)
    if not nu_list:
        raise ValueError("empty nu list")
    default_order = 12 if args.command == "coeffs" else 6
    order = int(cfg.get("order", default_order))
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}, got {order}")
    if args.command == "compare":
        if backend != "well":
            raise ValueError("compare requires backend = well (exact "
                             "solutions exist only there)")
        if any(nu == 0.0 for nu in nu_list):
            raise ValueError("compare requires nonzero nu")
    return RunConfig(
        command=args.command, backend=backend, nu_list=nu_list, N_max=order,
        N2=int(cfg.get("n2", 60)), L=float(cfg.get("L", 16.0)),
        nodes=int(cfg.get("nodes", 2048)), out=cfg.get("out"),
        fmt=cfg.get("format", "csv"))


def _build_state(config: RunConfig, order: int):
    if config.backend == "well":
        spec = well_spectrum(config.N2)
    else:
        spec = hermite_spectrum(config.N2, L=config.L, nodes=config.nodes)
    return run_series(spec, order)


def _csv_text(header, rows, trailing_comments=()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    for line in trailing_comments:
        text += f"# {line}\n"
    return text


def cmd_table(config: RunConfig) -> str:
    state = _build_state(config, config.N_max)
    rows = []
    for nu in config.nu_list:
        for N in range(config.N_max + 1):
            sol = partial_sums(state, nu, N)
            rows.append({"backend": config.backend, "nu": nu, "N": N,
                         "E_N": float(sol.E_N),
                         "psi_norm": float(sol.psi_norm),
                         "residual_norm": float(sol.residual_norm)})
    if config.fmt == "json":
        for row in rows:
            row["residual_str"] = fmt_resid(row["residual_norm"])
        return json.dumps({"command": "table", "rows": rows}, indent=2) + "\n"
    return _csv_text(
        ["backend", "nu", "N", "E_N", "psi_norm", "residual_norm"],
        [[r["backend"], f"{r['nu']:g}", r["N"], sig10(r["E_N"]),
          sig10(r["psi_norm"]), fmt_resid(r["residual_norm"])] for r in rows])


def cmd_compare(config: RunConfig) -> str:
    state = _build_state(config, config.N_max)
    rows = []
    for nu in config.nu_list:
        sol = partial_sums(state, nu, config.N_max)
        norm2 = float(sol.psi_norm) ** 2
        if nu > 0:
            exact = elliptic.solve_defocusing(nu, norm2, m=1)
            modulus = exact.k
        else:
            exact = elliptic.solve_focusing(nu, norm2, m=1)
            modulus = exact.kappa
        check = elliptic.reconstruct_and_check(exact, nu)
        rows.append({"nu": nu, "branch": exact.branch, "modulus": modulus,
                     "E_exact": exact.E, "E_series": float(sol.E_N),
                     "abs_diff": abs(exact.E - float(sol.E_N)),
                     "ode_residual": check.residual_norm,
                     "norm2_check": check.norm2_check})
    if config.fmt == "json":
        return json.dumps({"command": "compare", "N": config.N_max,
                           "rows": rows}, indent=2) + "\n"
    return _csv_text(
        ["nu", "branch", "modulus", "E_exact", "E_series", "abs_diff"],
        [[f"{r['nu']:g}", r["branch"], f"{r['modulus']:.10f}",
          sig10(r["E_exact"]), sig10(r["E_series"]),
          fmt_resid(r["abs_diff"])] for r in rows])


def cmd_coeffs(config: RunConfig) -> str:
    state = _build_state(config, config.N_max)
    rows = [{"n": n, "e_n": float(state.e[n]), "abs_e_n": float(state.b[n]),
             "phi_norm2": float(state.c[n]), "phi_norm6": float(state.d[n])}
            for n in range(config.N_max + 1)]
    summary = {}
    try:
        est = bounds_mod.empirical_radius(state.e)
        summary = {"growth_constant": est.growth_constant,
                   "radius": est.radius,
                   "root_estimate": est.root_estimate}
        if config.backend == "well":
            summary["radius_ge_2pi"] = bool(est.radius >= 2.0 * math.pi)
    except ValueError as exc:
        summary = {"error": str(exc)}
    if config.fmt == "json":
        return json.dumps({"command": "coeffs", "rows": rows,
                           "empirical": summary}, indent=2) + "\n"
    comment = "empirical: " + ", ".join(f"{k}={v}" for k, v in summary.items())
    return _csv_text(
        ["n", "e_n", "abs_e_n", "phi_norm2", "phi_norm6"],
        [[r["n"], repr(r["e_n"]), repr(r["abs_e_n"]), repr(r["phi_norm2"]),
          repr(r["phi_norm6"])] for r in rows],
        trailing_comments=[comment])


def cmd_bounds(config: RunConfig) -> str:
    state = _build_state(config, config.N_max)
    out = {"command": "bounds", "backend": config.backend}
    for mode in ("lemma", "sharp"):
        report = bounds_mod.constant_chain(state, C1_mode=mode, C2_mode=mode)
        out[mode] = asdict(report)
    return json.dumps(out, indent=2) + "\n"


def cmd_appendix(config: RunConfig) -> str:
    J_argmax, J_max = bounds_mod.appendix_J_scan(10 ** 4)
    I_argmax, I_max = bounds_mod.triple_sum_I_scan(10 ** 3)
    f_ok = bounds_mod.appendix_bound_ok(10 ** 4)
    out = {"command": "appendix", "J_max": J_max, "J_argmax": J_argmax,
           "I_max": I_max, "I_argmax": I_argmax, "f_bound_ok": f_ok}
    return json.dumps(out, indent=2) + "\n"


_DISPATCH = {"table": cmd_table, "compare": cmd_compare, "coeffs": cmd_coeffs,
             "bounds": cmd_bounds, "appendix": cmd_appendix}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"gpseries: config error: {exc}", file=sys.stderr)
        return 2
    try:
        text = _DISPATCH[config.command](config)
    except (ValueError, RuntimeError, FloatingPointError,
            ZeroDivisionError) as exc:
        print(f"gpseries: numerical failure: {exc}", file=sys.stderr)
        return 1
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
