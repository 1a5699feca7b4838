"""Command-line interface.

Subcommands: solve, sweep, spectra, cmax, figure, validate.  Exit codes:
0 success, 1 solver failure, 2 configuration/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from ._version import __version__
from .config import ConfigError, RunConfig, explain_config, parse_config
from .csvio import (
    SPECTRA_HEADER,
    cmax_meta,
    format_float,
    spectra_meta,
    write_cmax_csv,
    write_spectra_csv,
    write_sweep_csv,
)
from .liouvillian import (
    DegenerateKernelError,
    DimensionLimitError,
    NonConvergentError,
    StepSizeTooLargeError,
)
from .observables import VacuumStateError, dressed_spectrum_numeric
from .presets import FIGURES, run_figure, spectra_table
from .sweeps import DIRECTION_THETA, cmax_scan, run_sweep, solve_point

_SOLVER_ERRORS = (
    DimensionLimitError,
    DegenerateKernelError,
    NonConvergentError,
    StepSizeTooLargeError,
    VacuumStateError,
)


def _load_config(args) -> RunConfig:
    text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
    overrides = []
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        key = key.strip()
        section, _, name = key.rpartition(".")
        overrides.append((section or "system", name, value.strip()))
    if getattr(args, "explain", False):
        print(explain_config(text, overrides))
    return parse_config(text, overrides)


def _cmd_solve(args) -> int:
    config = _load_config(args)
    records = []
    directions = (
        ("forward", "backward") if args.direction == "both" else (args.direction,)
    )
    for direction in directions:
        params = config.system.with_updates(theta=DIRECTION_THETA[direction])
        record, ss = solve_point(params, config.cavity)
        payload = asdict(record)
        payload["residual"] = ss.residual
        records.append(payload)
    print(json.dumps(records if len(records) > 1 else records[0], indent=2))
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    if config.sweep is None:
        raise ConfigError("the config has no [sweep] section")
    out = args.out or config.output
    if not out:
        raise ConfigError("no output path: set [output] path or pass --out")
    threads = args.threads if args.threads else config.solver.threads
    result = run_sweep(config.sweep, max_workers=threads)
    write_sweep_csv(result, out)
    print(f"wrote {out} ({len(result.records)} grid points)")
    return 0


def _cmd_spectra(args) -> int:
    config = _load_config(args)
    base = config.system
    theta = DIRECTION_THETA.get(args.theta)
    if theta is None:
        theta = float(args.theta)
    rows = spectra_table(
        base, [args.gamma], thetas=(theta,), n_values=tuple(range(1, args.n + 1))
    )
    lines = [SPECTRA_HEADER]
    for r in rows:
        sign = -1.0 if r.branch == "-" else 1.0
        lines.append(
            ",".join(
                format_float(x)
                for x in (r.gamma_diss, r.theta, float(r.n), sign, r.re, r.im)
            )
        )
    print("\n".join(lines))
    if args.hermitian:
        from .observables import hermitian_spectrum

        print("# closed-ladder levels (n, minus, plus):")
        for n in range(1, args.n + 1):
            lo, hi = hermitian_spectrum(base, n)
            print(f"# n={n}: {lo:.12g}, {hi:.12g}")
    if args.numeric:
        params = base.with_gamma_diss(args.gamma).with_updates(theta=theta)
        for ev in dressed_spectrum_numeric(params, args.n):
            print(f"# numeric n={ev.n} branch={ev.branch}: "
                  f"{ev.value.real:.12g} {ev.value.imag:+.12g}i")
    if args.out:
        write_spectra_csv(rows, spectra_meta({"gamma": args.gamma, "theta": theta}), args.out)
    return 0


def _parse_gammas(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _cmd_cmax(args) -> int:
    config = _load_config(args)
    window = tuple(float(x) for x in args.window.split(","))
    if len(window) != 2:
        raise ConfigError("--window expects 'lo,hi'")
    rows = cmax_scan(
        config.system,
        _parse_gammas(args.gammas),
        delta_window=window,
        coarse_count=args.coarse,
        refine_tol=args.tol,
        max_workers=args.threads,
    )
    print("gamma_diss,c_max,delta_max,g2_forward,g2_backward")
    for row in rows:
        print(
            f"{row.gamma_diss:g},{row.c_max:.6f},{row.delta_max:.4f},"
            f"{row.g2_forward:.6f},{row.g2_backward:.6f}"
        )
    if args.out:
        write_cmax_csv(rows, cmax_meta(), args.out)
    return 0


def _cmd_figure(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    gammas = _parse_gammas(args.gammas) if args.gammas else None
    outputs = run_figure(args.name, fast=args.fast, max_workers=args.threads,
                         gammas=gammas)
    for stem, payload in outputs:
        path = out_dir / f"{stem}.csv"
        if stem == "fig3b":
            write_cmax_csv(payload, cmax_meta({"preset": "fig3b"}), path)
        elif stem == "fig4_spectra":
            write_spectra_csv(payload, spectra_meta({"preset": "fig4_spectra"}), path)
        else:
            write_sweep_csv(payload, path)
        print(f"wrote {path}")
    return 0


def _cmd_validate(args) -> int:
    from .validate import run_all_checks

    results = run_all_checks()
    width = max(len(name) for name, _, _ in results)
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        failed += 0 if ok else 1
        print(f"{name:<{width}}  {status}  {detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magblock",
        description="Nonreciprocal magnon-blockade steady-state simulator",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_options(p):
        p.add_argument("--config", help="config file path")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (section.key=value)")
        p.add_argument("--explain", action="store_true",
                       help="print the config resolution trace")

    p = sub.add_parser("solve", help="one steady-state point, JSON output")
    add_config_options(p)
    p.add_argument("--direction", choices=("forward", "backward", "both"),
                   default="both")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("sweep", help="run a configured sweep to CSV")
    add_config_options(p)
    p.add_argument("--out", help="output CSV (overrides [output] path)")
    p.add_argument("--threads", type=int)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("spectra", help="dressed-level tables")
    add_config_options(p)
    p.add_argument("--n", type=int, default=2, help="highest excitation number")
    p.add_argument("--gamma", type=float, default=5.0, help="dissipative coupling")
    p.add_argument("--theta", default="0", help="port phase (radians or forward/backward)")
    p.add_argument("--numeric", action="store_true",
                   help="also print the block-diagonalization values")
    p.add_argument("--hermitian", action="store_true",
                   help="also print the closed-ladder (lossless) levels")
    p.add_argument("--out", help="write the table as CSV")
    p.set_defaults(fn=_cmd_spectra)

    p = sub.add_parser("cmax", help="maximized contrast versus coupling")
    add_config_options(p)
    p.add_argument("--gammas", default="1,2,3,4,5,6,7,8,9,10")
    p.add_argument("--window", default="-20,20")
    p.add_argument("--coarse", type=int, default=161)
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="write the scan as CSV")
    p.set_defaults(fn=_cmd_cmax)

    p = sub.add_parser("figure", help="run a figure preset to CSV files")
    p.add_argument("name", choices=FIGURES)
    p.add_argument("--out-dir", default="out")
    p.add_argument("--fast", action="store_true", help="coarse grids, same structure")
    p.add_argument("--threads", type=int)
    p.add_argument("--gammas", help="restrict the coupling grid (figure 3b)")
    p.set_defaults(fn=_cmd_figure)

    p = sub.add_parser("validate", help="run the built-in invariant suite")
    p.set_defaults(fn=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except _SOLVER_ERRORS as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
