"""Command-line front end: sweep, wavefunction and validate subcommands.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
failure. All physical defaults are Δ=50, N=200, four levels, sweep
0..1.5 g_c; everything is overridable by flags.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import NumericalError, UsageError
from .observables import wavefunction_slice
from .operators import build_hamiltonian_direct, build_pattern_operators
from .output import (
    write_manifest,
    write_patterns_csv,
    write_sweep_csv,
    write_wavefunction_csv,
)
from .patterns import ModelParams, coupling_matrix, critical_coupling, diagonalize_pattern
from .spectral import eigensolve, eigensolve_parity
from .sweep import SweepConfig, build_primitives_cached, run_sweep
from .validate import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabipat",
        description="Pattern decomposition of the quantum Rabi model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="coupling sweep -> sweep.csv, patterns.csv, manifest.json")
    sweep.add_argument("--delta", type=float, default=50.0, help="two-level splitting (default 50)")
    sweep.add_argument("--nmax", type=int, default=200, help="Fock truncation N (default 200)")
    sweep.add_argument("--levels", type=int, default=4, help="number of tracked levels (default 4)")
    sweep.add_argument("--gmin", type=float, default=0.0, help="sweep start in g/g_c (default 0)")
    sweep.add_argument("--gmax", type=float, default=1.5, help="sweep end in g/g_c (default 1.5)")
    sweep.add_argument("--points", type=int, default=61, help="grid size (default 61)")
    sweep.add_argument("--no-fd", action="store_true", help="skip the d2E finite-difference pass")
    sweep.add_argument("--parity", action="store_true", help="solve in the two parity blocks")
    sweep.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    sweep.add_argument("--out-dir", type=Path, default=Path("."), help="output directory")
    sweep.set_defaults(func=cmd_sweep)

    wave = sub.add_parser("wavefunction", help="Fock-space slices -> wavefunction.csv")
    wave.add_argument("--delta", type=float, default=50.0)
    wave.add_argument("--nmax", type=int, default=200)
    wave.add_argument("--at", type=float, action="append", default=None,
                      help="g/g_c value (repeatable; default 0.5 1.0 1.5)")
    wave.add_argument("--levels", type=str, default="0,1",
                      help="comma-separated level indices (default 0,1)")
    wave.add_argument("--parity", action="store_true")
    wave.add_argument("--out-dir", type=Path, default=Path("."))
    wave.set_defaults(func=cmd_wavefunction)

    val = sub.add_parser("validate", help="run the invariant suite, exit 0 iff all pass")
    val.add_argument("--nmax", type=int, default=200)
    val.add_argument("--nmax-check", type=int, default=300,
                     help="larger truncation for the convergence check (default 300)")
    val.add_argument("--inject-delta-mismatch", type=float, default=0.0,
                     help="self-test hook: offset the pattern-side delta to force a dual-build failure")
    val.set_defaults(func=cmd_validate)
    return parser


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def cmd_sweep(args: argparse.Namespace) -> int:
    _check(args.points >= 3, f"--points must be >= 3 (derivative stencil), got {args.points}")
    _check(args.delta >= 0, f"--delta must be >= 0, got {args.delta}")
    _check(args.nmax >= 1, f"--nmax must be >= 1, got {args.nmax}")
    _check(1 <= args.levels <= 2 * (args.nmax + 1),
           f"--levels must be in 1..{2 * (args.nmax + 1)}, got {args.levels}")
    _check(0 <= args.gmin < args.gmax, f"need 0 <= gmin < gmax, got [{args.gmin}, {args.gmax}]")
    _check(args.threads >= 1, f"--threads must be >= 1, got {args.threads}")
    config = SweepConfig(
        delta=args.delta,
        n_max=args.nmax,
        k_levels=args.levels,
        g_over_gc_min=args.gmin,
        g_over_gc_max=args.gmax,
        n_points=args.points,
        fd_enabled=not args.no_fd,
        parity=args.parity,
        threads=args.threads,
    )
    records = run_sweep(config)
    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(records, out_dir / "sweep.csv")
    write_patterns_csv(records, out_dir / "patterns.csv")
    config_dict = {
        "delta": config.delta, "n_max": config.n_max, "k_levels": config.k_levels,
        "g_over_gc_min": config.g_over_gc_min, "g_over_gc_max": config.g_over_gc_max,
        "n_points": config.n_points, "fd_enabled": config.fd_enabled,
        "parity": config.parity, "threads": config.threads,
    }
    write_manifest(out_dir, "sweep", config_dict, config.n_max,
                   ["sweep.csv", "patterns.csv"])
    print(f"wrote {out_dir / 'sweep.csv'}, {out_dir / 'patterns.csv'}, {out_dir / 'manifest.json'}")
    return EXIT_OK


def _parse_levels(spec: str) -> list[int]:
    try:
        levels = [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"--levels must be comma-separated integers, got {spec!r}") from exc
    _check(len(levels) > 0, "--levels must name at least one level")
    _check(all(lv >= 0 for lv in levels), f"level indices must be >= 0, got {levels}")
    return levels


def cmd_wavefunction(args: argparse.Namespace) -> int:
    _check(args.delta >= 0, f"--delta must be >= 0, got {args.delta}")
    _check(args.nmax >= 1, f"--nmax must be >= 1, got {args.nmax}")
    ratios = args.at if args.at is not None else [0.5, 1.0, 1.5]
    _check(all(r >= 0 for r in ratios), f"--at values must be >= 0, got {ratios}")
    levels = _parse_levels(args.levels)
    k = max(levels) + 1
    _check(k <= 2 * (args.nmax + 1),
           f"level {max(levels)} outside the spectrum of a dim-{2 * (args.nmax + 1)} problem")

    gc = critical_coupling(args.delta)
    primitives = build_primitives_cached(args.nmax)
    slices = []
    for ratio in ratios:
        g = ratio * gc
        params = ModelParams(args.delta, g, args.nmax, k)
        basis = diagonalize_pattern(coupling_matrix(params, g))
        if args.parity:
            solution = eigensolve_parity(params, primitives, k)
        else:
            solution = eigensolve(build_hamiltonian_direct(params, primitives), k)
        ops = build_pattern_operators(basis, primitives)
        for level in levels:
            slices.append(
                wavefunction_slice(
                    solution.states[:, level], float(solution.energies[level]),
                    basis, ops, level, g,
                )
            )
    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    write_wavefunction_csv(slices, gc, out_dir / "wavefunction.csv")
    config_dict = {
        "delta": args.delta, "n_max": args.nmax,
        "at_g_over_gc": list(ratios), "levels": levels, "parity": args.parity,
    }
    write_manifest(out_dir, "wavefunction", config_dict, args.nmax, ["wavefunction.csv"])
    print(f"wrote {out_dir / 'wavefunction.csv'}, {out_dir / 'manifest.json'}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    _check(args.nmax >= 1, f"--nmax must be >= 1, got {args.nmax}")
    _check(args.nmax_check > args.nmax,
           f"--nmax-check must exceed --nmax, got {args.nmax_check} <= {args.nmax}")
    results = run_validation(
        n_max=args.nmax,
        n_max_check=args.nmax_check,
        inject_delta_mismatch=args.inject_delta_mismatch,
    )
    all_passed = True
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        all_passed &= result.passed
        print(f"{status} {result.name}: {result.detail}")
    return EXIT_OK if all_passed else EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints its own diagnostics; exits 2 on bad usage
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
