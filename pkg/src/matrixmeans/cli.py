"""Command-line interface.

Exit status: 0 success, 2 usage or parse error, 3 violated mathematical
precondition, 4 property violation, 1 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import propcheck, symcore
from .averaging import (
    arithmetic_average,
    ensemble_to_dict,
    harmonic_average,
    load_ensemble,
    mu_sweep,
    random_ensemble,
    resolvent_average,
)
from .errors import InputError, MatrixMeansError, PreconditionError
from .proxavg import REP1, ProxEnsemble, prox_average_closed, prox_average_oracle
from .scalar_means import geometric_mean2, means_report
from .symcore import DEFAULT_TOL, Tolerances

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VIOLATION = 0, 1, 2, 3, 4
SEED_ENV = "MATRIXMEANS_SEED"


def _g(x: float) -> str:
    return f"{x:.17g}"


def _floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"malformed number list {text!r}") from exc


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"{SEED_ENV}={env!r} is not an integer") from exc


def _header(tol: Tolerances, stream) -> None:
    print(f"# tol_eq={_g(tol.eps_eq)} tol_psd={_g(tol.eps_psd)}", file=stream)


def _print_stats(m) -> None:
    w = symcore.eigendecompose(m).eigenvalues
    print(f"lambda_min={_g(w[0])}")
    print(f"lambda_max={_g(w[-1])}")
    print(f"frobenius={_g(symcore.frob(m))}")


def cmd_avg(args, tol: Tolerances) -> int:
    ens, file_mu = load_ensemble(args.input, tol)
    if args.kind == "resolvent":
        mu = args.mu if args.mu is not None else (file_mu if file_mu is not None else 1.0)
        result = resolvent_average(ens, mu)
    elif args.kind == "harmonic":
        result = harmonic_average(ens)
    elif args.kind == "arithmetic":
        result = arithmetic_average(ens)
    else:
        if ens.n != 2:
            raise InputError(f"geometric2 needs exactly 2 matrices, got {ens.n}")
        result = geometric_mean2(*ens.matrices, tol=tol)
    _print_stats(result)
    if args.out:
        symcore.write_matrix(args.out, result)
    else:
        sys.stdout.write(symcore.format_matrix(result))
    return EXIT_OK


def cmd_sweep(args, tol: Tolerances) -> int:
    ens, _ = load_ensemble(args.input, tol)
    report = mu_sweep(ens, args.mu_lo, args.mu_hi, args.points)
    text = report.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not report.all_ok:
        print("Loewner chain violated along the mu grid", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_check(args, tol: Tolerances) -> int:
    names = None if args.suite == "all" else [args.suite]
    if names and names[0] not in propcheck.REGISTRY:
        raise InputError(f"unknown suite {args.suite!r}; choose 'all' or one of "
                         + ", ".join(propcheck.REGISTRY))
    cfg = propcheck.SuiteConfig(seed=_seed(args), trials=args.trials, dim_max=args.dim_max,
                                n_max=args.n_max, cond_max=args.cond_max, tol=tol)
    report = propcheck.run_suite(cfg, names)
    print(report.to_table())
    if args.out:
        Path(args.out).write_text(report.to_json())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_prox(args, tol: Tolerances) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {args.input}: {exc}") from exc
    pens = ProxEnsemble.from_dict(data, tol)
    if args.mu is not None:
        pens = pens.with_mu(args.mu)
    x = np.array(_floats(args.x))
    if x.size != pens.dim:
        raise InputError(f"--x has {x.size} entries, functions live in dimension {pens.dim}")
    closed = prox_average_closed(pens)
    value = closed(x)
    oracle = prox_average_oracle(pens, x, REP1)
    print("Q=")
    sys.stdout.write(symcore.format_matrix(closed.A))
    print("linear=" + ",".join(_g(v) for v in closed.b))
    print(f"constant={_g(closed.r)}")
    print(f"value={_g(value)}")
    print(f"oracle={_g(oracle)}")
    print(f"difference={_g(value - oracle)}")
    if args.out:
        Path(args.out).write_text(json.dumps(closed.to_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_scalar(args, tol: Tolerances) -> int:
    xs = _floats(args.xs)
    weights = _floats(args.weights) if args.weights else None
    if not xs or (weights is not None and len(weights) != len(xs)):
        raise InputError("--xs and --weights must be non-empty lists of equal length")
    rep = means_report(xs, weights, tol)
    h = "undef" if rep["H"] is None else _g(rep["H"])
    print(",".join([h, _g(rep["G"]), _g(rep["R"]), _g(rep["A"]), str(rep["ordering"])]))
    return EXIT_OK


def cmd_gen(args, tol: Tolerances) -> int:
    if args.dim < 1 or args.n < 1 or not args.cond >= 1:
        raise InputError("need --dim >= 1, --n >= 1 and --cond >= 1")
    ens = random_ensemble(_seed(args), args.dim, args.n, args.cond)
    text = json.dumps(ensemble_to_dict(ens, mu=1.0), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-eq", type=float, default=DEFAULT_TOL.eps_eq,
                        help="identity-residual tolerance (default %(default)g)")
    common.add_argument("--tol-psd", type=float, default=DEFAULT_TOL.eps_psd,
                        help="Loewner dead-band half-width (default %(default)g)")

    parser = argparse.ArgumentParser(prog="matrixmeans",
                                     description="Resolvent averages of PSD matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("avg", parents=[common], help="average an ensemble")
    p.add_argument("kind", choices=["resolvent", "harmonic", "arithmetic", "geometric2"])
    p.add_argument("--input", required=True, help="ensemble JSON file")
    p.add_argument("--mu", type=float, help="overrides the file's mu (default 1)")
    p.add_argument("--out", help="output matrix file (stdout if omitted)")
    p.set_defaults(func=cmd_avg)

    p = sub.add_parser("sweep", parents=[common], help="distances to the limits over a mu grid")
    p.add_argument("--input", required=True)
    p.add_argument("--mu-lo", type=float, default=1e-6)
    p.add_argument("--mu-hi", type=float, default=1e6)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--out", help="CSV file (stdout if omitted)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", parents=[common], help="run the randomized property suite")
    p.add_argument("suite", nargs="?", default="all", help="check name or 'all'")
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV}, then 0")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dim-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--cond-max", type=float, default=100.0)
    p.add_argument("--out", help="JSON report file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("prox", parents=[common], help="proximal average of linear-quadratic functions")
    p.add_argument("--input", required=True, help="prox-ensemble JSON file")
    p.add_argument("--x", required=True, help="comma-separated evaluation point")
    p.add_argument("--mu", type=float, help="overrides the file's mu")
    p.add_argument("--out", help="write the closed form as LinQuad JSON")
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("scalar", parents=[common], help="H,G,R,A means of a scalar tuple")
    p.add_argument("--xs", required=True, help="comma-separated nonnegative numbers")
    p.add_argument("--weights", help="comma-separated weights (uniform if omitted)")
    p.set_defaults(func=cmd_scalar)

    p = sub.add_parser("gen", parents=[common], help="write a random PD ensemble")
    p.add_argument("--seed", type=int)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cond", type=float, default=100.0)
    p.add_argument("--out", help="ensemble JSON file (stdout if omitted)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = Tolerances(DEFAULT_TOL.eps_spec, args.tol_psd, args.tol_eq)
        # keep stdout parseable when it carries a CSV or JSON payload
        streams_payload = args.command in ("sweep", "gen") and not args.out
        _header(tol, sys.stderr if streams_payload else sys.stdout)
        return args.func(args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MatrixMeansError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
