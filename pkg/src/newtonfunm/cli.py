"""Command line entry point: ``newtonfunm funm|experiment|impulse``.

Exit status: 0 on success, 1 on numerical failure (singular matrix,
exhausted instance generation, overflow), 2 on usage or input errors.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import jsonio
from .clustering import DEFAULT_DELTA, DEFAULT_GAMMA
from .errors import (DimensionMismatch, GenerationExhausted, NonFiniteResult, PartitionMismatch,
                     SingularMatrix)
from .experiments import ExperimentConfig, run_trials, write_stats_csv
from .impulse import (DEFAULT_DPS, format_response, impulse_response, numeric_response,
                      response_to_json, system_from_json)
from .jsonio import FormatError
from .linalg import mat_inverse
from .newton import FunmParams, funm
from .taylor_dd import Exp, Polynomial

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path, field):
    try:
        return jsonio.load(path)
    except OSError as exc:
        raise UsageError(f"{field}: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{field}: invalid JSON in {path}: {exc}") from None


def _parse_function(text):
    if text == "exp":
        return Exp()
    if text.startswith("poly:"):
        payload = text[len("poly:"):]
        if os.path.exists(payload):
            coeffs = _load_json(payload, "--function")
        else:
            try:
                coeffs = json.loads(payload)
            except json.JSONDecodeError:
                raise UsageError(f"--function: cannot parse coefficients {payload!r}") from None
        if not isinstance(coeffs, list) or not coeffs:
            raise UsageError("--function: poly coefficients must be a non-empty list")
        return Polynomial([jsonio.complex_from_json(c, f"--function[{i}]")
                           for i, c in enumerate(coeffs)])
    raise UsageError(f"--function: expected 'exp' or 'poly:<json>', got {text!r}")


def _factored_problem(obj):
    if not isinstance(obj, dict) or "T" not in obj or "Lambda" not in obj:
        raise FormatError("factored", "expected an object with T and Lambda")
    t = jsonio.matrix_from_json(obj["T"], "T")
    lam = obj["Lambda"]
    if isinstance(lam, dict):
        lam_m = jsonio.matrix_from_json(lam, "Lambda")
        if lam_m.shape[0] != lam_m.shape[1] or np.count_nonzero(lam_m - np.diag(np.diag(lam_m))):
            raise FormatError("Lambda", "must be a square diagonal matrix")
        mu = np.diag(lam_m)
    else:
        mu = np.array(jsonio.spectrum_from_json(lam, "Lambda"))
    if t.shape != (len(mu), len(mu)):
        raise FormatError("T", f"shape {t.shape} does not match {len(mu)} eigenvalues")
    a = mat_inverse(t) @ (mu[:, None] * t)
    return a, list(mu)


def cmd_funm(args):
    if args.factored:
        if args.matrix or args.spectrum:
            raise UsageError("--factored excludes --matrix/--spectrum")
        a, mu = _factored_problem(_load_json(args.factored, "--factored"))
    else:
        if not args.matrix:
            raise UsageError("--matrix is required unless --factored is given")
        if not args.spectrum:
            raise UsageError("--spectrum is required unless --factored is given")
        a = jsonio.matrix_from_json(_load_json(args.matrix, "--matrix"), "matrix")
        mu = jsonio.spectrum_from_json(_load_json(args.spectrum, "--spectrum"), "spectrum")
        if a.shape != (len(mu), len(mu)):
            raise UsageError(f"spectrum: {len(mu)} eigenvalues for a {a.shape} matrix")
    f = _parse_function(args.function)
    result = funm(a, mu, f, FunmParams(delta=args.delta, gamma=args.gamma))
    if not np.all(np.isfinite(result)):
        raise NonFiniteResult("p(A) has non-finite entries")
    payload = jsonio.matrix_to_json(result)
    if args.out:
        jsonio.dump(payload, args.out)
    else:
        json.dump(payload, sys.stdout)
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_experiment(args):
    config = ExperimentConfig(n=args.n, K=args.K, gamma=args.gamma, delta=args.delta,
                              eta=args.eta, trials=args.trials, seed=args.seed)
    row = run_trials(config, workers=args.workers)
    if args.out:
        write_stats_csv(row, args.out)
    else:
        print(",".join(str(x) for x in row.csv_row()))
    print(f"# median_kappa={row.median_kappa:.6g} median_relerr={row.median_rel_error:.6g}"
          " (not part of the CSV row)", file=sys.stderr)
    return EXIT_OK


def cmd_impulse(args):
    system = system_from_json(_load_json(args.system, "--system"))
    params = FunmParams(delta=args.delta, gamma=args.gamma)
    resp = impulse_response(system, params, dps=args.dps or None)
    if args.out == "json":
        json.dump(response_to_json(resp), sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        print(f"y(t) = {format_response(resp, args.precision)}")
    if args.eval_at:
        print("t\tsymbolic\tnumeric\trel_diff")
        for t in args.eval_at:
            s = resp(t)
            num = numeric_response(system, t, params)
            rel = abs(s - num) / abs(num) if num != 0 else abs(s - num)
            print(f"{t:g}\t{s:.16g}\t{num:.16g}\t{rel:.3e}")
    return EXIT_OK


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="newtonfunm",
        description="Functions of matrices with clustered eigenvalues via Newton interpolation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cluster_flags(p):
        p.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                       help="cluster separation: eigenvalues closer than this chain into one "
                            "cluster (default %(default)s)")
        p.add_argument("--gamma", type=int, default=DEFAULT_GAMMA,
                       help="extra Taylor degree per cluster, >= -1 (default %(default)s)")

    p = sub.add_parser("funm", help="evaluate f(A) given A and its eigenvalues")
    p.add_argument("--matrix", help="matrix JSON file")
    p.add_argument("--spectrum", help="eigenvalue list JSON file")
    p.add_argument("--factored", help="JSON file with T and Lambda; A = T^-1 Lambda T")
    p.add_argument("--function", default="exp",
                   help="'exp' or 'poly:<json list of coefficients, ascending>' "
                        "(inline JSON or a file path; default exp)")
    add_cluster_flags(p)
    p.add_argument("--out", help="output JSON file (default stdout)")
    p.set_defaults(handler=cmd_funm)

    p = sub.add_parser("experiment", help="randomized accuracy study for exp(A)")
    p.add_argument("--n", type=int, required=True, help="matrix order")
    p.add_argument("--K", type=int, required=True, help="largest cluster size")
    add_cluster_flags(p)
    p.add_argument("--eta", type=float, default=0.001,
                   help="half-width of the box around each cluster center (default %(default)s)")
    p.add_argument("--trials", type=_nonneg_int, default=1000,
                   help="number of random instances (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="master RNG seed (default %(default)s)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--out", help="CSV file to create or append to (default stdout)")
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("impulse", help="symbolic impulse response <d, exp(At) b>")
    p.add_argument("--system", required=True, help="JSON file with A, b, d, spectrum")
    add_cluster_flags(p)
    p.add_argument("--eval-at", type=float, nargs="+", metavar="T",
                   help="also print symbolic and numeric values at these times")
    p.add_argument("--out", choices=("text", "json"), default="text",
                   help="output format (default %(default)s)")
    p.add_argument("--precision", type=int, default=6,
                   help="significant digits in the text formula (default %(default)s)")
    p.add_argument("--dps", type=int, default=DEFAULT_DPS,
                   help="working decimal digits for the weights, 0 for double "
                        "(default %(default)s)")
    p.set_defaults(handler=cmd_impulse)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (UsageError, FormatError, DimensionMismatch, PartitionMismatch, ValueError) as exc:
        print(f"newtonfunm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularMatrix, GenerationExhausted, NonFiniteResult, ArithmeticError) as exc:
        print(f"newtonfunm {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
