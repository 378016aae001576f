"""Command-line front end: test, gen, nulltable, xcheck.

Exit codes are fixed for scripting: 0 success, 2 argument errors, 3 data
errors, 4 numeric-domain errors, 5 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .core import Method, Sample, Transform, load_csv, save_csv
from .datagen import (
    gen_heavy_tail_monotone,
    gen_independent_normal,
    gen_nonmonotone,
    gen_stochastic_volatility,
)
from .distcov import dcov2
from .ecf import QuadratureSpec, WeightSpec, _standardize_column, f93_statistic
from .errors import DataError, NumericDomainError, UnsupportedDimension
from .inference import (
    MethodSpec,
    build_null_table,
    evaluate,
    permutation_test,
    save_null_table,
)

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
EXIT_XCHECK = 5

_METHOD_NAMES = {
    "dcov2": Method.DCOV2,
    "dcor": Method.DCOR,
    "f93": Method.F93,
    "bkr": Method.BKR,
    "pearson": Method.PEARSON,
    "spearman": Method.SPEARMAN,
    "kendall": Method.KENDALL,
    "fisher-yates": Method.FISHER_YATES,
}

_SCORE_NAMES = {
    "raw": Transform.RAW,
    "rank": Transform.RANK,
    "normal": Transform.NORMAL_SCORES,
}


@dataclass(frozen=True)
class RunReport:
    """One reproducible run: statistic, inference, provenance, timing."""

    command: str
    method: str
    alpha: float
    transform: str
    value: float
    p_value: float | None
    permutations: int | None
    seed: int | None
    threads: int
    input_path: str
    x_cols: str
    y_cols: str
    n: int
    p: int
    q: int
    wall_time_s: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "RunReport":
        return cls(**json.loads(line))


def _int_at_least(minimum: int, what: str):
    def check(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"{what} must be >= {minimum}, got {v}")
        return v

    return check


def _positive_float(what: str):
    def check(text: str) -> float:
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be a number, got {text!r}")
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{what} must be > 0, got {v}")
        return v

    return check


def _nonnegative_float(what: str):
    def check(text: str) -> float:
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be a number, got {text!r}")
        if v < 0:
            raise argparse.ArgumentTypeError(f"{what} must be >= 0, got {v}")
        return v

    return check


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depmeas",
        description="Dependence measurement and independence testing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="compute a statistic and permutation p-value")
    p_test.add_argument("--input", required=True, help="CSV file")
    p_test.add_argument("--x", required=True, help="x columns (indices or names, comma-separated)")
    p_test.add_argument("--y", required=True, help="y columns")
    p_test.add_argument("--method", choices=sorted(_METHOD_NAMES), default="dcov2")
    p_test.add_argument("--alpha", type=float, default=1.0, help="distance exponent in (0,2)")
    p_test.add_argument("--scores", choices=sorted(_SCORE_NAMES), default="raw")
    p_test.add_argument("--perms", type=_int_at_least(99, "--perms"), default=999)
    p_test.add_argument("--seed", type=_int_at_least(0, "--seed"), default=0)
    p_test.add_argument("--threads", type=_int_at_least(1, "--threads"), default=1)
    p_test.add_argument("--no-test", action="store_true", help="statistic only, no permutation test")
    p_test.add_argument("--json", action="store_true", help="single-line JSON report")
    p_test.set_defaults(func=_cmd_test)

    p_gen = sub.add_parser("gen", help="write a synthetic dataset as CSV")
    p_gen.add_argument(
        "--kind",
        required=True,
        choices=["independent", "nonmonotone", "stochvol", "heavytail"],
    )
    p_gen.add_argument("--n", required=True, type=_int_at_least(2, "--n"))
    p_gen.add_argument("--seed", type=_int_at_least(0, "--seed"), default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--sigma", type=_nonnegative_float("--sigma"), default=0.1,
                       help="noise level for --kind nonmonotone")
    p_gen.set_defaults(func=_cmd_gen)

    p_table = sub.add_parser("nulltable", help="build a distribution-free null table")
    p_table.add_argument("--n", required=True, type=_int_at_least(5, "--n"))
    p_table.add_argument("--method", choices=sorted(_METHOD_NAMES), default="dcov2")
    p_table.add_argument("--alpha", type=float, default=1.0)
    p_table.add_argument("--scores", choices=sorted(_SCORE_NAMES), default="normal")
    p_table.add_argument("--reps", type=_int_at_least(10000, "--reps"), default=20000)
    p_table.add_argument("--seed", type=_int_at_least(0, "--seed"), default=0)
    p_table.add_argument("--threads", type=_int_at_least(1, "--threads"), default=1)
    p_table.add_argument("--out", required=True)
    p_table.set_defaults(func=_cmd_nulltable)

    p_x = sub.add_parser(
        "xcheck",
        help="cross-check the integral statistic against its closed form",
    )
    p_x.add_argument("--input", required=True)
    p_x.add_argument("--x", required=True)
    p_x.add_argument("--y", required=True)
    p_x.add_argument("--L", type=_positive_float("--L"), default=20.0)
    p_x.add_argument("--nodes", type=_int_at_least(16, "--nodes"), default=64)
    p_x.add_argument("--panels", type=_int_at_least(1, "--panels"), default=8)
    p_x.set_defaults(func=_cmd_xcheck)

    return parser


def _cmd_test(args) -> int:
    start = time.perf_counter()
    sample = load_csv(args.input, args.x, args.y)
    spec = MethodSpec(
        method=_METHOD_NAMES[args.method],
        alpha=args.alpha,
        transform=_SCORE_NAMES[args.scores],
    )
    if args.no_test:
        value = evaluate(sample, spec).value
        p_value = None
        permutations = None
        seed = None
    else:
        result = permutation_test(sample, spec, B=args.perms, seed=args.seed,
                                  threads=args.threads)
        value = result.observed
        p_value = result.p_value
        permutations = result.B
        seed = args.seed

    report = RunReport(
        command="test",
        method=args.method,
        alpha=args.alpha,
        transform=args.scores,
        value=value,
        p_value=p_value,
        permutations=permutations,
        seed=seed,
        threads=args.threads,
        input_path=args.input,
        x_cols=args.x,
        y_cols=args.y,
        n=sample.n,
        p=sample.p,
        q=sample.q,
        wall_time_s=time.perf_counter() - start,
    )
    if args.json:
        print(report.to_json())
    else:
        print(f"method: {args.method} (alpha={args.alpha}, scores={args.scores})")
        print(f"input: {args.input} x={args.x} y={args.y} "
              f"n={sample.n} p={sample.p} q={sample.q}")
        print(f"statistic: {value}")
        if p_value is not None:
            print(f"p-value: {p_value} (B={permutations}, seed={seed})")
    return EXIT_OK


_GENERATORS = {
    "independent": lambda a: gen_independent_normal(a.n, a.seed),
    "nonmonotone": lambda a: gen_nonmonotone(a.n, a.seed, a.sigma),
    "stochvol": lambda a: gen_stochastic_volatility(a.n, a.seed),
    "heavytail": lambda a: gen_heavy_tail_monotone(a.n, a.seed),
}


def _cmd_gen(args) -> int:
    sample = _GENERATORS[args.kind](args)
    save_csv(sample, args.out)
    print(f"wrote {args.out} ({sample.n} rows, kind={args.kind}, seed={args.seed})")
    return EXIT_OK


def _cmd_nulltable(args) -> int:
    spec = MethodSpec(
        method=_METHOD_NAMES[args.method],
        alpha=args.alpha,
        transform=_SCORE_NAMES[args.scores],
    )
    table = build_null_table(args.n, spec, replications=args.reps, seed=args.seed,
                             threads=args.threads)
    save_null_table(table, args.out)
    print(f"wrote {args.out} (n={table.n}, method={table.method.value}, "
          f"reps={table.replications})")
    return EXIT_OK


def _cmd_xcheck(args) -> int:
    sample = load_csv(args.input, args.x, args.y)
    if sample.p != 1 or sample.q != 1:
        raise UnsupportedDimension(
            f"xcheck requires univariate x and y; got p={sample.p}, q={sample.q}"
        )
    std = Sample(
        _standardize_column(sample.x[:, 0]),
        _standardize_column(sample.y[:, 0]),
    )
    quad = QuadratureSpec(half_width=args.L, nodes_per_axis=args.nodes,
                          panels=args.panels)
    integral = f93_statistic(std, WeightSpec(), quad, standardize=False)
    closed_form = np.pi**2 * dcov2(std, alpha=1.0)
    if closed_form > 0.0:
        rel = abs(integral - closed_form) / closed_form
    else:
        rel = 0.0 if integral == closed_form else float("inf")
    print(f"integral statistic (bellShaped): {integral}")
    print(f"pi^2 * dcov2(alpha=1): {closed_form}")
    print(f"relative difference: {rel}")
    return EXIT_OK if rel < 0.02 else EXIT_XCHECK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and argument errors
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
