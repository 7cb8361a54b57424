"""Command line front end.

Subcommands: measure, transform, verify, converge, counterexample, plot.
Exit codes: 0 success, 1 usage error, 2 invalid input, 3 resource guard
tripped, 4 verification failure.
"""

import argparse
import io
import math
import re
import sys

import numpy as np

from .approximant import ApproximantConfig, build_measure_bruteforce, build_measure_dp, lie_approximant
from .experiments import (
    COUNTEREXAMPLE_SCHEDULE,
    DEFAULT_SCHEDULE,
    convergence_study,
    counterexample_demo,
    default_t_grid,
    truth_exponential,
    write_convergence_csv,
    write_convergence_json,
)
from .linalg import ResourceLimitError, canonical_json, operator_norm, read_matrix
from .measure import (
    laplace_transform,
    read_measure,
    support_interval,
    total_variation,
    write_measure,
    write_trace_csv,
)
from .norms import total_variation_bound
from .verify import SUITE_NAMES, run_suite

__all__ = ["main", "console_main"]

_FLOAT = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"
_GRID_RE = re.compile(rf"^({_FLOAT}):({_FLOAT}):({_FLOAT})(?:\+({_FLOAT})i)?$")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments; the contract here reserves 2 for
    # invalid input files, so route usage problems through exit code 1.
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def parse_t_grid(spec: str) -> np.ndarray:
    """Parse "start:stop:step" with an optional "+ci" imaginary pair suffix."""
    m = _GRID_RE.match(spec.strip())
    if m is None:
        raise _UsageError(f"bad t grid {spec!r}; expected start:stop:step[+ci]")
    start, stop, step = float(m.group(1)), float(m.group(2)), float(m.group(3))
    if step <= 0:
        raise _UsageError("t grid step must be positive")
    if stop < start:
        raise _UsageError("t grid stop must not precede start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    points = [complex(start + k * step) for k in range(count)]
    if m.group(4) is not None:
        imag = float(m.group(4))
        if imag != 0.0:
            points.extend([complex(0.0, imag), complex(0.0, -imag)])
    return np.array(points, dtype=complex)


def parse_schedule(spec: str) -> tuple[int, ...]:
    items = [s.strip() for s in spec.split(",") if s.strip()]
    if not items:
        raise _UsageError("empty schedule")
    try:
        values = tuple(int(s) for s in items)
    except ValueError:
        raise _UsageError(f"bad schedule {spec!r}; expected comma separated integers") from None
    if any(v <= 0 for v in values) or any(b <= a for a, b in zip(values, values[1:])):
        raise _UsageError("schedule must be strictly increasing positive integers")
    return values


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


# ----------------------------------------------------------------- commands

def cmd_measure(args) -> int:
    a = read_matrix(args.a)
    b = read_matrix(args.b)
    cfg = ApproximantConfig(
        N=args.steps, cluster_tol=args.cluster_tol, merge_tol=args.merge_tol
    )
    build = build_measure_bruteforce if args.method == "brute" else build_measure_dp
    m = build(a, b, cfg)
    write_measure(args.out, m)
    if args.trace_csv is not None:
        write_trace_csv(args.trace_csv, m)
    lo, hi = support_interval(m)
    print(
        f"atoms={len(m)} support=[{_fmt(lo)},{_fmt(hi)}]"
        f" tv={_fmt(total_variation(m))}"
        f" tv_bound={_fmt(total_variation_bound(m.dim, b))}"
    )
    return 0


def cmd_transform(args) -> int:
    grid = parse_t_grid(args.tgrid) if args.tgrid else default_t_grid()
    m = read_measure(args.measure)
    a = read_matrix(args.a) if args.a else None
    b = read_matrix(args.b) if args.b else None
    buf = io.StringIO()
    buf.write("t_re,t_im,err_vs_LN,err_vs_truth\n")
    for t in grid:
        value = laplace_transform(m, t)
        if a is not None and b is not None and m.N is not None:
            err_ln = operator_norm(value - lie_approximant(a, b, t, m.N))
        else:
            err_ln = math.nan
        if a is not None and b is not None:
            err_truth = operator_norm(value - truth_exponential(a, b, t))
        else:
            err_truth = math.nan
        buf.write(
            f"{_fmt(t.real)},{_fmt(t.imag)},{_fmt(err_ln)},{_fmt(err_truth)}\n"
        )
    _write_text(args.out, buf.getvalue())
    return 0


def cmd_verify(args) -> int:
    results = run_suite(
        args.suite, trials=args.trials, seed=args.seed,
        max_dim=args.max_dim, min_gap=args.min_gap,
    )
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(
            f"{status} {res.name} trials={res.trials}"
            f" worst_margin={_fmt(res.worst_margin)}"
        )
        if not res.passed:
            failed = True
            print(canonical_json(res.failure))
    return 4 if failed else 0


def cmd_converge(args) -> int:
    schedule = parse_schedule(args.schedule) if args.schedule else DEFAULT_SCHEDULE
    grid = parse_t_grid(args.tgrid) if args.tgrid else None
    a = read_matrix(args.a)
    b = read_matrix(args.b)
    report = convergence_study(
        a, b, schedule, t_grid=grid,
        cluster_tol=args.cluster_tol, merge_tol=args.merge_tol,
    )
    if args.format == "json":
        write_convergence_json(args.out, report)
    else:
        write_convergence_csv(args.out, report)
    rate = report.rate_estimate
    print(f"rate_estimate={_fmt(rate if rate is not None else math.nan)}")
    return 0


def cmd_counterexample(args) -> int:
    schedule = parse_schedule(args.schedule) if args.schedule else COUNTEREXAMPLE_SCHEDULE
    res = counterexample_demo(schedule)
    d = res.d_matrix
    print(
        "D = [["
        f"{_fmt(d[0, 0].real)}, {_fmt(d[0, 1].real)}], ["
        f"{_fmt(d[1, 0].real)}, {_fmt(d[1, 1].real)}]]"
    )
    print(f"det(D) = {_fmt(res.det_d)}")
    print(f"eigs(D) = {_fmt(res.eigs_of_d[0])}, {_fmt(res.eigs_of_d[1])}")
    print(f"psd = {res.psd}")
    for n_steps, m1, err in res.moment1_by_n:
        det = float(np.linalg.det(m1).real)
        print(
            f"N={n_steps} |moment1 - D| = {_fmt(err)}"
            f" det(moment1) = {_fmt(det)}"
        )
    onset = res.onset_negative_det
    print(f"onset_negative_det = {onset if onset is not None else 'none'}")
    ok = res.det_d < 0 and not res.psd
    return 0 if ok else 4


def cmd_plot(args) -> int:
    m = read_measure(args.measure)
    norms = [operator_norm(w) for w in m.weights]
    traces = [complex(np.trace(w)) for w in m.weights]
    dat_path = args.out + ".dat"
    gp_path = args.out + ".gp"
    rows = ["# lambda\topnorm\ttrace_re\ttrace_im"]
    for lam, nrm, tr in zip(m.locations, norms, traces):
        rows.append(f"{_fmt(lam)}\t{_fmt(nrm)}\t{_fmt(tr.real)}\t{_fmt(tr.imag)}")
    _write_text(dat_path, "\n".join(rows) + "\n")
    lo, hi = support_interval(m)
    pad = 0.05 * max(hi - lo, 1.0)
    dat_name = dat_path.rsplit("/", 1)[-1]
    script = "\n".join([
        'set xlabel "support location"',
        'set ylabel "atom size"',
        f"set xrange [{_fmt(lo - pad)}:{_fmt(hi + pad)}]",
        "set key top left",
        f'plot "{dat_name}" using 1:2 with impulses lw 2 title "operator norm", \\',
        f'     "{dat_name}" using 1:2 with points pt 7 notitle, \\',
        f'     "{dat_name}" using 1:3 with points pt 6 title "trace (real part)"',
        "",
    ])
    _write_text(gp_path, script)
    print(f"wrote {dat_path} and {gp_path}")
    return 0


# ------------------------------------------------------------------- parser

def _build_parser() -> _Parser:
    parser = _Parser(prog="liemeasure", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tols(p):
        p.add_argument("--cluster-tol", type=float, default=1e-8,
                       help="relative gap below which eigenvalues merge")
        p.add_argument("--merge-tol", type=float, default=1e-9,
                       help="relative gap below which atoms merge")

    p = sub.add_parser("measure", help="build the discrete measure for one (A, B, N)")
    p.add_argument("--a", required=True, help="Hermitian matrix JSON file")
    p.add_argument("--b", required=True, help="matrix JSON file")
    p.add_argument("--steps", type=int, required=True, metavar="N",
                   help="number of product factors")
    p.add_argument("--method", choices=("dp", "brute"), default="dp")
    add_tols(p)
    p.add_argument("--out", required=True, help="measure JSON output path")
    p.add_argument("--trace-csv", help="optional per-atom trace CSV output path")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("transform", help="evaluate the transform of a stored measure")
    p.add_argument("--measure", required=True, help="measure JSON file")
    p.add_argument("--a", help="matrix JSON file, enables error columns")
    p.add_argument("--b", help="matrix JSON file, enables error columns")
    p.add_argument("--tgrid", help="start:stop:step[+ci], default -1:1:0.1+1i")
    p.add_argument("--out", help="CSV output path, default stdout")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="run randomized checks of the inequalities")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--min-gap", type=float, default=0.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("converge", help="tabulate approximation error against N")
    p.add_argument("--a", required=True, help="Hermitian matrix JSON file")
    p.add_argument("--b", required=True, help="matrix JSON file")
    p.add_argument("--schedule", help="comma separated N values, strictly increasing")
    p.add_argument("--tgrid", help="start:stop:step[+ci], default -1:1:0.1+1i")
    add_tols(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True, help="report output path")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser(
        "counterexample",
        help="reproduce the 2x2 pair whose limit measure has a signed weight",
    )
    p.add_argument("--schedule", help="comma separated N values for the moment table")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("plot", help="write gnuplot data and script for a measure")
    p.add_argument("--measure", required=True, help="measure JSON file")
    p.add_argument("--out", required=True, metavar="STEM",
                   help="output stem; writes STEM.dat and STEM.gp")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
