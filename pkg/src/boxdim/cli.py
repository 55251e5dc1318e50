"""``boxdim`` command line: estimate, generate, compare, bench.

Exit codes: 0 success, 2 usage error, 3 data error, 4 FD/FFD mismatch.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import __version__
from .bench import run_bench
from .boxcount import fd, ffd
from .core import RadiusSchedule, normalize
from .errors import DomainError
from .fit import FitRange, fit_plot
from .generators import KINDS, GeneratorSpec, generate
from .io import IngestOptions, read_points, write_plot, write_points

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


def _levels(text):
    try:
        return RadiusSchedule(int(text)).levels
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fit(text):
    if text in ("auto", "full"):
        return text
    try:
        return FitRange.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _algo_list(text):
    algos = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in algos if a not in ("fd", "ffd")]
    if bad or not algos:
        raise argparse.ArgumentTypeError(f"algorithms must be fd and/or ffd, got {text!r}")
    return algos


def _delimiter(text):
    text = {"\\t": "\t", "tab": "\t"}.get(text, text)
    if len(text) != 1:
        raise argparse.ArgumentTypeError("delimiter must be a single character")
    return text


def _add_input_args(p):
    p.add_argument("input", nargs="?", default="-", help="point file, or '-' for standard input")
    p.add_argument("--levels", type=_levels, default=10, help="number of grid levels |R| (default 10)")
    p.add_argument("--normalize", choices=("minmax", "none"), default="minmax")
    p.add_argument("--delimiter", type=_delimiter, default=",")
    p.add_argument("--header", action="store_true", help="skip the first line")


def build_parser():
    parser = argparse.ArgumentParser(prog="boxdim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate the correlation fractal dimension D2")
    _add_input_args(p)
    p.add_argument("--algo", choices=("fd", "ffd"), default="ffd")
    p.add_argument("--fit", type=_fit, default="auto", help="auto, full, or j_min..j_max")
    p.add_argument("--plot-out", help="write the box-count plot here (.csv for CSV, else TSV)")
    p.set_defaults(handler=cmd_estimate)

    p = sub.add_parser("generate", help="write a synthetic dataset")
    p.add_argument("--type", dest="kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("compare", help="run FD and FFD and check they agree exactly")
    _add_input_args(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("bench", help="time FD and FFD on uniform data")
    p.add_argument("--algos", type=_algo_list, default=["fd", "ffd"])
    p.add_argument("--sizes", type=_int_list, default=[100_000, 1_000_000])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--levels", type=_int_list, default=[10])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(handler=cmd_bench)
    return parser


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _load(args):
    opts = IngestOptions(args.delimiter, args.header)
    if args.input == "-":
        raw = read_points(sys.stdin.buffer, opts)
    else:
        raw = read_points(args.input, opts)
    return normalize(raw, "min-max" if args.normalize == "minmax" else "pass-through")


def _print_counters(label, plot, out):
    c = plot.counters
    print(
        f"{label}: point_cell_updates={c.point_cell_updates} merge_updates={c.merge_updates} "
        f"dataset_scans={c.dataset_scans} updates_per_point={c.updates_per_point(plot.n):.6g}",
        file=out,
    )


def cmd_estimate(args):
    out = sys.stdout
    data = _load(args)
    schedule = RadiusSchedule(args.levels)
    plot = (fd if args.algo == "fd" else ffd)(data, schedule)
    est = fit_plot(plot, args.fit)
    print(f"d2 = {est.d2:.6g}", file=out)
    print(f"r_squared = {est.r_squared:.6g}", file=out)
    print(f"fit_range = {est.range}", file=out)
    print(f"algorithm = {est.algorithm}", file=out)
    print(f"n = {data.n}, dim = {data.dim}, levels = {schedule.levels}", file=out)
    write_plot(plot, out, "tsv")
    if args.plot_out:
        fmt = "csv" if args.plot_out.lower().endswith(".csv") else "tsv"
        with _open_out(args.plot_out) as fh:
            write_plot(plot, fh, fmt, est)
    return EXIT_OK


def cmd_generate(args):
    try:
        spec = GeneratorSpec(args.kind, args.n, args.dim, args.seed)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    data = generate(spec)
    with _open_out(args.output) as fh:
        write_points(data, fh)
    return EXIT_OK


def cmd_compare(args):
    out = sys.stdout
    data = _load(args)
    schedule = RadiusSchedule(args.levels)
    a, b = fd(data, schedule), ffd(data, schedule)
    print("j\tS_fd\tS_ffd", file=out)
    first_diff = None
    for ra, rb in zip(a.records, b.records):
        print(f"{ra.j}\t{ra.s}\t{rb.s}", file=out)
        if ra.s != rb.s and first_diff is None:
            first_diff = ra.j
    _print_counters("fd", a, out)
    _print_counters("ffd", b, out)
    if first_diff is not None:
        print(f"MISMATCH at level {first_diff}", file=out)
        return EXIT_MISMATCH
    print("IDENTICAL", file=out)
    return EXIT_OK


def cmd_bench(args):
    out = sys.stdout
    if args.reps < 1 or args.dim < 1 or min(args.sizes) < 1:
        raise UsageError("--reps, --dim and --sizes must be positive")
    for lv in args.levels:
        try:
            RadiusSchedule(lv)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    log = sys.stderr if args.output == "-" else out

    def progress(row):
        print(f"{row.algo:>4} n={row.n:<9} levels={row.levels:<3} median {row.wall_ms:9.2f} ms "
              f"updates/point {row.updates_per_point:.4g}", file=log)

    report = run_bench(args.sizes, args.levels, args.algos, args.dim, args.reps, args.seed,
                       progress=progress)
    with _open_out(args.output) as fh:
        report.write_csv(fh)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(f"boxdim: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"boxdim: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
