"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 mode/size error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import experiments
from .experiments import ExperimentReport
from .measures import Options, compute, resolve
from .partition import PartitionError, contingency, read_partition
from .rmi import DEFAULT_EXACT_LIMIT, ExactLimitError, count_omega, log_omega_dense, log_omega_sparse

EXIT_INPUT = 2
EXIT_MODE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _base(text: str):
    if text == "e":
        return "e"
    if text == "2":
        return 2
    raise argparse.ArgumentTypeError("base must be 'e' or '2'")


def _margins(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad margin list {text!r}") from None
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"margins must be positive integers: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partcompare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="plain"):
        p.add_argument("--format", choices=("plain", "csv", "markdown"), default=fmt_default)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT,
                       help="largest n for exact table counting (default %(default)s)")

    cmp_ = sub.add_parser("compare", help="compare two label files")
    cmp_.add_argument("file_a")
    cmp_.add_argument("file_b")
    cmp_.add_argument("--measures", default="all", help="comma-separated list or 'all'")
    cmp_.add_argument("--rmi-mode", choices=("exact", "sparse", "dense"), default="exact")
    norm = cmp_.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true", default=True)
    norm.add_argument("--unnormalized", dest="normalized", action="store_false")
    cmp_.add_argument("--base", type=_base, default=2, help="log base for vi and unnormalized rmi: e or 2")
    common(cmp_)

    om = sub.add_parser("omega", help="count tables with given margins")
    om.add_argument("margins_a", type=_margins)
    om.add_argument("margins_b", type=_margins)
    om.add_argument("--approx", choices=("sparse", "dense"))
    om.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)

    ex = sub.add_parser("experiment", help="regenerate an experiment report")
    ex.add_argument("name", choices=tuple(experiments.EXPERIMENTS))
    ex.add_argument("--n", type=int, default=10, help="fig1 only: number of objects")
    common(ex, fmt_default="markdown")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    try:
        return read_partition(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except PartitionError as exc:
        raise CliError(str(exc)) from None


def cmd_compare(args) -> int:
    try:
        names = resolve(args.measures)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    p, q = _read(args.file_a), _read(args.file_b)
    try:
        t = contingency(p, q)
    except PartitionError as exc:
        raise CliError(f"{args.file_a} vs {args.file_b}: {exc}") from None
    opts = Options(args.rmi_mode, args.normalized, args.base, args.exact_limit)
    report = ExperimentReport("compare")
    pair = f"<{os.path.basename(args.file_a)},{os.path.basename(args.file_b)}>"
    for name in names:
        try:
            mv = compute(name, t, opts)
        except ExactLimitError as exc:
            raise CliError(f"{exc}; choose --rmi-mode sparse or dense", EXIT_MODE) from None
        report.add(pair, name, mv.variant, mv.value)
    _emit(report.render(args.format), args.out)
    return 0


def cmd_omega(args) -> int:
    a, b = args.margins_a, args.margins_b
    if sum(a) != sum(b):
        raise CliError(f"margin sums differ: {sum(a)} vs {sum(b)}")
    if args.approx == "sparse":
        print(f"log_omega_sparse {log_omega_sparse(a, b)!r}")
    elif args.approx == "dense":
        print(f"log_omega_dense {log_omega_dense(a, b)!r}")
    else:
        try:
            res = count_omega(a, b, limit=args.exact_limit)
        except ExactLimitError as exc:
            raise CliError(f"{exc}; use --approx sparse|dense", EXIT_MODE) from None
        print(f"count {res.count}")
        print(f"log {res.log_value!r}")
    return 0


def cmd_experiment(args) -> int:
    if args.name == "fig1":
        report = experiments.fig1(args.n, exact_limit=args.exact_limit)
    else:
        report = experiments.EXPERIMENTS[args.name]()
    _emit(report.render(args.format), args.out)
    return 0


COMMANDS = {"compare": cmd_compare, "omega": cmd_omega, "experiment": cmd_experiment}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"partcompare: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
